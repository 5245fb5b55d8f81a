#include "utgrad/grading.hpp"

#include <memory>

#include "utgrad/error.hpp"

namespace utgrad {

Grading::Grading(int n, FieldSpec f, AbelianGroup group, std::map<GroupElement, Subspace> components)
    : n_(n), field_(f), group_(std::move(group)) {
  if (n < 1) throw InputError("grading size must be positive");
  for (auto& [deg, sub] : components) {
    group_.check(deg);
    if (sub.ambient_dim() != ut_dim(n)) throw InputError("component of degree " + to_string(deg) + " has the wrong ambient dimension");
    if (sub.field() != f) throw MismatchError("component of degree " + to_string(deg) + " over the wrong field");
    if (!sub.is_zero()) components_.emplace(deg, std::move(sub));
  }
}

Subspace Grading::component(const GroupElement& g) const {
  auto it = components_.find(g);
  return it == components_.end() ? Subspace::zero(field_, dim()) : it->second;
}

std::optional<GroupElement> Grading::degree_of(const Vector& v) const {
  if (is_zero_vector(v)) return std::nullopt;
  for (const auto& [deg, sub] : components_)
    if (sub.contains(v)) return deg;
  return std::nullopt;
}

std::string kind_name(VerificationFailure::Kind k) {
  switch (k) {
    case VerificationFailure::Kind::overlap: return "overlap";
    case VerificationFailure::Kind::not_spanning: return "not-spanning";
    case VerificationFailure::Kind::bracket_violation: return "bracket-violation";
  }
  return "unknown";
}

std::string VerificationFailure::describe(int n) const {
  std::string s = kind_name(kind);
  if (!degrees.empty()) {
    s += " at (";
    for (std::size_t i = 0; i < degrees.size(); ++i) s += (i ? "," : "") + to_string(degrees[i]);
    s += ")";
  }
  for (const auto& v : vectors) s += " " + UTMatrix(v.front().field(), n, v).to_string();
  return s;
}

VerificationReport verify_grading(const Grading& g) {
  VerificationReport rep;
  const FieldSpec f = g.field();
  const std::size_t dim = g.dim();
  using Kind = VerificationFailure::Kind;

  Subspace running = Subspace::zero(f, dim);
  for (const auto& [deg, sub] : g.components()) {
    Subspace inter = intersect(running, sub);
    if (!inter.is_zero()) {
      VerificationFailure fail{Kind::overlap, {deg}, {inter.basis().front()}};
      for (const auto& [other, osub] : g.components()) {
        if (other == deg) break;
        if (!intersect(osub, sub).is_zero()) fail.degrees.insert(fail.degrees.begin(), other);
      }
      rep.failures.push_back(std::move(fail));
    }
    running = sum(running, sub);
  }
  if (running.dimension() < dim) {
    for (std::size_t i = 0; i < dim; ++i) {
      Vector u = zero_vector(f, dim);
      u[i] = Scalar::one(f);
      if (!running.contains(u)) {
        rep.failures.push_back({Kind::not_spanning, {}, {u}});
        break;
      }
    }
  }

  const auto& grp = g.group();
  for (auto it = g.components().begin(); it != g.components().end(); ++it) {
    for (auto jt = it; jt != g.components().end(); ++jt) {
      const GroupElement prod = grp.compose(it->first, jt->first);
      const Subspace target = g.component(prod);
      const Matrix& bx = it->second.basis();
      const Matrix& by = jt->second.basis();
      for (std::size_t a = 0; a < bx.size(); ++a)
        for (std::size_t b = (it == jt ? a + 1 : 0); b < by.size(); ++b) {
          Vector br = bracket_coords(f, g.n(), bx[a], by[b]);
          if (!target.contains(br))
            rep.failures.push_back({Kind::bracket_violation, {it->first, jt->first}, {bx[a], by[b], br}});
        }
    }
  }
  rep.ok = rep.failures.empty();
  return rep;
}

std::set<GroupElement> support(const Grading& g) {
  std::set<GroupElement> s;
  for (const auto& [deg, sub] : g.components()) s.insert(deg);
  return s;
}

std::set<GroupElement> essential_support(const Grading& g) {
  const Subspace z = center(g.field(), g.n());
  std::set<GroupElement> s;
  for (const auto& [deg, sub] : g.components())
    if (!z.contains(sub)) s.insert(deg);
  return s;
}

std::map<GroupElement, Subspace> homogeneous_parts(const Grading& g, const Subspace& w) {
  std::map<GroupElement, Subspace> parts;
  for (const auto& [deg, sub] : g.components()) {
    Subspace inter = intersect(w, sub);
    if (!inter.is_zero()) parts.emplace(deg, std::move(inter));
  }
  return parts;
}

bool is_graded_subspace(const Grading& g, const Subspace& w) {
  std::size_t total = 0;
  for (const auto& [deg, part] : homogeneous_parts(g, w)) total += part.dimension();
  return total == w.dimension();
}

std::optional<SemihomogeneousWitness> is_semihomogeneous(const Grading& g, const UTMatrix& x,
                                                         const GroupElement& deg) {
  const FieldSpec f = g.field();
  const int n = g.n();
  const Subspace comp = g.component(deg);
  const UTMatrix id = UTMatrix::identity(f, n);
  if (comp.contains(x.coords())) return SemihomogeneousWitness{x, UTMatrix::zero(f, n)};
  if (comp.contains(id.coords())) return std::nullopt;
  std::vector<Vector> gens = comp.basis();
  gens.push_back(id.coords());
  auto c = Coordinatizer(f, g.dim(), gens).coordinates(x.coords());
  if (!c) return std::nullopt;
  Vector y = zero_vector(f, g.dim());
  for (std::size_t k = 0; k + 1 < gens.size(); ++k) axpy(y, (*c)[k], gens[k]);
  return SemihomogeneousWitness{UTMatrix(f, n, y), c->back() * id};
}

Grading transport(const Automorphism& f, const Grading& g) {
  if (f.n() != g.n() || f.field() != g.field()) throw MismatchError("automorphism and grading disagree on the algebra");
  std::map<GroupElement, Subspace> comps;
  for (const auto& [deg, sub] : g.components()) {
    std::vector<Vector> img;
    for (const auto& b : sub.basis()) img.push_back(f.apply_coords(b));
    comps.emplace(deg, Subspace::span(g.field(), g.dim(), img));
  }
  return Grading(g.n(), g.field(), g.group(), std::move(comps));
}

GradedSpace graded_space(const Grading& g) {
  GradedSpace s{g.field(), g.group(), g.dim(), {}, {}};
  for (const auto& [deg, sub] : g.components()) s.bases.emplace(deg, sub.basis());
  const FieldSpec f = g.field();
  const int n = g.n();
  s.bracket = [f, n](const Vector& a, const Vector& b) { return bracket_coords(f, n, a, b); };
  return s;
}

namespace {

const Subspace& checked_ideal(const Grading& g, const Subspace& ideal) {
  if (ideal.ambient_dim() != g.dim()) throw InputError("ideal has the wrong ambient dimension");
  if (!is_graded_subspace(g, ideal)) throw InputError("quotient by a subspace that is not graded");
  const FieldSpec f = g.field();
  for (std::size_t i = 0; i < g.dim(); ++i) {
    Vector u = zero_vector(f, g.dim());
    u[i] = Scalar::one(f);
    for (const auto& b : ideal.basis())
      if (!ideal.contains(bracket_coords(f, g.n(), u, b))) throw InputError("quotient by a subspace that is not an ideal");
  }
  return ideal;
}

}  // namespace

QuotientGrading::QuotientGrading(const Grading& g, const Subspace& ideal)
    : parent_(g), ideal_(ideal), coords_(checked_ideal(g, ideal), Subspace::whole(g.field(), g.dim())) {
  for (const auto& [deg, sub] : g.components()) {
    std::vector<Vector> img;
    for (const auto& b : sub.basis()) img.push_back(coords_(b));
    Subspace s = Subspace::span(g.field(), dim(), img);
    if (!s.is_zero()) components_.emplace(deg, std::move(s));
  }
}

Vector QuotientGrading::bracket(const Vector& a, const Vector& b) const {
  return coords_(bracket_coords(parent_.field(), parent_.n(), coords_.lift(a), coords_.lift(b)));
}

GradedSpace QuotientGrading::space() const {
  GradedSpace s{parent_.field(), parent_.group(), dim(), {}, {}};
  for (const auto& [deg, sub] : components_) s.bases.emplace(deg, sub.basis());
  // Capture a copy so the space outlives this object.
  auto self = std::make_shared<QuotientGrading>(*this);
  s.bracket = [self](const Vector& a, const Vector& b) { return self->bracket(a, b); };
  return s;
}

QuotientGrading quotient_grading(const Grading& g, const Subspace& ideal) { return QuotientGrading(g, ideal); }

}  // namespace utgrad
