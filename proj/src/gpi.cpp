#include "utgrad/gpi.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "utgrad/error.hpp"

namespace utgrad {

struct LieTerm::Node {
  std::optional<GradedVariable> var;
  std::optional<LieTerm> left, right;
};

LieTerm LieTerm::var(GradedVariable v) {
  if (v.degrees.empty()) throw InputError("a variable needs at least one degree");
  auto node = std::make_shared<Node>();
  node->var = std::move(v);
  return LieTerm(node);
}

LieTerm LieTerm::bracket(LieTerm a, LieTerm b) {
  auto node = std::make_shared<Node>();
  node->left = std::move(a);
  node->right = std::move(b);
  return LieTerm(node);
}

LieTerm LieTerm::left_normed(const std::vector<LieTerm>& terms) {
  if (terms.empty()) throw InputError("empty bracket");
  LieTerm out = terms.front();
  for (std::size_t k = 1; k < terms.size(); ++k) out = bracket(out, terms[k]);
  return out;
}

bool LieTerm::is_leaf() const { return node_->var.has_value(); }
const GradedVariable& LieTerm::variable() const { return *node_->var; }
const LieTerm& LieTerm::left() const { return *node_->left; }
const LieTerm& LieTerm::right() const { return *node_->right; }

std::vector<GradedVariable> LieTerm::variables() const {
  if (is_leaf()) return {variable()};
  auto out = left().variables();
  for (auto& v : right().variables()) out.push_back(std::move(v));
  return out;
}

std::string LieTerm::to_string() const {
  if (is_leaf()) {
    std::string s;
    for (const auto& d : variable().degrees) {
      if (!s.empty()) s += "+";
      s += "x" + std::to_string(variable().index) + "^" + utgrad::to_string(d);
    }
    return s;
  }
  return "[" + left().to_string() + ", " + right().to_string() + "]";
}

void GradedLiePolynomial::validate() const {
  if (form == Form::adpower) {
    if (power < 1 || !g || !h) throw InputError("ad-power polynomial needs a power and two degrees");
    return;
  }
  if (terms.empty()) throw InputError("empty polynomial");
  std::optional<std::map<int, std::vector<GroupElement>>> shape;
  for (const auto& [c, t] : terms) {
    std::map<int, std::vector<GroupElement>> vars;
    for (const auto& v : t.variables())
      if (!vars.emplace(v.index, v.degrees).second)
        throw InputError("variable x" + std::to_string(v.index) + " repeats in a monomial");
    if (shape && *shape != vars) throw InputError("monomials use different variables");
    shape = std::move(vars);
  }
}

std::string GradedLiePolynomial::to_string() const {
  if (form == Form::adpower)
    return "ad(x1^" + utgrad::to_string(*g) + ")^" + std::to_string(power) + " x2^" + utgrad::to_string(*h);
  std::string s;
  for (const auto& [c, t] : terms) {
    std::string coef = c == 1 ? "" : c == -1 ? "-" : std::to_string(c) + "*";
    if (!s.empty()) s += " + ";
    s += coef + t.to_string();
  }
  return s;
}

GradedLiePolynomial multilinear(std::vector<std::pair<std::int64_t, LieTerm>> terms) {
  GradedLiePolynomial p;
  p.terms = std::move(terms);
  p.validate();
  return p;
}

GradedLiePolynomial adpower(int power, GroupElement g, GroupElement h) {
  GradedLiePolynomial p;
  p.form = GradedLiePolynomial::Form::adpower;
  p.power = power;
  p.g = std::move(g);
  p.h = std::move(h);
  p.validate();
  return p;
}

namespace {

void check_sigma(const std::vector<int>& sigma, std::size_t size) {
  std::vector<int> sorted = sigma;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> want(size);
  std::iota(want.begin(), want.end(), 0);
  if (sorted != want) throw InputError("sigma must be a permutation of 0.." + std::to_string(size - 1));
}

GradedVariable variable(int index, std::vector<GroupElement> degrees) {
  std::vector<GroupElement> uniq;
  for (auto& d : degrees)
    if (std::find(uniq.begin(), uniq.end(), d) == uniq.end()) uniq.push_back(std::move(d));
  return {index, std::move(uniq)};
}

GradedLiePolynomial from_factors(const std::vector<LieTerm>& factors, const std::vector<int>& sigma) {
  check_sigma(sigma, factors.size());
  std::vector<LieTerm> ordered;
  for (int s : sigma) ordered.push_back(factors[s]);
  return multilinear({{1, LieTerm::left_normed(ordered)}});
}

}  // namespace

GradedLiePolynomial make_xi(const AbelianGroup& group, const EtaSequence& eta, const std::vector<int>& sigma) {
  std::vector<LieTerm> factors;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    group.check(eta[i]);
    const int k = static_cast<int>(i);
    factors.push_back(LieTerm::bracket(LieTerm::var(variable(2 * k + 1, {group.identity()})),
                                       LieTerm::var(variable(2 * k + 2, {eta[i]}))));
  }
  return from_factors(factors, sigma);
}

GradedLiePolynomial make_xi_prime(const AbelianGroup& group, const GroupElement& g, const EtaSequence& eta,
                                  const std::vector<int>& sigma, XiPrimeVariant variant) {
  group.check(g);
  const std::size_t n = eta.size() + 1;
  const GroupElement one = group.identity();
  std::vector<LieTerm> factors;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    group.check(eta[i]);
    const int k = static_cast<int>(i);
    const GroupElement ggi = group.compose(g, eta[i]);
    std::vector<GroupElement> first{one}, second{eta[i], ggi};
    if (variant == XiPrimeVariant::summed) first.push_back(g);
    if (variant == XiPrimeVariant::half_summed && n % 2 == 0 && i + 1 == n / 2) second = {eta[i]};
    factors.push_back(LieTerm::bracket(LieTerm::var(variable(2 * k + 1, first)),
                                       LieTerm::var(variable(2 * k + 2, second))));
  }
  return from_factors(factors, sigma);
}

namespace {

Vector eval_term(const LieTerm& t, const GradedSpace& space, const std::map<int, Vector>& a) {
  if (t.is_leaf()) {
    auto it = a.find(t.variable().index);
    if (it == a.end()) throw InputError("no value for x" + std::to_string(t.variable().index));
    if (it->second.size() != space.dim) throw InputError("value has the wrong dimension");
    return it->second;
  }
  return space.bracket(eval_term(t.left(), space, a), eval_term(t.right(), space, a));
}

/// Homogeneous basis a variable ranges over.
std::vector<Vector> candidates(const GradedVariable& v, const GradedSpace& space) {
  std::vector<Vector> out;
  for (const auto& d : v.degrees) {
    auto it = space.bases.find(d);
    if (it == space.bases.end()) continue;
    for (const auto& b : it->second) out.push_back(b);
  }
  return out;
}

/// Incremental independence test; rows are kept reduced against earlier pivots.
class Echelon {
 public:
  bool add(Vector v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Scalar c = v[pivots_[k]];
      if (!c.is_zero()) axpy(v, -c, rows_[k]);
    }
    for (std::size_t p = 0; p < v.size(); ++p) {
      if (v[p].is_zero()) continue;
      const Scalar inv = v[p].inverse();
      for (auto& s : v) s = s * inv;
      rows_.push_back(std::move(v));
      pivots_.push_back(p);
      return true;
    }
    return false;
  }

 private:
  Matrix rows_;
  std::vector<std::size_t> pivots_;
};

struct Sample {
  Vector value;
  std::map<int, Vector> assignment;
};

/// Values of the term whose span is the span of all its values.
std::vector<Sample> spanning_values(const LieTerm& t, const GradedSpace& space) {
  std::vector<Sample> out;
  if (t.is_leaf()) {
    for (auto& b : candidates(t.variable(), space)) out.push_back({b, {{t.variable().index, b}}});
    return out;
  }
  auto left = spanning_values(t.left(), space);
  if (left.empty()) return out;
  auto right = spanning_values(t.right(), space);
  Echelon ech;
  for (const auto& l : left) {
    for (const auto& r : right) {
      Vector v = space.bracket(l.value, r.value);
      if (!ech.add(v)) continue;
      Sample s{std::move(v), l.assignment};
      s.assignment.insert(r.assignment.begin(), r.assignment.end());
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

Vector evaluate(const GradedLiePolynomial& p, const GradedSpace& space, const std::map<int, Vector>& assignment) {
  if (p.form != GradedLiePolynomial::Form::multilinear) throw InputError("evaluate expects a multilinear polynomial");
  Vector out = space.zero();
  for (const auto& [c, t] : p.terms) axpy(out, Scalar::from_int(space.field, c), eval_term(t, space, assignment));
  return out;
}

MembershipResult holds_multilinear_bruteforce(const GradedLiePolynomial& p, const GradedSpace& space,
                                              std::uint64_t budget) {
  if (p.form != GradedLiePolynomial::Form::multilinear) throw InputError("not a multilinear polynomial");
  p.validate();
  const auto vars = p.terms.front().second.variables();
  std::vector<std::vector<Vector>> choices;
  std::uint64_t total = 1;
  for (const auto& v : vars) {
    choices.push_back(candidates(v, space));
    if (choices.back().empty()) return {};
    total *= choices.back().size();
    if (total > budget) throw BudgetExceeded("basis substitutions exceed the budget", budget);
  }
  std::vector<std::size_t> pos(vars.size(), 0);
  for (;;) {
    std::map<int, Vector> a;
    for (std::size_t k = 0; k < vars.size(); ++k) a.emplace(vars[k].index, choices[k][pos[k]]);
    if (!is_zero_vector(evaluate(p, space, a))) return {false, std::move(a)};
    std::size_t k = 0;
    while (k < pos.size() && ++pos[k] == choices[k].size()) pos[k++] = 0;
    if (k == pos.size()) return {};
  }
}

MembershipResult holds_multilinear(const GradedLiePolynomial& p, const GradedSpace& space) {
  if (p.form != GradedLiePolynomial::Form::multilinear)
    throw InputError("holds_multilinear expects a multilinear polynomial; use holds_adpower");
  p.validate();
  if (p.terms.size() > 1) return holds_multilinear_bruteforce(p, space);
  auto values = spanning_values(p.terms.front().second, space);
  if (Scalar::from_int(space.field, p.terms.front().first).is_zero()) return {};
  if (values.empty()) return {};
  return {false, values.front().assignment};
}

MembershipResult holds_multilinear(const GradedLiePolynomial& p, const Grading& g) {
  return holds_multilinear(p, graded_space(g));
}

AdPowerResult holds_adpower(const GroupElement& deg, const Grading& g) {
  g.group().check(deg);
  const FieldSpec f = g.field();
  const int n = g.n();
  const Subspace comp = g.component(deg);
  const Subspace nil = sum(derived_power(f, n, 1), center(f, n));
  if (nil.contains(comp)) return {};
  for (const auto& xv : comp.basis()) {
    if (nil.contains(xv)) continue;
    const UTMatrix x(f, n, xv);
    for (const auto& [h, sub] : g.components()) {
      for (const auto& yv : sub.basis()) {
        UTMatrix y(f, n, yv);
        for (int k = 0; k < n; ++k) y = bracket(x, y);
        if (!y.is_zero()) return {false, h, x, UTMatrix(f, n, yv)};
      }
    }
  }
  throw Error("ad-power witness missing for degree " + to_string(deg));
}

std::string direction_name(Separator::Direction d) {
  return d == Separator::Direction::holds_in_first ? "holds-in-first" : "holds-in-second";
}

std::optional<Separator> search_separator(const GradingDescriptor& a, const GradingDescriptor& b, FieldSpec f) {
  if (a.n != b.n || !(a.group == b.group)) throw MismatchError("descriptors differ in n or group");
  validate(a, f);
  validate(b, f);
  const auto ga = build(a, f), gb = build(b, f);
  const int n = a.n;
  const AbelianGroup& grp = a.group;

  // Cross-kind and differing g: the ad-power family.
  std::set<GroupElement> degrees;
  for (const auto& [d, s] : ga.components()) degrees.insert(d);
  for (const auto& [d, s] : gb.components()) degrees.insert(d);
  for (const auto& d : degrees) {
    auto ra = holds_adpower(d, ga), rb = holds_adpower(d, gb);
    if (ra.identity_for_all_h == rb.identity_for_all_h) continue;
    const auto& fail = ra.identity_for_all_h ? rb : ra;
    auto dir = ra.identity_for_all_h ? Separator::Direction::holds_in_first : Separator::Direction::holds_in_second;
    return Separator{adpower(n, d, *fail.h), dir, "f"};
  }

  const auto sa = graded_space(ga), sb = graded_space(gb);
  auto try_poly = [&](const GradedLiePolynomial& p, const std::string& family) -> std::optional<Separator> {
    const bool ha = holds_multilinear(p, sa).holds, hb = holds_multilinear(p, sb).holds;
    if (ha == hb) return std::nullopt;
    return Separator{p, ha ? Separator::Direction::holds_in_first : Separator::Direction::holds_in_second, family};
  };
  std::vector<int> sigma(n - 1);
  std::iota(sigma.begin(), sigma.end(), 0);
  const bool same_g = a.g && b.g && *a.g == *b.g;
  do {
    for (const auto* eta : {&a.eta, &b.eta}) {
      if (auto s = try_poly(make_xi(grp, *eta, sigma), "xi")) return s;
      if (!same_g) continue;
      for (auto v : {XiPrimeVariant::summed, XiPrimeVariant::half_summed})
        if (auto s = try_poly(make_xi_prime(grp, *a.g, *eta, sigma, v), "xi'")) return s;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return std::nullopt;
}

std::optional<Separator> find_separator(const GradingDescriptor& a, const GradingDescriptor& b, FieldSpec f) {
  if (practically_isomorphic(a, b)) return std::nullopt;
  auto s = search_separator(a, b, f);
  if (!s) throw Error("no separating polynomial found for " + a.to_string() + " and " + b.to_string());
  return s;
}

}  // namespace utgrad
