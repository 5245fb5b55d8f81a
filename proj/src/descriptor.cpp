#include "utgrad/descriptor.hpp"

#include <algorithm>

#include "utgrad/error.hpp"

namespace utgrad {

std::string kind_name(GradingDescriptor::Kind k) {
  return k == GradingDescriptor::Kind::elementary ? "elementary" : "type2";
}

std::string GradingDescriptor::to_string() const {
  std::string s = kind_name(kind) + " n=" + std::to_string(n) + " group=" + group.name() + " t=" + utgrad::to_string(t);
  if (g) s += " g=" + utgrad::to_string(*g);
  s += " eta=[";
  for (std::size_t i = 0; i < eta.size(); ++i) s += (i ? "," : "") + utgrad::to_string(eta[i]);
  return s + "]";
}

GradingDescriptor elementary(const AbelianGroup& group, GroupElement t, EtaSequence eta) {
  GradingDescriptor d{GradingDescriptor::Kind::elementary, static_cast<int>(eta.size()) + 1, group, std::move(t),
                      std::nullopt, std::move(eta)};
  validate(d);
  return d;
}

GradingDescriptor type2(const AbelianGroup& group, GroupElement t, GroupElement g, EtaSequence eta) {
  GradingDescriptor d{GradingDescriptor::Kind::type2, static_cast<int>(eta.size()) + 1, group, std::move(t),
                      std::move(g), std::move(eta)};
  validate(d);
  return d;
}

EtaSequence rev(const EtaSequence& eta) { return EtaSequence(eta.rbegin(), eta.rend()); }

bool is_symmetric(const EtaSequence& eta) { return eta == rev(eta); }

void validate(const GradingDescriptor& d, std::optional<FieldSpec> field) {
  if (d.n < 2) throw InputError("descriptor size must be at least 2");
  if (d.eta.size() != static_cast<std::size_t>(d.n - 1))
    throw InputError("eta must have n - 1 = " + std::to_string(d.n - 1) + " entries");
  try {
    d.group.check(d.t);
    for (const auto& e : d.eta) d.group.check(e);
    if (d.g) d.group.check(*d.g);
  } catch (const MismatchError& e) {
    throw InputError(e.what());
  }
  if (d.kind == GradingDescriptor::Kind::elementary) {
    if (d.g) throw InputError("elementary descriptors carry no g");
    return;
  }
  if (d.n < 3) throw InputError("type2 descriptors need n >= 3");
  if (!d.g) throw InputError("type2 descriptor without g");
  if (d.group.element_order(*d.g) != 2) throw InputError("type2 needs g of order exactly 2");
  if (!is_symmetric(d.eta)) throw InputError("type2 needs a symmetric eta");
  if (field && field->is_prime() && field->characteristic() == 2)
    throw InputError("type2 gradings do not exist in characteristic 2");
}

namespace {

// Product eta_i ... eta_{j-1} (0-based, i <= j).
GroupElement path_degree(const GradingDescriptor& d, int i, int j) {
  GroupElement acc = d.group.identity();
  for (int k = i; k < j; ++k) acc = d.group.compose(acc, d.eta[k]);
  return acc;
}

}  // namespace

Grading build(const GradingDescriptor& d, FieldSpec f) {
  validate(d, f);
  const int n = d.n;
  const auto& grp = d.group;
  std::map<GroupElement, std::vector<Vector>> gens;
  auto add = [&](const GroupElement& deg, const UTMatrix& m) { gens[deg].push_back(m.coords()); };
  auto unit = [&](int i, int j) { return UTMatrix::unit(f, n, i, j); };
  const UTMatrix id = UTMatrix::identity(f, n);

  if (d.kind == GradingDescriptor::Kind::elementary) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) add(path_degree(d, i, j), unit(i, j));
    for (int i = 0; i + 1 < n; ++i) add(grp.identity(), unit(i, i));
  } else {
    const GroupElement& g = *d.g;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const int mi = n - 1 - j, mj = n - 1 - i;
        const GroupElement pi = path_degree(d, i, j);
        if (i == mi) {
          add(grp.compose(g, pi), unit(i, j));
        } else if (std::pair(i, j) < std::pair(mi, mj)) {
          add(pi, unit(i, j) - unit(mi, mj));
          add(grp.compose(g, pi), unit(i, j) + unit(mi, mj));
        }
      }
    std::vector<UTMatrix> symmetric;
    for (int i = 0; i < n / 2; ++i) {
      add(grp.identity(), unit(i, i) - unit(n - 1 - i, n - 1 - i));
      symmetric.push_back(unit(i, i) + unit(n - 1 - i, n - 1 - i));
    }
    if (n % 2 == 1) symmetric.push_back(unit(n / 2, n / 2));
    // I is the sum of the symmetric generators, so dropping one leaves a complement.
    symmetric.pop_back();
    for (const auto& m : symmetric) add(g, m);
  }
  add(d.t, id);

  std::map<GroupElement, Subspace> comps;
  for (auto& [deg, vs] : gens) comps.emplace(deg, Subspace::span(f, ut_dim(n), vs));
  return Grading(n, f, grp, std::move(comps));
}

bool eta_equiv(const EtaSequence& a, const EtaSequence& b) {
  if (a.size() != b.size()) throw InputError("eta sequences of different lengths");
  return a == b || a == rev(b);
}

bool eta_equiv_g(const AbelianGroup& group, const GroupElement& g, const EtaSequence& a, const EtaSequence& b) {
  if (a.size() != b.size()) throw InputError("eta sequences of different lengths");
  if (group.element_order(g) != 2) throw InputError("the twist g must have order exactly 2");
  if (!is_symmetric(a) || !is_symmetric(b)) throw InputError("the twisted relation needs symmetric sequences");
  const std::size_t n = a.size() + 1;
  const std::size_t half = (n - 1) / 2;
  for (std::size_t i = 0; i < half; ++i)
    if (b[i] != a[i] && b[i] != group.compose(g, a[i])) return false;
  if (n % 2 == 0 && a[n / 2 - 1] != b[n / 2 - 1]) return false;
  return true;
}

namespace {

void check_comparable(const GradingDescriptor& a, const GradingDescriptor& b) {
  if (a.n != b.n || !(a.group == b.group)) throw MismatchError("descriptors of different sizes or groups");
  validate(a);
  validate(b);
}

bool same_shape(const GradingDescriptor& a, const GradingDescriptor& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == GradingDescriptor::Kind::elementary) return eta_equiv(a.eta, b.eta);
  return *a.g == *b.g && eta_equiv_g(a.group, *a.g, a.eta, b.eta);
}

}  // namespace

bool graded_isomorphic(const GradingDescriptor& a, const GradingDescriptor& b) {
  check_comparable(a, b);
  return a.t == b.t && same_shape(a, b);
}

bool practically_isomorphic(const GradingDescriptor& a, const GradingDescriptor& b) {
  check_comparable(a, b);
  return same_shape(a, b);
}

GradingDescriptor canonical(const GradingDescriptor& d) {
  validate(d);
  GradingDescriptor c = d;
  if (d.kind == GradingDescriptor::Kind::type2) {
    const std::size_t half = static_cast<std::size_t>(d.n - 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
      c.eta[i] = std::min(c.eta[i], d.group.compose(*d.g, c.eta[i]));
      c.eta[c.eta.size() - 1 - i] = c.eta[i];
    }
  }
  c.eta = std::min(c.eta, rev(c.eta));
  return c;
}

std::vector<GroupElement> involutions(const AbelianGroup& group) {
  std::vector<GroupElement> out;
  for (const auto& x : group.elements())
    if (group.element_order(x) == 2) out.push_back(x);
  return out;
}

namespace {

// All sequences of length k over `pool`, lexicographic.
std::vector<EtaSequence> sequences(const std::vector<GroupElement>& pool, std::size_t k) {
  std::vector<EtaSequence> out{{}};
  for (std::size_t step = 0; step < k; ++step) {
    std::vector<EtaSequence> next;
    for (const auto& prefix : out)
      for (const auto& x : pool) {
        EtaSequence s = prefix;
        s.push_back(x);
        next.push_back(std::move(s));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<GradingDescriptor> canonical_descriptors(int n, const AbelianGroup& group, bool char2) {
  if (!group.is_finite()) throw InputError("class enumeration needs a finite group");
  if (n < 2) throw InputError("class enumeration needs n >= 2");
  const auto elems = group.elements();
  std::vector<GradingDescriptor> out;
  for (const auto& eta : sequences(elems, n - 1)) {
    if (eta != std::min(eta, rev(eta))) continue;
    for (const auto& t : elems) out.push_back(elementary(group, t, eta));
  }
  if (char2 || n < 3) return out;
  const std::size_t half = static_cast<std::size_t>(n - 1) / 2;
  for (const auto& g : involutions(group)) {
    std::vector<GroupElement> reps;
    for (const auto& x : elems)
      if (x == std::min(x, group.compose(g, x))) reps.push_back(x);
    std::vector<EtaSequence> middles = n % 2 == 0 ? sequences(elems, 1) : std::vector<EtaSequence>{{}};
    for (const auto& first : sequences(reps, half))
      for (const auto& mid : middles) {
        EtaSequence eta = first;
        eta.insert(eta.end(), mid.begin(), mid.end());
        for (std::size_t i = half; i-- > 0;) eta.push_back(first[i]);
        for (const auto& t : elems) out.push_back(type2(group, t, g, eta));
      }
  }
  return out;
}

ClassCount count_classes(int n, const AbelianGroup& group, bool char2) {
  ClassCount c;
  const std::size_t order = static_cast<std::size_t>(group.order());
  for (const auto& d : canonical_descriptors(n, group, char2)) {
    if (d.kind == GradingDescriptor::Kind::elementary)
      ++c.elementary_graded;
    else
      ++c.type2_graded;
  }
  // Each practical class carries one graded class per value of t.
  c.elementary_practical = c.elementary_graded / order;
  c.type2_practical = c.type2_graded / order;
  c.graded = c.elementary_graded + c.type2_graded;
  c.practical = c.elementary_practical + c.type2_practical;
  return c;
}

EtaSequence random_eta(int n, const std::vector<GroupElement>& pool, bool symmetric, std::mt19937_64& rng) {
  EtaSequence eta(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    const int mirror = n - 2 - i;
    eta[i] = (symmetric && mirror < i) ? eta[mirror] : pool[rng() % pool.size()];
  }
  return eta;
}

}  // namespace utgrad
