#include "utgrad/classify.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "utgrad/error.hpp"

namespace utgrad {

namespace {

UTMatrix unit(FieldSpec f, int n, int i, int j) { return UTMatrix::unit(f, n, i, j); }

std::string cell(int i, int j) {
  std::ostringstream os;
  os << "e" << i + 1 << "," << j + 1;
  return os.str();
}

/// Subspaces of the main-division chain depend only on (n, field).
struct DivisionChain {
  Subspace s, t, a, a_prime, j_plus_i;
};

DivisionChain compute_chain(FieldSpec f, int n) {
  const std::size_t d = ut_dim(n);
  const Subspace whole = Subspace::whole(f, d);
  const Subspace j1 = derived_power(f, n, 1);
  const Subspace j2 = derived_power(f, n, 2);
  Subspace s = centralizer(derived_power(f, n, n - 2), whole, n);
  Subspace t = centralizer(s, whole, n, &j2);
  Subspace a = sum(t, j1);
  Subspace corner = span_of(f, n, {unit(f, n, 0, n - 1)});
  Subspace a_prime = centralizer(corner, a, n);
  return {std::move(s), std::move(t), std::move(a), std::move(a_prime), sum(j1, center(f, n))};
}

const DivisionChain& division_chain(FieldSpec f, int n) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, DivisionChain> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(f.name(), n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compute_chain(f, n)).first;
  return it->second;
}

GroupElement product(const AbelianGroup& grp, const EtaSequence& eta, int i, int j) {
  GroupElement out = grp.identity();
  for (int k = i; k < j; ++k) out = grp.compose(out, eta[k]);
  return out;
}

/// Degree h with x semihomogeneous of degree h; x must be non-central.
std::optional<GroupElement> semihomogeneous_degree(const Grading& g, const UTMatrix& x) {
  for (const auto& [deg, sub] : g.components())
    if (is_semihomogeneous(g, x, deg)) return deg;
  return std::nullopt;
}

void expect_degree(const Grading& g, const UTMatrix& x, const GroupElement& want, const std::string& step,
                   const std::string& what) {
  auto got = g.degree_of(x);
  if (!got || *got != want)
    throw ClassificationError(step, what + " is not homogeneous of degree " + to_string(want));
}

void expect_semihomogeneous(const Grading& g, const UTMatrix& x, const GroupElement& want,
                            const std::string& step, const std::string& what) {
  if (!is_semihomogeneous(g, x, want))
    throw ClassificationError(step, what + " is not semihomogeneous of degree " + to_string(want));
}

/// Working state: the conjugated grading and the product of the conjugators.
struct Work {
  Grading cur;
  UTMatrix total;
  ClassificationTrace trace;

  void conjugate(const std::string& name, const UTMatrix& p) {
    if (p == UTMatrix::identity(p.field(), p.n())) return;
    cur = transport(Automorphism::inner(p), cur);
    total = p * total;
    trace.conjugators.emplace_back(name, p);
  }
};

UTMatrix shift_or_throw(const Work& w, const UTMatrix& target, const GroupElement& deg, const Subspace& allowed,
                        const std::string& step) {
  auto r = semihomogenize(w.cur, target, deg, allowed);
  if (!r) throw ClassificationError(step, "no shift makes the target semihomogeneous of degree " + to_string(deg));
  return *r;
}

GradingDescriptor classify_n2(Work& w) {
  const Grading& g = w.cur;
  const FieldSpec f = g.field();
  const AbelianGroup& grp = g.group();
  std::optional<UTMatrix> x;
  for (const auto& [deg, sub] : g.components()) {
    for (const auto& b : sub.basis()) {
      UTMatrix m(f, 2, b);
      if (m.at(0, 0) != m.at(1, 1)) {
        if (!grp.is_identity(deg)) throw ClassificationError("n=2", "element with distinct diagonal has degree " + to_string(deg));
        x = m;
        break;
      }
    }
    if (x) break;
  }
  if (!x) throw ClassificationError("n=2", "no homogeneous element with distinct diagonal entries");
  w.trace.shifts.emplace_back("x", *x);
  w.conjugate("diagonalize x", diagonalize_frame({*x}));
  expect_semihomogeneous(w.cur, unit(f, 2, 0, 0), grp.identity(), "n=2", "e11");
  auto eta = w.cur.degree_of(unit(f, 2, 0, 1));
  if (!eta) throw ClassificationError("n=2", "e12 is not homogeneous");
  auto t = w.cur.degree_of(UTMatrix::identity(f, 2));
  return elementary(grp, *t, {*eta});
}

GradingDescriptor classify_elementary(Work& w) {
  const FieldSpec f = w.cur.field();
  const int n = w.cur.n();
  const AbelianGroup& grp = w.cur.group();
  const GroupElement one = grp.identity();
  const std::size_t d = ut_dim(n);

  // Witness for the graded ideal: ad(e11 + r)^n maps UT onto row 1 inside J.
  {
    const UTMatrix e00 = unit(f, n, 0, 0);
    const UTMatrix r = shift_or_throw(w, e00, one, derived_power(f, n, 1), "g=1: e11 + J");
    const UTMatrix x = e00 + r;
    std::vector<Vector> image;
    for (std::size_t k = 0; k < d; ++k) {
      Vector v = zero_vector(f, d);
      v[k] = Scalar::one(f);
      UTMatrix y(f, n, v);
      for (int s = 0; s < n; ++s) y = bracket(x, y);
      image.push_back(y.coords());
    }
    std::vector<UTMatrix> row;
    for (int j = 1; j < n; ++j) row.push_back(unit(f, n, 0, j));
    Subspace i1j = span_of(f, n, row);
    Subspace img = Subspace::span(f, d, image);
    w.trace.shifts.emplace_back("r (e11 + J)", r);
    w.trace.subspaces.emplace_back("f(UT)", img);
    if (!(img == i1j)) throw ClassificationError("g=1: ideal", "image of ad(e11 + r)^n is not row 1 of J");
    row.push_back(UTMatrix::identity(f, n));
    row.push_back(e00);
    Subspace i1 = span_of(f, n, row);
    w.trace.subspaces.emplace_back("I1+FI", i1);
    if (!is_graded_subspace(w.cur, i1)) throw ClassificationError("g=1: ideal", "I1 + FI is not graded");
  }

  // Row by row: e_kk + r semihomogeneous of degree 1 with r in row k of J,
  // then conjugation by I + r makes e_kk itself semihomogeneous.
  for (int k = 0; k + 1 < n; ++k) {
    std::vector<UTMatrix> row;
    for (int j = k + 1; j < n; ++j) row.push_back(unit(f, n, k, j));
    const Subspace allowed = span_of(f, n, row);
    const UTMatrix ekk = unit(f, n, k, k);
    const std::string step = "g=1: " + cell(k, k);
    const UTMatrix r = shift_or_throw(w, ekk, one, allowed, step);
    w.trace.shifts.emplace_back("r" + std::to_string(k + 1), r);
    if (k == 1) {
      std::vector<UTMatrix> rest{UTMatrix::identity(f, n)};
      for (int i = 1; i < n; ++i)
        for (int j = i; j < n; ++j) rest.push_back(unit(f, n, i, j));
      w.trace.subspaces.emplace_back("C", span_of(f, n, rest));
    }
    w.conjugate("I + r" + std::to_string(k + 1), UTMatrix::identity(f, n) + r);
    expect_semihomogeneous(w.cur, ekk, one, step, cell(k, k));
  }

  EtaSequence eta;
  for (int i = 0; i + 1 < n; ++i) {
    auto deg = w.cur.degree_of(unit(f, n, i, i + 1));
    if (!deg) throw ClassificationError("g=1: matrix units", cell(i, i + 1) + " is not homogeneous");
    eta.push_back(*deg);
  }
  for (int i = 0; i < n; ++i) {
    expect_semihomogeneous(w.cur, unit(f, n, i, i), one, "g=1: frame", cell(i, i));
    for (int j = i + 1; j < n; ++j) expect_degree(w.cur, unit(f, n, i, j), product(grp, eta, i, j), "g=1: frame", cell(i, j));
  }
  auto t = w.cur.degree_of(UTMatrix::identity(f, n));
  return elementary(grp, *t, eta);
}

GradingDescriptor classify_type2(Work& w, const GroupElement& g) {
  const FieldSpec f = w.cur.field();
  const int n = w.cur.n();
  const AbelianGroup& grp = w.cur.group();
  const GroupElement one = grp.identity();
  const UTMatrix id = UTMatrix::identity(f, n);

  // Pairs (a, b) from the outside in: X_aa^- in degree 1 and X_aa^+ in degree g.
  std::vector<UTMatrix> frame;
  for (int a = 0; a < n / 2; ++a) {
    const int b = n - 1 - a;
    const std::string step = "g!=1: X" + std::to_string(a + 1) + std::to_string(a + 1);
    const UTMatrix minus = unit(f, n, a, a) - unit(f, n, b, b);
    const UTMatrix plus = unit(f, n, a, a) + unit(f, n, b, b);
    UTMatrix xm = minus, xp = plus;
    if (b - a >= 2) {
      std::vector<UTMatrix> dk;
      for (int j = a + 1; j <= b; ++j) dk.push_back(unit(f, n, a, j));
      for (int i = a + 1; i < b; ++i) dk.push_back(unit(f, n, i, b));
      const Subspace allowed = span_of(f, n, dk);
      w.trace.subspaces.emplace_back("D" + std::to_string(a + 1), allowed);
      if (a == 1) {
        std::vector<UTMatrix> u1{unit(f, n, 0, 0) + unit(f, n, n - 1, n - 1)};
        for (int i = 1; i < n - 1; ++i)
          for (int j = i; j < n - 1; ++j) u1.push_back(unit(f, n, i, j));
        w.trace.subspaces.emplace_back("U1", span_of(f, n, u1));
      }
      const UTMatrix r = shift_or_throw(w, minus, one, allowed, step + "^-");
      const UTMatrix s = shift_or_throw(w, plus, g, allowed, step + "^+");
      w.trace.shifts.emplace_back("r" + std::to_string(a + 1), r);
      w.trace.shifts.emplace_back("s" + std::to_string(a + 1), s);
      std::tie(xm, xp) = commuting_adjustment(w.cur, minus + r, plus + s);
    } else {
      const Subspace allowed = span_of(f, n, {unit(f, n, a, b)});
      const UTMatrix r = shift_or_throw(w, minus, one, allowed, step + "^-");
      w.trace.shifts.emplace_back("r" + std::to_string(a + 1), r);
      xm = minus + r;
    }
    std::vector<UTMatrix> family = frame;
    family.push_back(xm);
    family.push_back(xp);
    const UTMatrix p = diagonalize_frame(family);
    w.conjugate("diagonalize X" + std::to_string(a + 1) + std::to_string(a + 1), p);
    expect_semihomogeneous(w.cur, minus, one, step, "X^-");
    expect_semihomogeneous(w.cur, plus, g, step, "X^+");
    frame.push_back(minus);
    frame.push_back(plus);
  }
  if (n % 2 == 1) expect_semihomogeneous(w.cur, unit(f, n, n / 2, n / 2), g, "g!=1: middle", cell(n / 2, n / 2));

  // Each W_i = span{e_{i,i+1}, e_{n-i,n-i+1}} is graded with basis e ± c e'.
  const int q = (n - 1) / 2;
  EtaSequence eta(n - 1, one);
  std::vector<Scalar> eps;
  for (int i = 0; i < q; ++i) {
    const UTMatrix e = unit(f, n, i, i + 1);
    const UTMatrix e2 = unit(f, n, n - 2 - i, n - 1 - i);
    const Subspace wi = span_of(f, n, {e, e2});
    const std::string step = "g!=1: W" + std::to_string(i + 1);
    w.trace.subspaces.emplace_back("W" + std::to_string(i + 1), wi);
    auto parts = homogeneous_parts(w.cur, wi);
    if (parts.size() != 2) throw ClassificationError(step, "expected two homogeneous lines");
    const auto& [deg, line] = *parts.begin();
    UTMatrix v(f, n, line.basis().front());
    const Scalar c = v.at(n - 2 - i, n - 1 - i);
    if (!v.at(i, i + 1).is_one() || c.is_zero()) throw ClassificationError(step, "homogeneous basis is not of the form e ± eps e'");
    eps.push_back(-c);
    eta[i] = deg;
    eta[n - 2 - i] = deg;
  }
  if (n % 2 == 0) {
    const int mid = n / 2 - 1;
    auto deg = w.cur.degree_of(unit(f, n, mid, mid + 1));
    if (!deg) throw ClassificationError("g!=1: middle", cell(mid, mid + 1) + " is not homogeneous");
    eta[mid] = grp.compose(g, *deg);
  }
  w.trace.epsilons = eps;

  // M with M X^±_{i,i+1} M^-1 = e ± eps_i e'; conjugating by M^-1 reaches the frame.
  std::vector<std::optional<Scalar>> m(n);
  m[n - 1] = Scalar::one(f);
  for (int i = 0; i < q; ++i) m[n - 2 - i] = eps[i] * *m[n - 1 - i];
  const Scalar base = m[q] ? *m[q] : Scalar::one(f);
  UTMatrix mm = UTMatrix::zero(f, n);
  for (int i = 0; i < n; ++i) mm.set(i, i, m[i] ? *m[i] : base);
  w.conjugate("M^-1", mm.inverse());

  // Check the whole frame against the type-2 degrees.
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const int mi = n - 1 - j, mj = n - 1 - i;
      if (std::make_pair(mi, mj) < std::make_pair(i, j)) continue;
      const GroupElement pi = product(grp, eta, i, j);
      const UTMatrix eij = unit(f, n, i, j);
      if (mi == i && mj == j) {
        if (i == j) expect_semihomogeneous(w.cur, eij, g, "g!=1: frame", cell(i, j));
        else expect_degree(w.cur, eij, grp.compose(g, pi), "g!=1: frame", cell(i, j));
        continue;
      }
      const UTMatrix em = unit(f, n, mi, mj);
      const std::string name = "X" + std::to_string(i + 1) + "," + std::to_string(j + 1);
      if (i == j) {
        expect_semihomogeneous(w.cur, eij - em, one, "g!=1: frame", name + "^-");
        expect_semihomogeneous(w.cur, eij + em, g, "g!=1: frame", name + "^+");
      } else {
        expect_degree(w.cur, eij - em, pi, "g!=1: frame", name + "^-");
        expect_degree(w.cur, eij + em, grp.compose(g, pi), "g!=1: frame", name + "^+");
      }
    }
  }
  auto t = w.cur.degree_of(id);
  return type2(grp, *t, g, eta);
}

}  // namespace

std::string branch_name(ClassificationTrace::Branch b) {
  switch (b) {
    case ClassificationTrace::Branch::n2: return "n2";
    case ClassificationTrace::Branch::elementary: return "elementary";
    case ClassificationTrace::Branch::type2: return "type2";
  }
  return "?";
}

GroupElement main_division_degree(const Grading& g) {
  const int n = g.n();
  if (n < 3) throw InputError("main division degree needs n >= 3");
  const AbelianGroup& grp = g.group();
  const DivisionChain& ch = division_chain(g.field(), n);
  std::optional<GroupElement> found;
  std::size_t total = 0;
  for (const auto& [deg, sub] : g.components()) {
    Subspace part = intersect(ch.a_prime, sub);
    total += part.dimension();
    if (ch.j_plus_i.contains(part)) continue;
    if (found) throw ClassificationError("main division", "two degrees leave J + FI");
    found = deg;
  }
  if (total != ch.a_prime.dimension()) throw ClassificationError("main division", "A' is not a graded subspace");
  if (!found) throw ClassificationError("main division", "no degree leaves J + FI");
  if (!grp.is_identity(grp.compose(*found, *found)))
    throw ClassificationError("main division", "g = " + to_string(*found) + " does not square to 1");
  if (g.field().characteristic() == 2 && !grp.is_identity(*found))
    throw ClassificationError("main division", "g != 1 in characteristic 2");
  return *found;
}

std::optional<UTMatrix> semihomogenize(const Grading& g, const UTMatrix& target, const GroupElement& degree,
                                       const Subspace& allowed_shift) {
  const FieldSpec f = g.field();
  const int n = g.n();
  Subspace goal = sum(g.component(degree), center(f, n));
  auto x = affine_solve(allowed_shift.basis(), goal, target.coords());
  if (!x) return std::nullopt;
  Vector r = zero_vector(f, g.dim());
  for (std::size_t k = 0; k < x->size(); ++k) axpy(r, (*x)[k], allowed_shift.basis()[k]);
  return UTMatrix(f, n, r);
}

std::pair<UTMatrix, UTMatrix> commuting_adjustment(const Grading& g, const UTMatrix& x_minus, const UTMatrix& x_plus) {
  const FieldSpec f = g.field();
  const int n = g.n();
  if (f.characteristic() == 2) throw InputError("commuting adjustment needs characteristic other than 2");
  int a = -1, b = -1;
  for (int i = 0; i < n; ++i) {
    if (x_minus.at(i, i).is_one()) a = i;
    if ((-x_minus.at(i, i)).is_one()) b = i;
  }
  if (a < 0 || b < 0 || a >= b) throw InputError("x- must have diagonal entries 1 and -1");
  auto dm = semihomogeneous_degree(g, x_minus);
  auto dp = semihomogeneous_degree(g, x_plus);
  if (!dm || !dp) throw ClassificationError("commuting adjustment", "inputs are not semihomogeneous");

  UTMatrix xm = x_minus + bracket(x_plus, bracket(x_minus, x_plus));
  UTMatrix c = bracket(xm, x_plus);
  const Scalar wv = c.at(a, b);
  if (!(c - wv * unit(f, n, a, b)).is_zero())
    throw ClassificationError("commuting adjustment", "[x-', x+] is not a multiple of " + cell(a, b));
  UTMatrix xp = x_plus - (wv / Scalar::from_int(f, 2)) * unit(f, n, a, b);
  if (!bracket(xm, xp).is_zero()) throw ClassificationError("commuting adjustment", "adjusted pair does not commute");
  if (!is_semihomogeneous(g, xm, *dm) || !is_semihomogeneous(g, xp, *dp))
    throw ClassificationError("commuting adjustment", "adjusted pair lost its degrees");
  return {xm, xp};
}

UTMatrix diagonalize_frame(const std::vector<UTMatrix>& elements) {
  if (elements.empty()) throw InputError("diagonalize_frame needs at least one element");
  const FieldSpec f = elements.front().field();
  const int n = elements.front().n();
  // Column j of V is a joint eigenvector with v_j = 1 and zeros below.
  UTMatrix v = UTMatrix::identity(f, n);
  for (int j = 1; j < n; ++j) {
    Matrix a;
    Vector rhs;
    for (const auto& x : elements) {
      for (int i = 0; i < j; ++i) {
        Vector row = zero_vector(f, j);
        for (int k = i; k < j; ++k) row[k] = x.at(i, k);
        row[i] -= x.at(j, j);
        a.push_back(std::move(row));
        rhs.push_back(-x.at(i, j));
      }
    }
    auto sol = solve(a, j, rhs, f);
    if (!sol) throw ClassificationError("diagonalize frame", "no joint eigenvector for column " + std::to_string(j + 1));
    for (int i = 0; i < j; ++i) v.set(i, j, (*sol)[i]);
  }
  UTMatrix p = v.inverse();
  for (const auto& x : elements)
    if (!(p * x * v).is_diagonal()) throw ClassificationError("diagonalize frame", "family is not simultaneously diagonalizable");
  return p;
}

Classification classify(const Grading& g) {
  const auto report = verify_grading(g);
  if (!report.ok) throw InputError("classify: not a grading: " + report.failures.front().describe(g.n()));
  const FieldSpec f = g.field();
  const int n = g.n();
  Work w{g, UTMatrix::identity(f, n), {}};
  GradingDescriptor raw;
  if (n == 2) {
    w.trace.branch = ClassificationTrace::Branch::n2;
    raw = classify_n2(w);
  } else {
    const DivisionChain& ch = division_chain(f, n);
    w.trace.subspaces.emplace_back("S", ch.s);
    w.trace.subspaces.emplace_back("T", ch.t);
    w.trace.subspaces.emplace_back("A", ch.a);
    w.trace.subspaces.emplace_back("A'", ch.a_prime);
    const GroupElement gm = main_division_degree(g);
    w.trace.g_main = gm;
    if (g.group().is_identity(gm)) {
      w.trace.branch = ClassificationTrace::Branch::elementary;
      raw = classify_elementary(w);
    } else {
      w.trace.branch = ClassificationTrace::Branch::type2;
      raw = classify_type2(w, gm);
    }
  }
  w.trace.composed = w.total;
  return {canonical(raw), raw, std::move(w.trace)};
}

}  // namespace utgrad
