#include "utgrad/triangular.hpp"

#include "utgrad/error.hpp"

namespace utgrad {

UTMatrix::UTMatrix(FieldSpec f, int n, Vector coords) : field_(f), n_(n), c_(std::move(coords)) {
  if (n < 1) throw InputError("matrix size must be positive");
  if (c_.size() != ut_dim(n))
    throw InputError("upper triangular " + std::to_string(n) + "x" + std::to_string(n) + " needs " +
                     std::to_string(ut_dim(n)) + " coordinates");
}

UTMatrix UTMatrix::zero(FieldSpec f, int n) { return UTMatrix(f, n, zero_vector(f, ut_dim(n))); }

UTMatrix UTMatrix::identity(FieldSpec f, int n) {
  UTMatrix m = zero(f, n);
  for (int i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
  return m;
}

UTMatrix UTMatrix::unit(FieldSpec f, int n, int i, int j) {
  if (i < 0 || j >= n || i > j) throw InputError("matrix unit outside the upper triangle");
  UTMatrix m = zero(f, n);
  m.set(i, j, Scalar::one(f));
  return m;
}

bool UTMatrix::is_diagonal() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (!at(i, j).is_zero()) return false;
  return true;
}

UTMatrix UTMatrix::diagonal() const {
  UTMatrix d = zero(field_, n_);
  for (int i = 0; i < n_; ++i) d.set(i, i, at(i, i));
  return d;
}

bool UTMatrix::has_scalar_diagonal() const {
  for (int i = 1; i < n_; ++i)
    if (at(i, i) != at(0, 0)) return false;
  return true;
}

void UTMatrix::check_compatible(const UTMatrix& o) const {
  if (n_ != o.n_) throw InputError("matrix size mismatch");
  if (field_ != o.field_) throw MismatchError("matrices over different fields");
}

UTMatrix& UTMatrix::operator+=(const UTMatrix& o) {
  check_compatible(o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

UTMatrix& UTMatrix::operator-=(const UTMatrix& o) {
  check_compatible(o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

UTMatrix operator*(const Scalar& s, const UTMatrix& a) {
  return UTMatrix(a.field_, a.n_, s * a.c_);
}

UTMatrix UTMatrix::operator-() const { return Scalar::from_int(field_, -1) * *this; }

UTMatrix operator*(const UTMatrix& a, const UTMatrix& b) {
  a.check_compatible(b);
  const int n = a.n_;
  UTMatrix r = UTMatrix::zero(a.field_, n);
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) {
      const Scalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = k; j < n; ++j) {
        const Scalar& bkj = b.at(k, j);
        if (!bkj.is_zero()) r.c_[ut_index(n, i, j)] += aik * bkj;
      }
    }
  return r;
}

bool UTMatrix::is_invertible() const {
  for (int i = 0; i < n_; ++i)
    if (at(i, i).is_zero()) return false;
  return true;
}

UTMatrix UTMatrix::inverse() const {
  if (!is_invertible()) throw DivisionByZero("singular upper triangular matrix");
  UTMatrix x = zero(field_, n_);
  std::vector<Scalar> dinv;
  for (int i = 0; i < n_; ++i) dinv.push_back(at(i, i).inverse());
  for (int j = 0; j < n_; ++j) {
    x.set(j, j, dinv[j]);
    for (int i = j - 1; i >= 0; --i) {
      Scalar s = Scalar::zero(field_);
      for (int k = i + 1; k <= j; ++k)
        if (!at(i, k).is_zero()) s += at(i, k) * x.at(k, j);
      x.set(i, j, -(dinv[i] * s));
    }
  }
  return x;
}

std::string UTMatrix::to_string() const {
  std::string s = "[";
  for (int i = 0; i < n_; ++i) {
    s += i ? "; " : "";
    for (int j = 0; j < n_; ++j) {
      s += j ? " " : "";
      s += j < i ? "0" : at(i, j).to_string();
    }
  }
  return s + "]";
}

UTMatrix bracket(const UTMatrix& a, const UTMatrix& b) { return a * b - b * a; }

UTMatrix left_normed(const std::vector<UTMatrix>& list) {
  if (list.size() < 2) throw InputError("left-normed bracket needs at least two arguments");
  UTMatrix acc = list[0];
  for (std::size_t k = 1; k < list.size(); ++k) acc = bracket(acc, list[k]);
  return acc;
}

UTMatrix tau(const UTMatrix& x) {
  const int n = x.n();
  UTMatrix r = UTMatrix::zero(x.field(), n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) r.set(n - 1 - j, n - 1 - i, x.at(i, j));
  return r;
}

Vector bracket_coords(FieldSpec f, int n, const Vector& a, const Vector& b) {
  return bracket(UTMatrix(f, n, a), UTMatrix(f, n, b)).coords();
}

Subspace derived_power(FieldSpec f, int n, int m) {
  if (m < 1) throw InputError("derived power index must be at least 1");
  std::vector<Vector> gens;
  for (int i = 0; i < n; ++i)
    for (int j = i + m; j < n; ++j) gens.push_back(UTMatrix::unit(f, n, i, j).coords());
  return Subspace::span(f, ut_dim(n), gens);
}

Subspace center(FieldSpec f, int n) { return span_of(f, n, {UTMatrix::identity(f, n)}); }

Subspace span_of(FieldSpec f, int n, const std::vector<UTMatrix>& ms) {
  std::vector<Vector> v;
  for (const auto& m : ms) v.push_back(m.coords());
  return Subspace::span(f, ut_dim(n), v);
}

Subspace centralizer(const Subspace& s, const Subspace& within, int n, const Subspace* modulo) {
  const FieldSpec f = within.field();
  const std::size_t dim = ut_dim(n);
  const Matrix& w = within.basis();
  // Unknowns: coefficients c_k of x = sum c_k w_k. Each (s, coordinate) gives one equation.
  Matrix rows;
  for (const auto& sv : s.basis()) {
    std::vector<Vector> cols;
    for (const auto& wk : w) {
      Vector br = bracket_coords(f, n, wk, sv);
      cols.push_back(modulo ? modulo->reduce(std::move(br)) : std::move(br));
    }
    for (std::size_t i = 0; i < dim; ++i) {
      Vector row;
      row.reserve(w.size());
      bool nonzero = false;
      for (const auto& c : cols) {
        row.push_back(c[i]);
        nonzero = nonzero || !c[i].is_zero();
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  std::vector<Vector> out;
  for (const auto& k : kernel_basis(rows, w.size(), f)) {
    Vector x = zero_vector(f, dim);
    for (std::size_t i = 0; i < k.size(); ++i) axpy(x, k[i], w[i]);
    out.push_back(std::move(x));
  }
  return Subspace::span(f, dim, out);
}

namespace {

UTMatrix normalize_conjugator(const UTMatrix& p) {
  if (!p.is_invertible()) throw DivisionByZero("conjugator is singular");
  return p.at(0, 0).inverse() * p;
}

Scalar sum_of(const Vector& a) {
  Scalar s = Scalar::zero(a.front().field());
  for (const auto& x : a) s += x;
  return s;
}

Vector reversed(const Vector& a) { return Vector(a.rbegin(), a.rend()); }

}  // namespace

Automorphism::Automorphism(UTMatrix p, Vector a, bool use_omega)
    : p_(normalize_conjugator(p)), p_inv_(p_.inverse()), a_(std::move(a)), omega_(use_omega) {
  const int n = p_.n();
  if (a_.size() != static_cast<std::size_t>(n)) throw InputError("central part must have n entries");
  for (const auto& x : a_)
    if (x.field() != p_.field()) throw MismatchError("central part over the wrong field");
  // phi_a(I) = (1 + sum a) I, so phi_a is invertible iff sum a != -1.
  if ((sum_of(a_) + Scalar::one(p_.field())).is_zero())
    throw InputError("central part with sum -1 is not invertible");
  if (omega_ && n == 2) throw InputError("omega is not used for n = 2");
}

Automorphism Automorphism::identity(FieldSpec f, int n) {
  return Automorphism(UTMatrix::identity(f, n), zero_vector(f, n), false);
}

Automorphism Automorphism::inner(const UTMatrix& p) {
  return Automorphism(p, zero_vector(p.field(), p.n()), false);
}

Automorphism Automorphism::central(FieldSpec f, int n, Vector a) {
  return Automorphism(UTMatrix::identity(f, n), std::move(a), false);
}

Automorphism Automorphism::omega(FieldSpec f, int n) {
  return Automorphism(UTMatrix::identity(f, n), zero_vector(f, n), true);
}

UTMatrix Automorphism::apply(const UTMatrix& x) const {
  if (x.n() != n()) throw InputError("automorphism applied to a matrix of the wrong size");
  UTMatrix y = omega_ ? -tau(x) : x;
  y = p_ * y * p_inv_;
  Scalar lambda = Scalar::zero(field());
  for (int i = 0; i < n(); ++i)
    if (!a_[i].is_zero()) lambda += a_[i] * y.at(i, i);
  if (!lambda.is_zero())
    for (int i = 0; i < n(); ++i) y.set(i, i, y.at(i, i) + lambda);
  return y;
}

Vector Automorphism::apply_coords(const Vector& x) const {
  return apply(UTMatrix(field(), n(), x)).coords();
}

Automorphism Automorphism::compose(const Automorphism& other) const {
  if (other.n() != n() || other.field() != field()) throw MismatchError("automorphisms of different algebras");
  // omega phi_b = phi_{rev b} omega and omega c_Q = c_{tau(Q)^-1} omega; c_P commutes with phi.
  Vector b = omega_ ? reversed(other.a_) : other.a_;
  UTMatrix q = omega_ ? tau(other.p_).inverse() : other.p_;
  const Scalar one_plus = Scalar::one(field()) + sum_of(a_);
  Vector c = a_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += one_plus * b[i];
  return Automorphism(p_ * q, std::move(c), omega_ != other.omega_);
}

Automorphism Automorphism::inverse() const {
  const FieldSpec f = field();
  const Scalar denom = (Scalar::one(f) + sum_of(a_)).inverse();
  Vector c = a_;
  for (auto& x : c) x = -(x * denom);
  Automorphism w = omega_ ? omega(f, n()) : identity(f, n());
  return w.compose(inner(p_inv_)).compose(central(f, n(), std::move(c)));
}

bool operator==(const Automorphism& a, const Automorphism& b) {
  return a.p_ == b.p_ && a.a_ == b.a_ && a.omega_ == b.omega_;
}

std::string Automorphism::to_string() const {
  std::string s = "P=" + p_.to_string() + " a=(";
  for (std::size_t i = 0; i < a_.size(); ++i) s += (i ? "," : "") + a_[i].to_string();
  return s + ") omega=" + (omega_ ? "1" : "0");
}

std::uint64_t automorphism_count(int n, FieldSpec f) {
  if (!f.is_finite()) throw InputError("the automorphism group over Q is infinite");
  const std::uint64_t p = f.modulus();
  auto ipow = [](std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) {
      if (r > UINT64_MAX / b) return UINT64_MAX;
      r *= b;
    }
    return r;
  };
  // (p-1)^(n-1) p^(n(n-1)/2) conjugators, p^n - p^(n-1) central tuples, omega when n > 2.
  std::uint64_t count = ipow(p - 1, n - 1);
  std::uint64_t off = ipow(p, n * (n - 1) / 2);
  std::uint64_t central = ipow(p, n) - ipow(p, n - 1);
  for (std::uint64_t factor : {off, central, std::uint64_t(n > 2 ? 2 : 1)}) {
    if (count > UINT64_MAX / factor) return UINT64_MAX;
    count *= factor;
  }
  return count;
}

void for_each_automorphism(int n, FieldSpec f, const std::function<bool(const Automorphism&)>& fn,
                           std::uint64_t budget) {
  const std::uint64_t total = automorphism_count(n, f);
  if (total > budget)
    throw BudgetExceeded("automorphism group of size " + std::to_string(total) + " exceeds budget " +
                         std::to_string(budget),
                         0);
  const std::int64_t p = f.modulus();
  const std::size_t dim = ut_dim(n);
  // Odometer over conjugator coordinates (P_00 = 1, other diagonal entries nonzero).
  std::vector<std::int64_t> pc(dim, 0), lo(dim, 0);
  for (int i = 0; i < n; ++i) lo[ut_index(n, i, i)] = 1;
  pc = lo;
  auto advance = [](std::vector<std::int64_t>& v, const std::vector<std::int64_t>& low,
                    const std::vector<bool>& fixed, std::int64_t p) {
    for (std::size_t k = v.size(); k-- > 0;) {
      if (fixed[k]) continue;
      if (++v[k] < p) return true;
      v[k] = low[k];
    }
    return false;
  };
  std::vector<bool> fixed(dim, false);
  fixed[0] = true;
  std::vector<bool> afixed(n, false);
  std::vector<std::int64_t> alo(n, 0);
  const int omegas = n > 2 ? 2 : 1;
  do {
    Vector pv;
    for (auto x : pc) pv.push_back(Scalar::from_int(f, x));
    const UTMatrix pm(f, n, pv);
    std::vector<std::int64_t> ac(n, 0);
    do {
      std::int64_t s = 0;
      for (auto x : ac) s += x;
      if ((s + 1) % p == 0) continue;
      Vector av;
      for (auto x : ac) av.push_back(Scalar::from_int(f, x));
      for (int e = 0; e < omegas; ++e)
        if (!fn(Automorphism(pm, av, e == 1))) return;
    } while (advance(ac, alo, afixed, p));
  } while (advance(pc, lo, fixed, p));
}

Scalar random_scalar(FieldSpec f, std::mt19937_64& rng) {
  if (f.is_finite()) return Scalar::from_int(f, static_cast<std::int64_t>(rng() % f.modulus()));
  return Scalar::from_int(f, static_cast<std::int64_t>(rng() % 7) - 3);
}

UTMatrix random_matrix(FieldSpec f, int n, std::mt19937_64& rng) {
  Vector c;
  for (std::size_t k = 0; k < ut_dim(n); ++k) c.push_back(random_scalar(f, rng));
  return UTMatrix(f, n, c);
}

namespace {

Scalar random_nonzero(FieldSpec f, std::mt19937_64& rng) {
  while (true) {
    Scalar s = random_scalar(f, rng);
    if (!s.is_zero()) return s;
  }
}

UTMatrix random_invertible(FieldSpec f, int n, std::mt19937_64& rng) {
  UTMatrix p = random_matrix(f, n, rng);
  for (int i = 0; i < n; ++i) p.set(i, i, random_nonzero(f, rng));
  return p;
}

}  // namespace

Automorphism random_inner(int n, FieldSpec f, std::mt19937_64& rng) {
  return Automorphism::inner(random_invertible(f, n, rng));
}

Automorphism random_automorphism(int n, FieldSpec f, std::mt19937_64& rng) {
  UTMatrix p = random_invertible(f, n, rng);
  Vector a;
  while (true) {
    a.clear();
    for (int i = 0; i < n; ++i) a.push_back(random_scalar(f, rng));
    if (!(sum_of(a) + Scalar::one(f)).is_zero()) break;
  }
  const bool w = n > 2 && (rng() & 1);
  return Automorphism(p, a, w);
}

}  // namespace utgrad
