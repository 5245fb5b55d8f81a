#include "utgrad/linalg.hpp"

#include "utgrad/error.hpp"

namespace utgrad {

namespace {

void check_len(const Vector& v, std::size_t dim) {
  if (v.size() != dim)
    throw InputError("vector of length " + std::to_string(v.size()) + " in ambient dimension " +
                     std::to_string(dim));
}

}  // namespace

std::vector<std::size_t> rref(Matrix& rows, std::size_t width) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Scalar inv = rows[r][c].inverse();
    if (!inv.is_one())
      for (std::size_t k = c; k < width; ++k) rows[r][k] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Scalar factor = rows[i][c];
      for (std::size_t k = c; k < width; ++k)
        if (!rows[r][k].is_zero()) rows[i][k] -= factor * rows[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::optional<Vector> solve(const Matrix& a, std::size_t cols, const Vector& b, FieldSpec f) {
  if (a.size() != b.size()) throw InputError("right-hand side length mismatch");
  Matrix aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    check_len(a[i], cols);
    Vector row = a[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  auto pivots = rref(aug, cols + 1);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  Vector x = zero_vector(f, cols);
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug[k][cols];
  return x;
}

Matrix kernel_basis(const Matrix& a, std::size_t cols, FieldSpec f) {
  Matrix rows = a;
  for (const auto& r : rows) check_len(r, cols);
  auto pivots = rref(rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(f, cols);
    v[free] = Scalar::one(f);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -rows[k][free];
    out.push_back(std::move(v));
  }
  return out;
}

Subspace Subspace::zero(FieldSpec f, std::size_t dim) { return Subspace(f, dim); }

Subspace Subspace::whole(FieldSpec f, std::size_t dim) {
  Subspace s(f, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Vector v = zero_vector(f, dim);
    v[i] = Scalar::one(f);
    s.basis_.push_back(std::move(v));
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace Subspace::span(FieldSpec f, std::size_t dim, const std::vector<Vector>& vectors) {
  Subspace s(f, dim);
  for (const auto& v : vectors) {
    check_len(v, dim);
    if (!v.empty() && v.front().field() != f) throw MismatchError("vector over the wrong field");
  }
  s.basis_ = vectors;
  s.pivots_ = rref(s.basis_, dim);
  return s;
}

Vector Subspace::reduce(Vector v) const {
  check_len(v, dim_);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const Scalar c = v[pivots_[k]];
    if (!c.is_zero()) {
      const Vector& b = basis_[k];
      for (std::size_t i = pivots_[k]; i < dim_; ++i)
        if (!b[i].is_zero()) v[i] -= c * b[i];
    }
  }
  return v;
}

bool Subspace::contains(const Vector& v) const { return is_zero_vector(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  if (other.dim_ != dim_) throw InputError("ambient dimension mismatch");
  for (const auto& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

std::optional<Vector> Subspace::coordinates(const Vector& v) const {
  if (!contains(v)) return std::nullopt;
  Vector c;
  c.reserve(basis_.size());
  for (auto p : pivots_) c.push_back(v[p]);
  return c;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.dim_ != b.dim_) throw InputError("ambient dimension mismatch");
  Matrix all = a.basis_;
  all.insert(all.end(), b.basis_.begin(), b.basis_.end());
  return Subspace::span(a.field_, a.dim_, all);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.dim_ != b.dim_) throw InputError("ambient dimension mismatch");
  if (a.is_zero() || b.is_zero()) return Subspace::zero(a.field_, a.dim_);
  // Zassenhaus: rows (a|a) and (b|0); rows with vanishing left half span the intersection.
  const std::size_t d = a.dim_;
  Matrix rows;
  for (const auto& v : a.basis_) {
    Vector r = v;
    r.insert(r.end(), v.begin(), v.end());
    rows.push_back(std::move(r));
  }
  for (const auto& v : b.basis_) {
    Vector r = v;
    r.resize(2 * d, Scalar::zero(a.field_));
    rows.push_back(std::move(r));
  }
  auto pivots = rref(rows, 2 * d);
  Matrix inter;
  for (std::size_t k = 0; k < pivots.size(); ++k)
    if (pivots[k] >= d) inter.emplace_back(rows[k].begin() + d, rows[k].end());
  return Subspace::span(a.field_, d, inter);
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.field_ == b.field_ && a.dim_ == b.dim_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
}

Subspace complement_within(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("ambient dimension mismatch");
  if (!b.contains(a)) throw InputError("complement requested for a non-nested pair");
  Subspace cur = a;
  std::vector<Vector> added;
  for (const auto& v : b.basis()) {
    if (cur.contains(v)) continue;
    added.push_back(v);
    cur = sum(cur, Subspace::span(a.field(), a.ambient_dim(), {v}));
  }
  return Subspace::span(a.field(), a.ambient_dim(), added);
}

Coordinatizer::Coordinatizer(FieldSpec f, std::size_t dim, const std::vector<Vector>& independent)
    : field_(f), dim_(dim), count_(independent.size()) {
  // Row-reduce [b_i | e_i] so each echelon row records its combination of inputs.
  const std::size_t w = dim + count_;
  Matrix aug;
  for (std::size_t i = 0; i < count_; ++i) {
    check_len(independent[i], dim);
    Vector r = independent[i];
    r.resize(w, Scalar::zero(f));
    r[dim + i] = Scalar::one(f);
    aug.push_back(std::move(r));
  }
  auto piv = rref(aug, w);
  for (std::size_t k = 0; k < piv.size(); ++k) {
    if (piv[k] >= dim) throw InputError("coordinatizer basis is linearly dependent");
    rows_.emplace_back(aug[k].begin(), aug[k].begin() + dim);
    transform_.emplace_back(aug[k].begin() + dim, aug[k].end());
    pivots_.push_back(piv[k]);
  }
}

std::optional<Vector> Coordinatizer::coordinates(const Vector& v) const {
  check_len(v, dim_);
  Vector rem = v;
  Vector c = zero_vector(field_, count_);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar m = rem[pivots_[k]];
    if (m.is_zero()) continue;
    for (std::size_t i = pivots_[k]; i < dim_; ++i)
      if (!rows_[k][i].is_zero()) rem[i] -= m * rows_[k][i];
    axpy(c, m, transform_[k]);
  }
  if (!is_zero_vector(rem)) return std::nullopt;
  return c;
}

namespace {

std::vector<Vector> joined_basis(const Subspace& a, const Subspace& c) {
  std::vector<Vector> all = a.basis();
  all.insert(all.end(), c.basis().begin(), c.basis().end());
  return all;
}

}  // namespace

QuotientCoords::QuotientCoords(const Subspace& a, const Subspace& b)
    : complement_(complement_within(a, b)),
      sub_dim_(a.dimension()),
      coords_(a.field(), a.ambient_dim(), joined_basis(a, complement_)) {}

Vector QuotientCoords::operator()(const Vector& v) const {
  auto c = coords_.coordinates(v);
  if (!c) throw InputError("vector outside the quotient's ambient subspace");
  return Vector(c->begin() + sub_dim_, c->end());
}

Vector QuotientCoords::lift(const Vector& coords) const {
  if (coords.size() != complement_.dimension()) throw InputError("quotient coordinate length mismatch");
  Vector v = zero_vector(complement_.field(), complement_.ambient_dim());
  for (std::size_t i = 0; i < coords.size(); ++i) axpy(v, coords[i], complement_.basis()[i]);
  return v;
}

QuotientCoords quotient_coords(const Subspace& a, const Subspace& b) { return QuotientCoords(a, b); }

std::optional<Vector> affine_solve(const std::vector<Vector>& columns, const Subspace& target,
                                   const Vector& offset) {
  const std::size_t d = target.ambient_dim();
  const FieldSpec f = target.field();
  check_len(offset, d);
  // Reduction modulo the echelon basis is linear with kernel exactly `target`.
  std::vector<Vector> red_cols;
  red_cols.reserve(columns.size());
  for (const auto& c : columns) red_cols.push_back(target.reduce(c));
  Vector rhs = target.reduce(offset);
  for (auto& s : rhs) s = -s;
  Matrix a(d, zero_vector(f, columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < d; ++i) a[i][j] = red_cols[j][i];
  return solve(a, columns.size(), rhs, f);
}

}  // namespace utgrad
