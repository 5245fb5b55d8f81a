#pragma once

#include <optional>
#include <vector>

#include "utgrad/field.hpp"

namespace utgrad {

/// Dense matrix stored as a list of rows.
using Matrix = std::vector<Vector>;

/// Row-reduces `rows` in place to reduced echelon form, dropping zero rows.
/// Returns the pivot columns.
std::vector<std::size_t> rref(Matrix& rows, std::size_t width);

/// Solves A x = b (A given by rows, `cols` unknowns). Free variables are 0.
std::optional<Vector> solve(const Matrix& a, std::size_t cols, const Vector& b, FieldSpec f);

/// Basis of {x : A x = 0} as vectors of length `cols`.
Matrix kernel_basis(const Matrix& a, std::size_t cols, FieldSpec f);

/// A subspace of F^d held in reduced echelon form, so equality is structural.
class Subspace {
 public:
  static Subspace zero(FieldSpec f, std::size_t dim);
  static Subspace whole(FieldSpec f, std::size_t dim);
  static Subspace span(FieldSpec f, std::size_t dim, const std::vector<Vector>& vectors);

  FieldSpec field() const { return field_; }
  std::size_t ambient_dim() const { return dim_; }
  std::size_t dimension() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// v minus its echelon reduction against the basis; zero iff v is contained.
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  /// Coefficients of v in the echelon basis, or nullopt when v is not contained.
  std::optional<Vector> coordinates(const Vector& v) const;

  friend Subspace sum(const Subspace& a, const Subspace& b);
  friend Subspace intersect(const Subspace& a, const Subspace& b);

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  Subspace(FieldSpec f, std::size_t dim) : field_(f), dim_(dim) {}

  FieldSpec field_;
  std::size_t dim_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

/// C with A + C = B and A ∩ C = 0, built by extending A's basis with
/// vectors of B's basis. Requires A ⊆ B.
Subspace complement_within(const Subspace& a, const Subspace& b);

/// Expresses vectors in terms of a fixed list of independent vectors.
class Coordinatizer {
 public:
  Coordinatizer(FieldSpec f, std::size_t dim, const std::vector<Vector>& independent);

  std::size_t size() const { return count_; }
  /// Coefficients c with v = sum c_i b_i, or nullopt when v is outside the span.
  std::optional<Vector> coordinates(const Vector& v) const;

 private:
  FieldSpec field_;
  std::size_t dim_;
  std::size_t count_;
  Matrix rows_;       // echelon rows of the span
  Matrix transform_;  // rows_[k] = sum transform_[k][i] * b_i
  std::vector<std::size_t> pivots_;
};

/// Coordinate functional for B/A: v in B maps to its coordinates along a
/// fixed complement C of A in B.
class QuotientCoords {
 public:
  QuotientCoords(const Subspace& a, const Subspace& b);

  const Subspace& complement() const { return complement_; }
  std::size_t dimension() const { return complement_.dimension(); }
  /// Requires v in B.
  Vector operator()(const Vector& v) const;
  /// The representative in C with the given coordinates.
  Vector lift(const Vector& coords) const;

 private:
  Subspace complement_;
  std::size_t sub_dim_;
  Coordinatizer coords_;
};

QuotientCoords quotient_coords(const Subspace& a, const Subspace& b);

/// x with offset + L x in `target`, free variables set to 0, or nullopt.
/// L is given by its columns, each of the target's ambient dimension.
std::optional<Vector> affine_solve(const std::vector<Vector>& columns, const Subspace& target,
                                   const Vector& offset);

}  // namespace utgrad
