#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "utgrad/linalg.hpp"

namespace utgrad {

/// Number of upper triangular coordinates, n(n+1)/2.
inline std::size_t ut_dim(int n) { return static_cast<std::size_t>(n) * (n + 1) / 2; }

/// Row-major position of entry (i, j), 0-based, i <= j.
inline std::size_t ut_index(int n, int i, int j) {
  return static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i);
}

/// An n x n upper triangular matrix, stored as its n(n+1)/2 coordinates.
/// Indices in this API are 0-based.
class UTMatrix {
 public:
  UTMatrix(FieldSpec f, int n, Vector coords);

  static UTMatrix zero(FieldSpec f, int n);
  static UTMatrix identity(FieldSpec f, int n);
  /// Matrix unit e_ij (0-based).
  static UTMatrix unit(FieldSpec f, int n, int i, int j);

  FieldSpec field() const { return field_; }
  int n() const { return n_; }
  const Vector& coords() const { return c_; }

  const Scalar& at(int i, int j) const { return c_[ut_index(n_, i, j)]; }
  void set(int i, int j, const Scalar& s) { c_[ut_index(n_, i, j)] = s; }

  bool is_zero() const { return is_zero_vector(c_); }
  bool is_diagonal() const;
  /// Diagonal part as a matrix.
  UTMatrix diagonal() const;
  bool has_scalar_diagonal() const;

  UTMatrix& operator+=(const UTMatrix& o);
  UTMatrix& operator-=(const UTMatrix& o);
  friend UTMatrix operator+(UTMatrix a, const UTMatrix& b) { return a += b; }
  friend UTMatrix operator-(UTMatrix a, const UTMatrix& b) { return a -= b; }
  friend UTMatrix operator*(const Scalar& s, const UTMatrix& a);
  UTMatrix operator-() const;

  /// Associative product.
  friend UTMatrix operator*(const UTMatrix& a, const UTMatrix& b);
  /// Inverse of an invertible matrix (all diagonal entries nonzero).
  UTMatrix inverse() const;
  bool is_invertible() const;

  friend bool operator==(const UTMatrix& a, const UTMatrix& b) = default;

  std::string to_string() const;

 private:
  void check_compatible(const UTMatrix& o) const;

  FieldSpec field_;
  int n_;
  Vector c_;
};

UTMatrix bracket(const UTMatrix& a, const UTMatrix& b);
/// [[...[a1, a2], ...], am]
UTMatrix left_normed(const std::vector<UTMatrix>& list);
/// Anti-diagonal reflection e_ij -> e_{n-1-j, n-1-i}.
UTMatrix tau(const UTMatrix& x);

/// The structure map on coordinates: bracket of coordinate vectors.
Vector bracket_coords(FieldSpec f, int n, const Vector& a, const Vector& b);

/// J^m: span of e_ij with j - i >= m (m >= 1).
Subspace derived_power(FieldSpec f, int n, int m);
/// Span of the identity matrix.
Subspace center(FieldSpec f, int n);
/// Span of the given matrices.
Subspace span_of(FieldSpec f, int n, const std::vector<UTMatrix>& ms);

/// {x in within : [x, s] in modulo for every s in S}.
Subspace centralizer(const Subspace& s, const Subspace& within, int n, const Subspace* modulo = nullptr);

/// An automorphism of UT_n^(-) in the normal form phi_a . conj_P . omega^e.
/// apply(x) = phi_a(P omega^e(x) P^-1), with phi_a(x) = x + (sum a_i x_ii) I
/// and omega(x) = -tau(x). P is normalized to P_00 = 1.
class Automorphism {
 public:
  Automorphism(UTMatrix p, Vector a, bool use_omega);

  static Automorphism identity(FieldSpec f, int n);
  static Automorphism inner(const UTMatrix& p);
  static Automorphism central(FieldSpec f, int n, Vector a);
  static Automorphism omega(FieldSpec f, int n);

  int n() const { return p_.n(); }
  FieldSpec field() const { return p_.field(); }
  const UTMatrix& conjugator() const { return p_; }
  const Vector& central_part() const { return a_; }
  bool uses_omega() const { return omega_; }

  UTMatrix apply(const UTMatrix& x) const;
  Vector apply_coords(const Vector& x) const;

  /// this . other
  Automorphism compose(const Automorphism& other) const;
  Automorphism inverse() const;

  friend bool operator==(const Automorphism& a, const Automorphism& b);

  std::string to_string() const;

 private:
  UTMatrix p_;
  UTMatrix p_inv_;
  Vector a_;
  bool omega_;
};

/// Exact size of Aut(UT_n^(-)) over a finite prime field.
std::uint64_t automorphism_count(int n, FieldSpec f);

/// Streams every automorphism once. The callback returns false to stop early.
/// Throws BudgetExceeded when the group is larger than `budget`.
void for_each_automorphism(int n, FieldSpec f, const std::function<bool(const Automorphism&)>& fn,
                           std::uint64_t budget = 10'000'000);

/// A random automorphism. Over Q the entries are small integers.
Automorphism random_automorphism(int n, FieldSpec f, std::mt19937_64& rng);
/// A random inner automorphism.
Automorphism random_inner(int n, FieldSpec f, std::mt19937_64& rng);

/// Random field element; over Q an integer in [-3, 3].
Scalar random_scalar(FieldSpec f, std::mt19937_64& rng);
UTMatrix random_matrix(FieldSpec f, int n, std::mt19937_64& rng);

}  // namespace utgrad
