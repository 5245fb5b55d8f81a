#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace utgrad {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// The base field: a prime field F_p with a machine-word modulus, or Q.
class FieldSpec {
 public:
  enum class Kind { prime, rational };

  static FieldSpec prime(std::uint32_t p);
  static FieldSpec rational() { return FieldSpec(Kind::rational, 0); }

  Kind kind() const { return kind_; }
  bool is_prime() const { return kind_ == Kind::prime; }
  bool is_finite() const { return is_prime(); }
  std::uint32_t modulus() const { return p_; }
  std::uint32_t characteristic() const { return p_; }

  /// "F3", "Q".
  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(Kind kind, std::uint32_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint32_t p_;
};

bool is_prime_number(std::uint64_t n);

/// An exact element of a FieldSpec. Residues are kept in [0, p); rationals
/// are kept reduced with positive denominator.
class Scalar {
 public:
  static Scalar zero(FieldSpec f);
  static Scalar one(FieldSpec f);
  static Scalar from_int(FieldSpec f, std::int64_t v);
  static Scalar from_rational(FieldSpec f, const Rational& q);

  /// Parses "a" or "a/b" (decimal, optional sign).
  static Scalar parse(FieldSpec f, const std::string& text);

  FieldSpec field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Residue for prime fields.
  std::uint32_t residue() const { return std::get<std::uint32_t>(value_); }
  const Rational& rational() const { return std::get<Rational>(value_); }

  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Canonical decimal form: residue, or "a/b" reduced ("a" when integral).
  std::string to_string() const;

 private:
  Scalar(FieldSpec f, std::uint32_t r) : field_(f), value_(r) {}
  Scalar(FieldSpec f, Rational q) : field_(f), value_(std::move(q)) {}

  void check_same_field(const Scalar& o) const;

  FieldSpec field_;
  std::variant<std::uint32_t, Rational> value_;
};

using Vector = std::vector<Scalar>;

Vector zero_vector(FieldSpec f, std::size_t dim);
bool is_zero_vector(const Vector& v);
/// y += c * x
void axpy(Vector& y, const Scalar& c, const Vector& x);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Scalar& c, const Vector& v);

}  // namespace utgrad
