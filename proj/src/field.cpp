#include "utgrad/field.hpp"

#include <cctype>

#include "utgrad/error.hpp"

namespace utgrad {

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime_number(p))
    throw InputError("field modulus must be a prime below 2^31, got " + std::to_string(p));
  return FieldSpec(Kind::prime, p);
}

std::string FieldSpec::name() const {
  return is_prime() ? "F" + std::to_string(p_) : "Q";
}

Scalar Scalar::zero(FieldSpec f) { return from_int(f, 0); }
Scalar Scalar::one(FieldSpec f) { return from_int(f, 1); }

Scalar Scalar::from_int(FieldSpec f, std::int64_t v) {
  if (f.is_prime()) {
    std::int64_t p = f.modulus();
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return Scalar(f, static_cast<std::uint32_t>(r));
  }
  return Scalar(f, Rational(v));
}

Scalar Scalar::from_rational(FieldSpec f, const Rational& q) {
  if (!f.is_prime()) return Scalar(f, q);
  const Integer p = f.modulus();
  Integer num = boost::multiprecision::numerator(q) % p;
  Integer den = boost::multiprecision::denominator(q) % p;
  if (den == 0) throw DivisionByZero("denominator divisible by the characteristic");
  if (num < 0) num += p;
  auto a = Scalar(f, static_cast<std::uint32_t>(num.convert_to<std::uint64_t>()));
  auto b = Scalar(f, static_cast<std::uint32_t>(den.convert_to<std::uint64_t>()));
  return a / b;
}

Scalar Scalar::parse(FieldSpec f, const std::string& text) {
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw InputError("malformed scalar '" + text + "'");
  Integer n(num[0] == '+' ? num.substr(1) : num);
  Integer d(den);
  if (d == 0) throw InputError("zero denominator in scalar '" + text + "'");
  return from_rational(f, Rational(n, d));
}

bool Scalar::is_zero() const {
  if (field_.is_prime()) return residue() == 0;
  return rational() == 0;
}

bool Scalar::is_one() const {
  if (field_.is_prime()) return residue() == 1;
  return rational() == 1;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (field_ != o.field_)
    throw MismatchError("scalars from different fields: " + field_.name() + " vs " + o.field_.name());
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (!field_.is_prime()) return Scalar(field_, Rational(1) / rational());
  // Fermat: a^(p-2)
  std::uint64_t p = field_.modulus(), base = residue(), acc = 1;
  for (std::uint64_t e = p - 2; e; e >>= 1) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
  }
  return Scalar(field_, static_cast<std::uint32_t>(acc));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime()) {
    std::uint64_t s = std::uint64_t(residue()) + o.residue();
    if (s >= field_.modulus()) s -= field_.modulus();
    value_ = static_cast<std::uint32_t>(s);
  } else {
    std::get<Rational>(value_) += o.rational();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime()) {
    std::uint64_t s = std::uint64_t(residue()) + field_.modulus() - o.residue();
    if (s >= field_.modulus()) s -= field_.modulus();
    value_ = static_cast<std::uint32_t>(s);
  } else {
    std::get<Rational>(value_) -= o.rational();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime())
    value_ = static_cast<std::uint32_t>(std::uint64_t(residue()) * o.residue() % field_.modulus());
  else
    std::get<Rational>(value_) *= o.rational();
  return *this;
}

Scalar Scalar::operator-() const {
  if (field_.is_prime())
    return Scalar(field_, residue() == 0 ? 0u : field_.modulus() - residue());
  return Scalar(field_, Rational(-rational()));
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.field_ == b.field_ && a.value_ == b.value_;
}

std::string Scalar::to_string() const {
  if (field_.is_prime()) return std::to_string(residue());
  const Rational& q = rational();
  if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

Vector zero_vector(FieldSpec f, std::size_t dim) { return Vector(dim, Scalar::zero(f)); }

bool is_zero_vector(const Vector& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

void axpy(Vector& y, const Scalar& c, const Vector& x) {
  if (y.size() != x.size()) throw InputError("vector length mismatch");
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i] += c * x[i];
}

Vector operator+(const Vector& a, const Vector& b) {
  Vector r = a;
  if (r.size() != b.size()) throw InputError("vector length mismatch");
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vector operator-(const Vector& a, const Vector& b) {
  Vector r = a;
  if (r.size() != b.size()) throw InputError("vector length mismatch");
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vector operator*(const Scalar& c, const Vector& v) {
  Vector r = v;
  for (auto& s : r) s *= c;
  return r;
}

}  // namespace utgrad
