#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace covgamma {

// Exact arbitrary-precision rational. GMP keeps values canonical
// (denominator > 0, gcd(|num|, den) = 1) through all arithmetic; the
// parser below goes through the two-integer constructor for the same
// guarantee. No floating point is used anywhere in the geometry.
using Integer  = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Serialized form is "p/q" with q > 0, or just "p" when q == 1.
std::string to_string(const Rational& r);

// Parses "p" or "p/q". Rejects q <= 0, empty fields, and any other
// malformed input. Whitespace is not accepted.
std::optional<Rational> parse_rational(const std::string& text);

// Throwing variant for contexts where malformed input is a logic error.
Rational parse_rational_or_throw(const std::string& text);

inline int sign(const Rational& r) { return r.sign(); }

// Exact trichotomy; thin wrapper so call sites read as an operation.
inline std::strong_ordering rational_cmp(const Rational& a, const Rational& b) {
  const int c = a.compare(b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// Dense vector of rationals; dimension is the geometric ambient dimension
// (3 for the cross-polytope, 2 for triangle gauges).
using RVec = std::vector<Rational>;

Rational dot(const RVec& a, const RVec& b);
RVec add(const RVec& a, const RVec& b);
RVec sub(const RVec& a, const RVec& b);
RVec scale(const Rational& s, const RVec& a);
RVec negate(const RVec& a);
bool is_zero(const RVec& a);

std::string to_string(const RVec& v);

// Convenience 3D point in exact coordinates.
struct Vec3 {
  Rational x1, x2, x3;

  Vec3() : x1(0), x2(0), x3(0) {}
  Vec3(Rational a, Rational b, Rational c)
      : x1(std::move(a)), x2(std::move(b)), x3(std::move(c)) {}

  RVec to_rvec() const { return {x1, x2, x3}; }
  static Vec3 from_rvec(const RVec& v);

  bool operator==(const Vec3& o) const = default;
};

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(const Rational& s, const Vec3& a);
Vec3 operator-(const Vec3& a);

// l1 norm: the gauge of the unit cross-polytope.
Rational l1_norm(const RVec& v);
Rational l1_norm(const Vec3& v);

std::string to_string(const Vec3& v);

}  // namespace covgamma
