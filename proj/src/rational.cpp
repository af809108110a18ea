#include "covgamma/rational.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace covgamma {

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;  // gmp prints "p/q", or "p" when q == 1
  return os.str();
}

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(text)) return std::nullopt;
    return Rational(Integer(text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den)) return std::nullopt;
  Integer q(den);
  if (q <= 0) return std::nullopt;
  // Two-integer constructor canonicalizes (the string constructor does not).
  return Rational(Integer(num), q);
}

Rational parse_rational_or_throw(const std::string& text) {
  auto r = parse_rational(text);
  if (!r) throw std::invalid_argument("malformed rational: '" + text + "'");
  return *r;
}

Rational dot(const RVec& a, const RVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RVec add(const RVec& a, const RVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
  RVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RVec sub(const RVec& a, const RVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
  RVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RVec scale(const Rational& s, const RVec& a) {
  RVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

RVec negate(const RVec& a) { return scale(Rational(-1), a); }

bool is_zero(const RVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

std::string to_string(const RVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

Vec3 Vec3::from_rvec(const RVec& v) {
  if (v.size() != 3) throw std::invalid_argument("Vec3::from_rvec: need dimension 3");
  return Vec3(v[0], v[1], v[2]);
}

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3}; }
Vec3 operator*(const Rational& s, const Vec3& a) { return {s * a.x1, s * a.x2, s * a.x3}; }
Vec3 operator-(const Vec3& a) { return {-a.x1, -a.x2, -a.x3}; }

Rational l1_norm(const RVec& v) {
  Rational s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

Rational l1_norm(const Vec3& v) { return abs(v.x1) + abs(v.x2) + abs(v.x3); }

std::string to_string(const Vec3& v) {
  return "(" + to_string(v.x1) + ", " + to_string(v.x2) + ", " + to_string(v.x3) + ")";
}

}  // namespace covgamma
