#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace crystorb {

using Integer = boost::multiprecision::number<
    boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<
        boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// 128 binary digits of mantissa; used only by the approximate complex-structure path.
using Real128 = boost::multiprecision::number<
    boost::multiprecision::backends::cpp_bin_float<
        128, boost::multiprecision::backends::digit_base_2>,
    boost::multiprecision::et_off>;

using RatVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (shape mismatch, bad literal, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

inline Integer numerator(const Rational& q) {
  return boost::multiprecision::numerator(q);
}
inline Integer denominator(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

/// Largest integer <= q.
inline Integer floor(const Rational& q) {
  Integer n = numerator(q);
  Integer d = denominator(q);
  Integer f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

/// Representative of q modulo 1 in [0, 1).
inline Rational frac(const Rational& q) { return q - Rational(floor(q)); }

inline RatVector frac(const RatVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(frac(x));
  return out;
}

inline bool is_integral(const RatVector& v) {
  for (const auto& x : v)
    if (!is_integral(x)) return false;
  return true;
}

inline bool congruent_mod_one(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!is_integral(a[i] - b[i])) return false;
  return true;
}

inline Integer gcd(Integer a, Integer b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Integer t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  Integer g = gcd(a, b);
  Integer l = a / g * b;
  return l < 0 ? Integer(-l) : l;
}

/// Extended gcd: returns g = gcd(a,b) >= 0 and sets x, y with a*x + b*y = g.
inline Integer extended_gcd(const Integer& a, const Integer& b, Integer& x,
                            Integer& y) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

/// Parses "p", "-p", "p/q". Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> Integer {
    if (s.empty()) throw InvalidArgument("empty integer in rational literal");
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') i = 1;
    if (i == s.size())
      throw InvalidArgument("bad rational literal '" + std::string(text) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9')
        throw InvalidArgument("bad rational literal '" + std::string(text) +
                              "'");
    return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0)
    throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

inline std::string to_string(const Rational& q) {
  if (is_integral(q)) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

inline RatVector to_rational(const IntVector& v) {
  return RatVector(v.begin(), v.end());
}

inline Integer common_denominator(const RatVector& v) {
  Integer d = 1;
  for (const auto& x : v) d = lcm(d, denominator(x));
  return d;
}

}  // namespace crystorb
