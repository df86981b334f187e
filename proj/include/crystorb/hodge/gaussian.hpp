#pragma once

#include "crystorb/exactla/linear_algebra.hpp"

#include <complex>
#include <ostream>

namespace crystorb {

/// Exact element of Q(i).
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(int x) : re(x) {}  // NOLINT: integer literals in generic code
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  GaussianRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }
  bool is_real() const { return im == 0; }
  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    const Rational n = o.norm();
    if (n == 0) throw InvalidArgument("division by zero in Q(i)");
    *this *= o.conj();
    re /= n;
    im /= n;
    return *this;
  }
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  bool operator==(const GaussianRational&) const = default;

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    return os << to_string(z.re) << (z.im < 0 ? "-" : "+") << to_string(abs(z.im)) << "i";
  }
};

using GaussMatrix = Matrix<GaussianRational>;

inline GaussMatrix to_gaussian(const RatMatrix& m) {
  GaussMatrix g(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g(i, j) = m(i, j);
  return g;
}
inline GaussMatrix to_gaussian(const IntMatrix& m) { return to_gaussian(to_rational(m)); }

inline GaussMatrix conj(const GaussMatrix& m) {
  GaussMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j).conj();
  return c;
}

}  // namespace crystorb
