#pragma once

#include "crystorb/core/number.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

namespace crystorb {

/// Q(zeta_e) with the power basis 1, zeta, ..., zeta^{phi(e)-1}.
///
/// `reduction(k)` holds the coordinates of zeta^k for 0 <= k < e, computed by
/// reducing x^k modulo the cyclotomic polynomial Phi_e.
class CyclotomicField {
 public:
  explicit CyclotomicField(int order) : order_(order) {
    if (order < 1) throw InvalidArgument("cyclotomic order must be positive");
    phi_poly_ = cyclotomic_polynomial(order);
    degree_ = static_cast<int>(phi_poly_.size()) - 1;
    powers_.reserve(order);
    std::vector<Integer> cur(degree_, 0);
    cur[0] = 1;
    for (int k = 0; k < order; ++k) {
      powers_.push_back(cur);
      // multiply by x and reduce with the monic Phi_e
      Integer top = cur[degree_ - 1];
      for (int i = degree_ - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      if (top != 0)
        for (int i = 0; i < degree_; ++i) cur[i] -= top * phi_poly_[i];
    }
  }

  int order() const { return order_; }
  int degree() const { return degree_; }
  const std::vector<Integer>& power(int k) const {
    int m = ((k % order_) + order_) % order_;
    return powers_[m];
  }

  /// Integer coefficients of Phi_n, lowest degree first.
  static std::vector<Integer> cyclotomic_polynomial(int n) {
    // x^n - 1 divided by Phi_d for every proper divisor d
    std::vector<Integer> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      num = divide_exact(num, cyclotomic_polynomial(d));
    }
    return num;
  }

 private:
  static std::vector<Integer> divide_exact(std::vector<Integer> a,
                                           const std::vector<Integer>& b) {
    const std::size_t db = b.size() - 1;
    std::vector<Integer> q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
      Integer c = a[i];  // b is monic
      q[i - db] = c;
      if (c != 0)
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
  }

  int order_;
  int degree_ = 1;
  std::vector<Integer> phi_poly_;
  std::vector<std::vector<Integer>> powers_;
};

/// Element of Q(zeta_e), exact.
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(std::shared_ptr<const CyclotomicField> field, Rational value)
      : field_(std::move(field)), coeffs_(field_->degree(), Rational(0)) {
    coeffs_[0] = std::move(value);
  }

  static Cyclotomic root_of_unity(std::shared_ptr<const CyclotomicField> field,
                                  int k) {
    Cyclotomic z(field, Rational(0));
    const auto& p = field->power(k);
    for (int i = 0; i < field->degree(); ++i) z.coeffs_[i] = Rational(p[i]);
    return z;
  }

  const std::shared_ptr<const CyclotomicField>& field() const { return field_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return false;
    return true;
  }
  /// Valid only when is_rational().
  const Rational& rational_part() const { return coeffs_[0]; }

  Cyclotomic conj() const {
    Cyclotomic out(field_, Rational(0));
    for (int i = 0; i < field_->degree(); ++i) {
      if (coeffs_[i] == 0) continue;
      const auto& p = field_->power(-i);
      for (int j = 0; j < field_->degree(); ++j)
        if (p[j] != 0) out.coeffs_[j] += coeffs_[i] * Rational(p[j]);
    }
    return out;
  }

  std::complex<double> to_complex() const {
    const double angle = 2.0 * std::numbers::pi / field_->order();
    std::complex<double> z = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      z += static_cast<double>(coeffs_[i]) *
           std::polar(1.0, angle * static_cast<double>(i));
    return z;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  Cyclotomic& operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& s) { return a *= s; }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    const int deg = a.field_->degree();
    std::vector<Rational> prod(2 * deg, Rational(0));
    for (int i = 0; i < deg; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (int j = 0; j < deg; ++j)
        if (b.coeffs_[j] != 0) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    Cyclotomic out(a.field_, Rational(0));
    for (int k = 0; k < 2 * deg; ++k) {
      if (prod[k] == 0) continue;
      const auto& p = a.field_->power(k);
      for (int j = 0; j < deg; ++j)
        if (p[j] != 0) out.coeffs_[j] += prod[k] * Rational(p[j]);
    }
    return out;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Human-readable form in terms of z = exp(2 pi i / e), e.g. "1 - 2*z^3".
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      Rational c = coeffs_[i];
      bool neg = c < 0;
      if (neg) c = -c;
      if (!out.empty()) out += neg ? " - " : " + ";
      else if (neg) out += "-";
      std::string mono = i == 0 ? "" : (i == 1 ? "z" : "z^" + std::to_string(i));
      if (mono.empty()) out += to_string(c);
      else if (c == 1) out += mono;
      else out += to_string(c) + "*" + mono;
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::shared_ptr<const CyclotomicField> field_;
  std::vector<Rational> coeffs_;
};

}  // namespace crystorb
