#pragma once

// Period matrices. Row k of Omega is the image of the k-th lattice basis
// vector, so the projection Lambda (x) R -> C^n is v -> Omega^T v and the
// induced complex structure satisfies Omega^T J = i Omega^T.

#include "crystorb/hodge/gaussian.hpp"
#include "crystorb/groupcore/matrix_group.hpp"

namespace crystorb {

/// det(Omega | conj Omega) vanishes: V + conj V is not the whole space.
class DegenerateOmega : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void check_omega_shape(const GaussMatrix& omega) {
  if (omega.rows() == 0 || omega.rows() != 2 * omega.cols())
    throw InvalidArgument("period matrix must have shape 2n x n");
}

/// (Omega | conj Omega)
inline GaussMatrix omega_block(const GaussMatrix& omega) {
  const std::size_t n = omega.cols();
  GaussMatrix M(2 * n, 2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      M(i, j) = omega(i, j);
      M(i, n + j) = omega(i, j).conj();
    }
  return M;
}

inline GaussianRational i_power(std::size_t n) {
  switch (n % 4) {
    case 0: return {Rational(1), Rational(0)};
    case 1: return {Rational(0), Rational(1)};
    case 2: return {Rational(-1), Rational(0)};
    default: return {Rational(0), Rational(-1)};
  }
}

}  // namespace detail

/// i^(n^2) det(Omega | conj Omega), always a real number. For n = 1 this is
/// i det(Omega | conj Omega); the exponent n^2 makes the value multiplicative
/// under block-diagonal sums.
inline Rational omega_orientation_value(const GaussMatrix& omega) {
  detail::check_omega_shape(omega);
  const std::size_t n = omega.cols();
  GaussianRational v =
      detail::i_power(n * n) * determinant_field(detail::omega_block(omega));
  if (!v.is_real()) throw Error("orientation value is not real");
  return v.re;
}

/// Membership in the Teichmueller space: i^(n^2) det(Omega | conj Omega) > 0.
inline bool omega_in_T(const GaussMatrix& omega) {
  const Rational v = omega_orientation_value(omega);
  if (v == 0) throw DegenerateOmega("det(Omega | conj Omega) = 0");
  return v > 0;
}

struct TorusModel {
  GaussMatrix omega;
  GaussMatrix projection;  ///< n x 2n, v -> projection * v
  RatMatrix J;             ///< multiplication by i pulled back to Lambda (x) R
  bool in_T = false;       ///< orientation test of omega_in_T
};

/// The complex torus C^n / Omega^T Z^{2n} with its complex structure on Lambda (x) R.
inline TorusModel torus_from_omega(const GaussMatrix& omega) {
  const bool in_T = omega_in_T(omega);
  const std::size_t n = omega.cols();
  const GaussMatrix M = detail::omega_block(omega);
  GaussMatrix D(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    D(k, k) = GaussianRational::i();
    D(n + k, n + k) = -GaussianRational::i();
  }
  const GaussMatrix Mt = M.transpose();
  const GaussMatrix Jc = inverse(Mt) * D * Mt;
  RatMatrix J(2 * n, 2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) {
      if (!Jc(i, j).is_real()) throw Error("induced complex structure is not real");
      J(i, j) = Jc(i, j).re;
    }
  return {omega, omega.transpose(), std::move(J), in_T};
}

/// Action of a lattice automorphism on period matrices: Omega -> L^T Omega.
/// Fixed column spans are exactly the periods whose J commutes with L.
inline GaussMatrix right_action(const GaussMatrix& omega, const IntMatrix& L) {
  detail::check_omega_shape(omega);
  if (L.rows() != omega.rows() || !L.is_square())
    throw InvalidArgument("lattice map and period matrix sizes differ");
  return to_gaussian(L.transpose()) * omega;
}

inline bool same_column_span(const GaussMatrix& a, const GaussMatrix& b) {
  if (a.rows() != b.rows()) return false;
  GaussMatrix ab(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) ab(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) ab(i, a.cols() + j) = b(i, j);
  }
  const auto r = rank(ab);
  return r == rank(a) && r == rank(b);
}

/// Whether the column span of omega is fixed by every element of G.
inline bool is_invariant_omega(const MatrixGroup& G, const GaussMatrix& omega) {
  for (const auto& g : G.elements())
    if (!same_column_span(omega, right_action(omega, g))) return false;
  return true;
}

}  // namespace crystorb
