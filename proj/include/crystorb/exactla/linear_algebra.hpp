#pragma once

#include "crystorb/exactla/matrix.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <type_traits>

namespace crystorb {

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Pivoting policy for Gaussian elimination. Exact fields take the first
/// nonzero entry; floating types take the largest magnitude.
template <class T>
struct FieldTraits {
  static constexpr bool exact = true;
  static bool is_zero(const T& x) { return x == T(0); }
  static T magnitude(const T& x) { return x < T(0) ? T(-x) : x; }
};

template <>
struct FieldTraits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x) { return x == 0.0; }
  static double magnitude(double x) { return std::abs(x); }
};

template <>
struct FieldTraits<Real128> {
  static constexpr bool exact = false;
  static bool is_zero(const Real128& x) { return x == 0; }
  static Real128 magnitude(const Real128& x) { return abs(x); }
};

template <>
struct FieldTraits<std::complex<double>> {
  static constexpr bool exact = false;
  static bool is_zero(const std::complex<double>& x) {
    return x == std::complex<double>(0.0, 0.0);
  }
  static double magnitude(const std::complex<double>& x) { return std::abs(x); }
};

template <class T>
struct Echelon {
  Matrix<T> R;                      ///< reduced row echelon form
  std::vector<std::size_t> pivots;  ///< pivot column per nonzero row
};

template <class T>
Echelon<T> rref(Matrix<T> M) {
  using Tr = FieldTraits<T>;
  Echelon<T> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
    std::optional<std::size_t> piv;
    for (std::size_t i = r; i < M.rows(); ++i) {
      if (Tr::is_zero(M(i, c))) continue;
      if constexpr (Tr::exact) {
        piv = i;
        break;
      } else {
        if (!piv || Tr::magnitude(M(i, c)) > Tr::magnitude(M(*piv, c)))
          piv = i;
      }
    }
    if (!piv) continue;
    M.swap_rows(r, *piv);
    const T inv = T(1) / M(r, c);
    for (std::size_t j = 0; j < M.cols(); ++j) M(r, j) *= inv;
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i == r || Tr::is_zero(M(i, c))) continue;
      const T f = M(i, c);
      for (std::size_t j = 0; j < M.cols(); ++j) M(i, j) -= f * M(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.R = std::move(M);
  return out;
}

template <class T>
std::size_t rank(const Matrix<T>& M) {
  return rref(M).pivots.size();
}

/// Basis of {v : M v = 0}; one vector per free column, with a 1 in that slot.
template <class T>
std::vector<std::vector<T>> kernel(const Matrix<T>& M) {
  auto e = rref(M);
  std::vector<bool> is_pivot(M.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < M.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(M.cols(), T(0));
    v[f] = T(1);
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.R(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Rational kernel basis.
inline std::vector<RatVector> kernel_q(const RatMatrix& A) { return kernel(A); }

template <class T>
Matrix<T> inverse(const Matrix<T>& A) {
  if (!A.is_square()) throw InvalidArgument("inverse of non-square matrix");
  const std::size_t n = A.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
    aug(i, n + i) = T(1);
  }
  auto e = rref(aug);
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
    throw SingularMatrix("matrix is singular");
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.R(i, n + j);
  return inv;
}

template <class T>
T determinant_field(Matrix<T> M) {
  using Tr = FieldTraits<T>;
  if (!M.is_square()) throw InvalidArgument("determinant of non-square matrix");
  T det(1);
  const std::size_t n = M.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::optional<std::size_t> piv;
    for (std::size_t i = c; i < n; ++i) {
      if (Tr::is_zero(M(i, c))) continue;
      if constexpr (Tr::exact) {
        piv = i;
        break;
      } else {
        if (!piv || Tr::magnitude(M(i, c)) > Tr::magnitude(M(*piv, c)))
          piv = i;
      }
    }
    if (!piv) return T(0);
    if (*piv != c) {
      M.swap_rows(c, *piv);
      det = -det;
    }
    det *= M(c, c);
    const T inv = T(1) / M(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (Tr::is_zero(M(i, c))) continue;
      const T f = M(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) M(i, j) -= f * M(c, j);
    }
  }
  return det;
}

/// Some solution of A x = b, or nullopt when inconsistent.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& A,
                                    const std::vector<T>& b) {
  if (A.rows() != b.size()) throw InvalidArgument("solve: shape mismatch");
  Matrix<T> aug(A.rows(), A.cols() + 1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
    aug(i, A.cols()) = b[i];
  }
  auto e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == A.cols()) return std::nullopt;
  std::vector<T> x(A.cols(), T(0));
  for (std::size_t k = 0; k < e.pivots.size(); ++k)
    x[e.pivots[k]] = e.R(k, A.cols());
  return x;
}

/// Stacks matrices with equal column counts vertically.
template <class T>
Matrix<T> vstack(const std::vector<Matrix<T>>& blocks) {
  if (blocks.empty()) return {};
  std::size_t rows = 0;
  const std::size_t cols = blocks.front().cols();
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw InvalidArgument("vstack: column mismatch");
    rows += b.rows();
  }
  Matrix<T> out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) out(r0 + i, j) = b(i, j);
    r0 += b.rows();
  }
  return out;
}

/// Matrix whose columns are the given vectors.
template <class T>
Matrix<T> from_columns(const std::vector<std::vector<T>>& cols,
                       std::size_t rows) {
  Matrix<T> out(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw InvalidArgument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = cols[j][i];
  }
  return out;
}

}  // namespace crystorb
