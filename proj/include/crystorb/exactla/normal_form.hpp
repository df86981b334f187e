#pragma once

#include "crystorb/exactla/matrix.hpp"

#include <optional>
#include <utility>

namespace crystorb {

struct HermiteDecomposition {
  IntMatrix H;  ///< row Hermite normal form
  IntMatrix U;  ///< unimodular, U * A == H
  std::size_t rank = 0;
};

/// U * A * V == D, D diagonal with d_1 | d_2 | ... and all d_i >= 0.
struct SmithDecomposition {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
      d.push_back(D(i, i));
    return d;
  }
  std::size_t rank() const {
    std::size_t k = 0;
    for (const auto& x : diagonal())
      if (x != 0) ++k;
    return k;
  }
};

namespace detail {

// floor division for integers
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// Replace rows (p, i) by a unimodular combination that puts gcd(H(p,j), H(i,j))
// in row p and zero in row i.
inline void gcd_row_step(IntMatrix& H, IntMatrix& U, std::size_t p,
                         std::size_t i, std::size_t j) {
  const Integer a = H(p, j);
  const Integer b = H(i, j);
  if (b == 0) return;
  Integer x, y;
  Integer g = extended_gcd(a, b, x, y);
  const Integer ag = a / g, bg = b / g;
  auto combine = [&](IntMatrix& M) {
    for (std::size_t c = 0; c < M.cols(); ++c) {
      Integer rp = M(p, c), ri = M(i, c);
      M(p, c) = x * rp + y * ri;
      M(i, c) = -bg * rp + ag * ri;
    }
  };
  combine(H);
  combine(U);
}

}  // namespace detail

/// Row-style Hermite normal form: pivots positive, entries above a pivot
/// reduced into [0, pivot), zero rows at the bottom.
inline HermiteDecomposition hnf(const IntMatrix& A) {
  HermiteDecomposition out{A, IntMatrix::identity(A.rows()), 0};
  IntMatrix& H = out.H;
  IntMatrix& U = out.U;
  std::size_t p = 0;
  for (std::size_t j = 0; j < H.cols() && p < H.rows(); ++j) {
    std::optional<std::size_t> nz;
    for (std::size_t i = p; i < H.rows(); ++i)
      if (H(i, j) != 0) {
        nz = i;
        break;
      }
    if (!nz) continue;
    H.swap_rows(p, *nz);
    U.swap_rows(p, *nz);
    for (std::size_t i = p + 1; i < H.rows(); ++i)
      detail::gcd_row_step(H, U, p, i, j);
    if (H(p, j) < 0) {
      H.negate_row(p);
      U.negate_row(p);
    }
    for (std::size_t k = 0; k < p; ++k) {
      Integer q = detail::floor_div(H(k, j), H(p, j));
      if (q != 0) {
        H.add_row_multiple(k, p, -q);
        U.add_row_multiple(k, p, -q);
      }
    }
    ++p;
  }
  out.rank = p;
  return out;
}

inline SmithDecomposition snf(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  SmithDecomposition s{A, IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& D = s.D;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (D(i, j) != 0 &&
              (!best || abs(D(i, j)) < abs(D(best->first, best->second))))
            best = std::make_pair(i, j);
      if (!best) return s;
      D.swap_rows(t, best->first);
      s.U.swap_rows(t, best->first);
      D.swap_cols(t, best->second);
      s.V.swap_cols(t, best->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Integer q = detail::floor_div(D(i, t), D(t, t));
        D.add_row_multiple(i, t, -q);
        s.U.add_row_multiple(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Integer q = detail::floor_div(D(t, j), D(t, t));
        D.add_col_multiple(j, t, -q);
        s.V.add_col_multiple(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: pull a non-multiple into row t and go again
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            D.add_row_multiple(t, i, Integer(1));
            s.U.add_row_multiple(t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      s.U.negate_row(t);
    }
  }
  return s;
}

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(const IntMatrix& A) {
  if (!A.is_square()) throw InvalidArgument("determinant of non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  IntMatrix M = A;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && M(r, k) == 0) ++r;
      if (r == n) return 0;
      M.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

}  // namespace crystorb
