#pragma once

#include "crystorb/exactla/linear_algebra.hpp"
#include "crystorb/exactla/normal_form.hpp"

#include <algorithm>

namespace crystorb {

/// Solutions of A v = b (mod Z^m) for v in R^r / Z^r.
///
/// The solution set is a finite union of translates of a subtorus. In the
/// coordinates w = V^{-1} v given by a Smith decomposition U A V = D, the
/// coordinates with d_i = 0 are free and the others take finitely many values.
struct SolutionSet {
  enum class Kind { empty, finite, family };

  Kind kind = Kind::empty;
  std::size_t ambient = 0;      ///< r
  std::size_t dimension = 0;    ///< real dimension of every component
  std::vector<RatVector> points;  ///< all solutions (finite) or one base point per component (family)
  std::vector<IntVector> directions;  ///< Z-basis of the integral kernel of A

  IntMatrix to_smith_coordinates;         ///< V^{-1}
  std::vector<std::size_t> free_coordinates;  ///< indices i with d_i = 0

  bool empty() const { return kind == Kind::empty; }
  /// Number of solutions (finite) or of connected components (family).
  std::size_t component_count() const { return points.size(); }

  /// True when p and q lie on the same component: p - q is in span_R(directions) + Z^r.
  bool same_component(const RatVector& p, const RatVector& q) const {
    RatVector w = to_rational(to_smith_coordinates) * (p - q);
    std::vector<bool> is_free(ambient, false);
    for (auto i : free_coordinates) is_free[i] = true;
    for (std::size_t i = 0; i < ambient; ++i)
      if (!is_free[i] && !is_integral(w[i])) return false;
    return true;
  }

  /// Index of the component through p (p must be a solution), or npos.
  std::size_t component_of(const RatVector& p) const {
    for (std::size_t k = 0; k < points.size(); ++k)
      if (kind == Kind::finite ? congruent_mod_one(points[k], p)
                               : same_component(points[k], p))
        return k;
    return static_cast<std::size_t>(-1);
  }
};

namespace detail {

inline void sort_unique_points(std::vector<RatVector>& pts) {
  for (auto& p : pts) p = frac(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

}  // namespace detail

/// Solves A v = b (mod Z^m) for integer A of shape m x r.
inline SolutionSet solve_congruence(const IntMatrix& A, const RatVector& b) {
  if (A.rows() != b.size())
    throw InvalidArgument("solve_congruence: right-hand side length mismatch");
  const std::size_t m = A.rows(), r = A.cols();
  SolutionSet out;
  out.ambient = r;
  if (r == 0) {
    if (!is_integral(b)) return out;
    out.kind = SolutionSet::Kind::finite;
    out.points.push_back({});
    return out;
  }

  const SmithDecomposition s = snf(A);
  const RatVector c = to_rational(s.U) * b;
  const auto d = s.diagonal();

  std::vector<Integer> fixed_counts(r, 1);  // choices per w-coordinate
  for (std::size_t i = 0; i < m; ++i) {
    const bool zero_row = i >= d.size() || d[i] == 0;
    if (zero_row && !is_integral(c[i])) return out;  // 0 = c_i has no solution
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (i < d.size() && d[i] != 0) {
      fixed_counts[i] = d[i];
    } else {
      out.free_coordinates.push_back(i);
    }
  }
  out.dimension = out.free_coordinates.size();
  out.kind = out.dimension == 0 ? SolutionSet::Kind::finite
                                : SolutionSet::Kind::family;
  out.to_smith_coordinates = to_integer(inverse(to_rational(s.V)));
  for (auto i : out.free_coordinates) out.directions.push_back(s.V.column_vector(i));

  // enumerate w_i = (c_i + k) / d_i, k = 0..d_i-1, free coordinates at 0
  std::vector<Integer> counter(r, 0);
  const RatMatrix Vq = to_rational(s.V);
  for (;;) {
    RatVector w(r, Rational(0));
    for (std::size_t i = 0; i < r; ++i)
      if (i < d.size() && d[i] != 0)
        w[i] = (c[i] + Rational(counter[i])) / Rational(d[i]);
    out.points.push_back(frac(Vq * w));
    std::size_t k = 0;
    while (k < r) {
      if (++counter[k] < fixed_counts[k]) break;
      counter[k] = 0;
      ++k;
    }
    if (k == r) break;
  }
  detail::sort_unique_points(out.points);
  return out;
}

/// Solutions of A v = b (mod Z^r) on the torus R^r / Z^r, A square and integral.
inline SolutionSet solve_mod_lattice(const IntMatrix& A, const RatVector& b) {
  if (!A.is_square())
    throw InvalidArgument("solve_mod_lattice: matrix must be square");
  if (A.rows() != b.size())
    throw InvalidArgument("solve_mod_lattice: vector length mismatch");
  return solve_congruence(A, b);
}

/// Rational overload; the entries of A must be integers.
inline SolutionSet solve_mod_lattice(const RatMatrix& A, const RatVector& b) {
  if (!A.is_square())
    throw InvalidArgument("solve_mod_lattice: matrix must be square");
  if (!is_integral(A))
    throw InvalidArgument(
        "solve_mod_lattice: matrix entries must be integers on the lattice");
  return solve_mod_lattice(to_integer(A), b);
}

}  // namespace crystorb
