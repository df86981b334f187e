#pragma once

// Small named matrices and groups shared by the unit suites.

#include "crystorb/exactla.hpp"

#include <initializer_list>
#include <string>

namespace fixtures {

using namespace crystorb;

inline IntMatrix imat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Integer> data;
  std::size_t r = 0, c = 0;
  for (const auto& row : rows) {
    c = row.size();
    for (long x : row) data.emplace_back(x);
    ++r;
  }
  return IntMatrix(r, c, std::move(data));
}

inline RatVector rvec(std::initializer_list<const char*> xs) {
  RatVector v;
  for (const char* x : xs) v.push_back(parse_rational(x));
  return v;
}

inline IntMatrix diag(std::initializer_list<long> d) {
  IntMatrix m(d.size(), d.size());
  std::size_t i = 0;
  for (long x : d) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

/// Block-diagonal sum of square integer matrices.
inline IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

inline IntMatrix rot4() { return imat({{0, -1}, {1, 0}}); }
inline IntMatrix rot3() { return imat({{0, -1}, {1, -1}}); }
inline IntMatrix rot6() { return imat({{1, -1}, {1, 0}}); }
inline IntMatrix swap2() { return imat({{0, 1}, {1, 0}}); }
// simple reflections of the A2 root lattice; generate S3
inline IntMatrix a2_reflection1() { return imat({{-1, 1}, {0, 1}}); }
inline IntMatrix a2_reflection2() { return imat({{1, 0}, {1, -1}}); }

// left multiplication by i and j on the quaternion coordinates (1, i, j, k)
inline IntMatrix quaternion_i() {
  return imat({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
}
inline IntMatrix quaternion_j() {
  return imat({{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}});
}

}  // namespace fixtures
