#pragma once

// Hodge types of G-invariant complex structures and the components of the
// G-fixed locus in the Teichmueller space of 2n-dimensional real tori.
//
// A Hodge type records, for every complex irreducible chi, the multiplicity
// d_chi of chi in V^{1,0} = {v in Lambda (x) C : J v = i v}. Since
// V^{0,1} is the conjugate of V^{1,0}, d_chi + d_conj(chi) = m_chi.

#include "crystorb/hodge/complex_structure.hpp"
#include "crystorb/hodge/omega.hpp"

#include <Eigen/Dense>

#include <complex>

namespace crystorb {

struct HodgeSplit {
  std::size_t character = 0;
  std::string label;  ///< "chiK"
  IndicatorType type = IndicatorType::real;
  std::size_t degree = 0;
  std::size_t multiplicity = 0;  ///< m_chi in Lambda (x) C
  std::size_t d = 0;             ///< multiplicity in V^{1,0}
};

struct HodgeType {
  std::size_t n = 0;
  std::vector<HodgeSplit> splits;  ///< every character with m_chi > 0, by index

  /// Complex dimension of V^{1,0}; equals n for an admissible type.
  std::size_t total() const {
    std::size_t s = 0;
    for (const auto& x : splits) s += x.d * x.degree;
    return s;
  }
  std::string label() const {
    std::string s;
    for (const auto& x : splits) {
      if (!s.empty()) s += ",";
      s += x.label + ":" + std::to_string(x.d) + "/" + std::to_string(x.multiplicity);
    }
    return s;
  }
};

/// All admissible Hodge types. Real and quaternionic characters take d = m/2;
/// each conjugate pair of complex characters takes every split d + d' = m.
/// Both orientations are included; see SamplePoint::orientation.
inline std::vector<HodgeType> hodge_types(const MatrixGroup& G, const CharacterTable& T) {
  const EvenReport ev = is_even(G, T);
  if (!ev.even) throw InvalidArgument("hodge types need an even group");
  const auto& mult = ev.isotypic.multiplicities;
  HodgeType base;
  base.n = G.rank() / 2;
  std::vector<std::size_t> free_chars;  // first member of each complex pair
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (mult[i] == 0) continue;
    HodgeSplit s{i, "chi" + std::to_string(i + 1), T.type(i), T.degrees[i], mult[i], mult[i] / 2};
    if (s.type == IndicatorType::complex && T.conjugate_of[i] > i) free_chars.push_back(i);
    base.splits.push_back(std::move(s));
  }
  auto split_of = [](HodgeType& t, std::size_t chi) -> HodgeSplit& {
    for (auto& s : t.splits)
      if (s.character == chi) return s;
    throw Error("missing character in Hodge type");
  };
  std::vector<HodgeType> out;
  std::vector<std::size_t> choice(free_chars.size(), 0);
  for (;;) {
    HodgeType t = base;
    for (std::size_t k = 0; k < free_chars.size(); ++k) {
      const std::size_t chi = free_chars[k];
      auto& s = split_of(t, chi);
      s.d = choice[k];
      split_of(t, T.conjugate_of[chi]).d = s.multiplicity - choice[k];
    }
    if (t.total() != t.n) throw Error("Hodge type does not have dimension n");
    out.push_back(std::move(t));
    std::size_t k = 0;
    while (k < free_chars.size()) {
      if (++choice[k] <= mult[free_chars[k]]) break;
      choice[k] = 0;
      ++k;
    }
    if (k == free_chars.size()) return out;
  }
}

/// Complex dimension of the component of the fixed locus with this Hodge type:
/// the G-equivariant part of Hom(V^{1,0}, V^{0,1}), i.e. sum of d (m - d).
inline std::size_t component_dimension(const HodgeType& t) {
  std::size_t dim = 0;
  for (const auto& s : t.splits) dim += s.d * (s.multiplicity - s.d);
  return dim;
}

/// A numerical point of a Hodge-type component.
struct SamplePoint {
  Eigen::MatrixXcd basis10;  ///< 2n x n basis of V^{1,0}
  Eigen::MatrixXcd omega;    ///< 2n x n period matrix, Omega^T J = i Omega^T
  Eigen::MatrixXd J;
  double orientation = 0;  ///< i^(n^2) det(Omega | conj Omega), real part
  double conditioning = 0; ///< smallest / largest singular value of (B | conj B)
};

namespace detail {

inline Eigen::MatrixXcd to_eigen(const IntMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(m(i, j));
  return e;
}

/// Uniform double in [-1, 1) from the top 53 bits.
inline double unit_random(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

/// Bases (2n x deg each) of the m irreducible copies of chi that are the
/// eigenspaces of a random element C of the commutant.
inline std::vector<Eigen::MatrixXcd> irreducible_copies(const MatrixGroup& G,
                                                        const CharacterTable& T,
                                                        std::size_t chi, std::size_t m,
                                                        const Eigen::MatrixXcd& C) {
  const auto N = static_cast<Eigen::Index>(G.rank());
  const auto deg = static_cast<Eigen::Index>(T.degrees[chi]);
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(N, N);
  for (std::size_t g = 0; g < G.order(); ++g)
    P += std::conj(T.values[chi][T.class_of[g]].to_complex()) * to_eigen(G.element(g));
  P *= static_cast<double>(deg) / static_cast<double>(G.order());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(P, Eigen::ComputeFullU);
  const Eigen::Index k = static_cast<Eigen::Index>(m) * deg;
  const Eigen::MatrixXcd Q = svd.matrixU().leftCols(k);
  const Eigen::MatrixXcd Cr = Q.adjoint() * C * Q;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Cr, false);
  const Eigen::VectorXcd ev = es.eigenvalues();
  // cluster eigenvalues: each copy contributes deg equal eigenvalues
  double scale = 1.0;
  for (Eigen::Index i = 0; i < k; ++i) scale = std::max(scale, std::abs(ev(i)));
  const double tol = 1e-6 * scale;
  std::vector<bool> used(static_cast<std::size_t>(k), false);
  std::vector<Eigen::MatrixXcd> copies;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (used[static_cast<std::size_t>(i)]) continue;
    std::vector<Eigen::Index> members;
    for (Eigen::Index j = i; j < k; ++j)
      if (!used[static_cast<std::size_t>(j)] && std::abs(ev(j) - ev(i)) < tol) {
        used[static_cast<std::size_t>(j)] = true;
        members.push_back(j);
      }
    if (static_cast<Eigen::Index>(members.size()) != deg) return {};
    std::complex<double> lambda = 0;
    for (auto j : members) lambda += ev(j);
    lambda /= static_cast<double>(members.size());
    Eigen::MatrixXcd shifted = Cr - lambda * Eigen::MatrixXcd::Identity(k, k);
    Eigen::JacobiSVD<Eigen::MatrixXcd> s(shifted, Eigen::ComputeFullV);
    copies.push_back(Q * s.matrixV().rightCols(deg));
  }
  if (copies.size() != m) return {};
  return copies;
}

/// Subsets of size r of {0..m-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t m, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == r) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

/// A point of the component with Hodge type t, drawn from the seed. The
/// candidates are sums of irreducible copies cut out by a random element of the
/// commutant (and, for self-conjugate characters, their conjugates); the first
/// nondegenerate candidate with positive orientation is preferred.
inline SamplePoint sample_point(const MatrixGroup& G, const CharacterTable& T,
                                const HodgeType& t, std::uint64_t seed = 0) {
  const auto N = static_cast<Eigen::Index>(G.rank());
  const auto n = static_cast<Eigen::Index>(t.n);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 6; ++attempt) {
    Eigen::MatrixXcd X(N, N);
    for (Eigen::Index i = 0; i < N; ++i)
      for (Eigen::Index j = 0; j < N; ++j)
        X(i, j) = {detail::unit_random(rng), detail::unit_random(rng)};
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(N, N);
    for (std::size_t g = 0; g < G.order(); ++g)
      C += detail::to_eigen(G.element(g)) * X * detail::to_eigen(G.element(G.inverse(g)));
    C /= static_cast<double>(G.order());

    std::vector<std::vector<Eigen::MatrixXcd>> copies;
    std::vector<std::vector<std::vector<std::size_t>>> options;
    bool ok = true;
    for (const auto& s : t.splits) {
      copies.push_back(detail::irreducible_copies(G, T, s.character, s.multiplicity, C));
      if (copies.back().empty()) ok = false;
      std::size_t pool = s.multiplicity;
      if (s.type != IndicatorType::complex) {
        // conjugates of copies of a self-conjugate character are copies too
        for (std::size_t c = 0; c < s.multiplicity; ++c)
          copies.back().push_back(copies.back()[c].conjugate());
        pool *= 2;
      }
      options.push_back(detail::subsets(pool, s.d));
    }
    if (!ok) continue;

    std::optional<SamplePoint> fallback;
    std::vector<std::size_t> pick(t.splits.size(), 0);
    for (std::size_t tried = 0; tried < 512; ++tried) {
      Eigen::MatrixXcd B(N, n);
      Eigen::Index col = 0;
      for (std::size_t k = 0; k < t.splits.size(); ++k)
        for (auto c : options[k][pick[k]]) {
          const auto& blk = copies[k][c];
          B.middleCols(col, blk.cols()) = blk;
          col += blk.cols();
        }
      Eigen::MatrixXcd P(N, N);
      P << B, B.conjugate();
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(P);
      const auto sv = svd.singularValues();
      const double cond = sv(sv.size() - 1) / sv(0);
      if (cond > 1e-9) {
        SamplePoint sp;
        sp.basis10 = B;
        sp.conditioning = cond;
        Eigen::VectorXcd diag(N);
        for (Eigen::Index i = 0; i < N; ++i)
          diag(i) = i < n ? std::complex<double>(0, 1) : std::complex<double>(0, -1);
        const Eigen::MatrixXcd Pinv = P.inverse();
        sp.J = (P * diag.asDiagonal() * Pinv).real();
        sp.omega = Pinv.transpose().leftCols(n);
        Eigen::MatrixXcd M(N, N);
        M << sp.omega, sp.omega.conjugate();
        std::complex<double> v = M.determinant();
        for (Eigen::Index k = 0; k < (n * n) % 4; ++k) v *= std::complex<double>(0, 1);
        sp.orientation = v.real();
        if (sp.orientation > 0) return sp;
        if (!fallback) fallback = sp;
      }
      std::size_t k = 0;
      while (k < pick.size()) {
        if (++pick[k] < options[k].size()) break;
        pick[k] = 0;
        ++k;
      }
      if (k == pick.size()) break;
    }
    if (fallback) return *fallback;
  }
  throw NumericalFailure("could not sample a point of Hodge type " + t.label());
}

/// Numerical rank oracle: complex dimension of the space of G-equivariant maps
/// V^{1,0} -> V^{0,1} at a sample point, the tangent space of the component.
inline std::size_t tangent_space_dimension(const MatrixGroup& G, const SamplePoint& sp) {
  const Eigen::MatrixXcd& B = sp.basis10;
  const Eigen::Index n = B.cols();
  if (n == 0) return 0;
  const Eigen::MatrixXcd Bplus = B.completeOrthogonalDecomposition().pseudoInverse();
  const Eigen::MatrixXcd In = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd eqs(static_cast<Eigen::Index>(G.order()) * n * n, n * n);
  for (std::size_t g = 0; g < G.order(); ++g) {
    const Eigen::MatrixXcd A = Bplus * detail::to_eigen(G.element(g)) * B;
    // conj(A) Y - Y A = 0, vectorized column-major
    Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(n * n, n * n);
    for (Eigen::Index q = 0; q < n; ++q) {
      K.block(q * n, q * n, n, n) += A.conjugate();
      for (Eigen::Index p = 0; p < n; ++p) K.block(q * n, p * n, n, n) -= A(p, q) * In;
    }
    eqs.middleRows(static_cast<Eigen::Index>(g) * n * n, n * n) = K;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(eqs);
  const auto sv = svd.singularValues();
  const double tol = 1e-8 * std::max(1.0, sv(0));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  return static_cast<std::size_t>(n * n - rank);
}

}  // namespace crystorb
