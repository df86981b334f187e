#pragma once

#include "crystorb/crystal/crystal.hpp"
#include "crystorb/groupcore/character_table.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace crystorb {

/// The approximate complex-structure path could not certify its residuals.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

using Real256 = boost::multiprecision::number<
    boost::multiprecision::backends::cpp_bin_float<
        256, boost::multiprecision::backends::digit_base_2>,
    boost::multiprecision::et_off>;

struct EvenReport {
  bool even = false;
  bool even_rank = false;
  IsotypicReport isotypic;
  /// Classes that rule out an invariant complex structure.
  std::vector<IsotypicClass> odd_classes() const {
    std::vector<IsotypicClass> out;
    for (const auto& c : isotypic.classes)
      if (!c.even) out.push_back(c);
    return out;
  }
};

/// Even rank and every real-irreducible class admits an invariant complex structure.
inline EvenReport is_even(const MatrixGroup& G, const CharacterTable& T) {
  EvenReport r;
  r.isotypic = real_isotypic_dimensions(G, T);
  r.even_rank = G.rank() % 2 == 0;
  r.even = r.even_rank && r.isotypic.all_even();
  return r;
}
inline EvenReport is_even(const MatrixGroup& G) { return is_even(G, character_table(G)); }
inline EvenReport is_even(const CrystGroup& gamma) { return is_even(gamma.group); }

struct ComplexStructure {
  enum class Mode { exact, approximate };

  Mode mode = Mode::exact;
  RatMatrix exact;             ///< filled in exact mode
  Matrix<Real128> approx;      ///< always filled
  Real128 square_residual{0};  ///< max |J^2 + I|
  Real128 commutator_residual{0};  ///< max over g of |J L(g) - L(g) J|
  Real128 tolerance{0};
  unsigned precision_bits = 0;     ///< working precision of the approximate path
  std::string method;

  std::size_t size() const { return approx.rows(); }
  bool is_exact() const { return mode == Mode::exact; }
};

struct ComplexStructureOptions {
  std::uint64_t seed = 0;
  unsigned precision_bits = 128;  ///< 128 or 256
  std::size_t retries = 8;
  double tolerance = 1e-30;
};

struct ComplexStructureResult {
  std::optional<ComplexStructure> J;
  EvenReport evenness;
};

namespace detail {

template <class Real>
Matrix<Real> to_real(const RatMatrix& m) {
  Matrix<Real> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(i, j) = Real(numerator(m(i, j))) / Real(denominator(m(i, j)));
  return r;
}

template <class Real>
Real max_abs(const Matrix<Real>& m) {
  Real best = 0;
  for (const auto& x : m.data()) best = std::max(best, Real(abs(x)));
  return best;
}

template <class Real>
std::pair<Real, Real> residuals(const Matrix<Real>& J, const MatrixGroup& G) {
  const auto I = Matrix<Real>::identity(J.rows());
  Real sq = max_abs(Matrix<Real>(J * J + I));
  Real comm = 0;
  for (const auto& g : G.elements()) {
    const auto L = Matrix<Real>::from(g);
    comm = std::max(comm, max_abs(Matrix<Real>(J * L - L * J)));
  }
  return {sq, comm};
}

/// X -> (X - X^{-1}) / 2 converges to the complex structure K (-K^2)^{-1/2}
/// whenever -X^2 is diagonalizable with positive eigenvalues.
template <class Real>
Matrix<Real> sign_iteration(Matrix<Real> X, const Real& target, std::size_t max_steps = 200) {
  const std::size_t N = X.rows();
  const auto I = Matrix<Real>::identity(N);
  for (std::size_t step = 0; step < max_steps; ++step) {
    Matrix<Real> inv;
    try {
      inv = inverse(X);
    } catch (const SingularMatrix&) {
      throw NumericalFailure("singular iterate in complex-structure iteration");
    }
    if (step < 8) {  // determinant scaling speeds up the first steps
      Real d = abs(determinant_field(X));
      if (d > 0) {
        Real mu = pow(d, Real(-1) / Real(N));
        X = X * mu;
        inv = inv * (Real(1) / mu);
      }
    }
    X = (X - inv) * (Real(1) / Real(2));
    if (max_abs(Matrix<Real>(X * X + I)) <= target) return X;
  }
  return X;
}

inline IntMatrix invariant_inner_product(const MatrixGroup& G) {
  IntMatrix B(G.rank(), G.rank());
  for (const auto& L : G.elements()) B = B + L.transpose() * L;
  return B;
}

inline RatMatrix average_form(const MatrixGroup& G, const RatMatrix& A0) {
  RatMatrix A(G.rank(), G.rank());
  for (const auto& L : G.elements()) {
    const auto Lq = to_rational(L);
    A = A + Lq.transpose() * A0 * Lq;
  }
  return A;
}

inline RatMatrix standard_structure(std::size_t r) {
  RatMatrix J(r, r);
  for (std::size_t k = 0; k + 1 < r; k += 2) {
    J(k, k + 1) = -1;
    J(k + 1, k) = 1;
  }
  return J;
}

inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const Integer a = numerator(q), b = denominator(q);
  const Integer sa = boost::multiprecision::sqrt(a), sb = boost::multiprecision::sqrt(b);
  if (sa * sa != a || sb * sb != b) return std::nullopt;
  return Rational(sa) / Rational(sb);
}

/// Exact J = K (-K^2)^{-1/2} when -K^2 has a minimal polynomial of degree at
/// most two whose roots are rational squares.
inline std::optional<RatMatrix> exact_polar(const RatMatrix& K) {
  const std::size_t N = K.rows();
  const RatMatrix S = -(K * K);
  const RatMatrix I = RatMatrix::identity(N);
  // degree one: S = c I
  bool scalar = true;
  for (std::size_t i = 0; i < N && scalar; ++i)
    for (std::size_t j = 0; j < N && scalar; ++j)
      if (S(i, j) != (i == j ? S(0, 0) : Rational(0))) scalar = false;
  if (scalar) {
    auto root = rational_sqrt(S(0, 0));
    if (!root || *root == 0) return std::nullopt;
    return K * (Rational(1) / *root);
  }
  // degree two: S^2 = p S + q I
  const RatMatrix S2 = S * S;
  RatMatrix sys(N * N, 2);
  RatVector rhs(N * N);
  for (std::size_t k = 0; k < N * N; ++k) {
    sys(k, 0) = S.data()[k];
    sys(k, 1) = I.data()[k];
    rhs[k] = S2.data()[k];
  }
  auto coeff = solve(sys, rhs);
  if (!coeff) return std::nullopt;
  const std::pair<Rational, Rational> pq{(*coeff)[0], (*coeff)[1]};
  const auto& [p, q] = pq;
  // roots of x^2 - p x - q
  auto disc = rational_sqrt(p * p + Rational(4) * q);
  if (!disc) return std::nullopt;
  const Rational l1 = (p + *disc) / 2, l2 = (p - *disc) / 2;
  auto s1 = rational_sqrt(l1), s2 = rational_sqrt(l2);
  if (!s1 || !s2 || *s1 == 0 || *s2 == 0 || l1 == l2) return std::nullopt;
  // f(S) with f(l) = l^{-1/2}, interpolated on the two eigenvalues
  const Rational f1 = Rational(1) / *s1, f2 = Rational(1) / *s2;
  const RatMatrix root_inv = (S - I * l2) * (f1 / (l1 - l2)) + (S - I * l1) * (f2 / (l2 - l1));
  return K * root_inv;
}

inline bool is_exact_invariant_structure(const RatMatrix& J, const MatrixGroup& G) {
  const RatMatrix I = RatMatrix::identity(J.rows());
  if (J * J + I != RatMatrix(J.rows(), J.cols())) return false;
  for (const auto& g : G.elements()) {
    const auto L = to_rational(g);
    if (J * L != L * J) return false;
  }
  return true;
}

inline RatMatrix random_skew(std::size_t r, std::mt19937_64& rng) {
  RatMatrix A(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      const long v = static_cast<long>(rng() % 7) - 3;
      A(i, j) = v;
      A(j, i) = -v;
    }
  return A;
}

inline ComplexStructure make_exact(RatMatrix J, std::string method) {
  ComplexStructure c;
  c.mode = ComplexStructure::Mode::exact;
  c.approx = to_real<Real128>(J);
  c.exact = std::move(J);
  c.method = std::move(method);
  return c;
}

template <class Real>
ComplexStructure polish(const Matrix<Real>& start, const MatrixGroup& G,
                        const ComplexStructureOptions& opt, std::string method) {
  const Real target = Real(opt.tolerance);
  const Matrix<Real> J = sign_iteration(start, Real(target / 1000));
  auto [sq, comm] = residuals(J, G);
  ComplexStructure c;
  c.mode = ComplexStructure::Mode::approximate;
  c.approx = Matrix<Real128>(J.rows(), J.cols());
  for (std::size_t i = 0; i < J.rows(); ++i)
    for (std::size_t j = 0; j < J.cols(); ++j) c.approx(i, j) = Real128(J(i, j));
  c.square_residual = Real128(sq);
  c.commutator_residual = Real128(comm);
  c.tolerance = Real128(opt.tolerance);
  c.precision_bits = opt.precision_bits;
  c.method = std::move(method);
  if (sq > target || comm > target)
    throw NumericalFailure("complex-structure residuals above tolerance");
  return c;
}

template <class Real>
ComplexStructure approximate_structure(const RatMatrix& K, const MatrixGroup& G,
                                       const ComplexStructureOptions& opt) {
  return polish(to_real<Real>(K), G, opt, "polar part of an invariant skew form");
}

}  // namespace detail

/// A complex structure commuting with all of L(G), or nothing when G is not
/// even. Existence is decided by is_even alone; the construction tries exact
/// candidates first and falls back to a certified high-precision polar part.
inline ComplexStructureResult invariant_complex_structure(
    const MatrixGroup& G, const CharacterTable& T, const ComplexStructureOptions& opt = {}) {
  if (opt.precision_bits != 128 && opt.precision_bits != 256)
    throw InvalidArgument("precision must be 128 or 256 bits");
  ComplexStructureResult out;
  out.evenness = is_even(G, T);
  if (!out.evenness.even) return out;
  const std::size_t r = G.rank();

  // an element of G that squares to -I and commutes with everything
  const auto minus_one = IntMatrix::identity(r) * Integer(-1);
  for (const auto& g : G.elements()) {
    if (g * g != minus_one) continue;
    const RatMatrix J = to_rational(g);
    if (detail::is_exact_invariant_structure(J, G)) {
      out.J = detail::make_exact(J, "central element of order four");
      return out;
    }
  }

  const RatMatrix Binv = inverse(to_rational(detail::invariant_inner_product(G)));
  std::mt19937_64 rng(opt.seed);
  std::optional<RatMatrix> fallback;
  for (std::size_t attempt = 0; attempt <= opt.retries; ++attempt) {
    const RatMatrix A0 =
        attempt == 0 ? detail::standard_structure(r) : detail::random_skew(r, rng);
    const RatMatrix A = detail::average_form(G, A0);
    if (determinant_field(A) == 0) continue;
    const RatMatrix K = Binv * A;
    if (auto J = detail::exact_polar(K); J && detail::is_exact_invariant_structure(*J, G)) {
      out.J = detail::make_exact(*J, attempt == 0 ? "averaged standard form"
                                                  : "averaged random skew form");
      return out;
    }
    if (!fallback) fallback = K;
  }
  if (!fallback) throw NumericalFailure("no nondegenerate invariant skew form found");
  out.J = opt.precision_bits == 256 ? detail::approximate_structure<Real256>(*fallback, G, opt)
                                    : detail::approximate_structure<Real128>(*fallback, G, opt);
  return out;
}

inline ComplexStructureResult invariant_complex_structure(
    const MatrixGroup& G, const ComplexStructureOptions& opt = {}) {
  return invariant_complex_structure(G, character_table(G), opt);
}

/// Projects a nearly invariant real matrix onto the commutant of G and
/// iterates it to a certified complex structure.
inline ComplexStructure refine_complex_structure(const MatrixGroup& G,
                                                 const Matrix<Real128>& start,
                                                 const ComplexStructureOptions& opt = {}) {
  Matrix<Real128> avg(start.rows(), start.cols());
  for (std::size_t g = 0; g < G.order(); ++g) {
    const auto L = Matrix<Real128>::from(G.element(g));
    const auto Linv = Matrix<Real128>::from(G.element(G.inverse(g)));
    avg = avg + L * start * Linv;
  }
  avg = avg * (Real128(1) / Real128(G.order()));
  return detail::polish(avg, G, opt, "refined sample structure");
}

/// Residual check used by consumers that receive J from elsewhere.
inline bool is_invariant_structure(const ComplexStructure& J, const MatrixGroup& G) {
  if (J.size() != G.rank()) return false;
  if (J.is_exact()) return detail::is_exact_invariant_structure(J.exact, G);
  auto [sq, comm] = detail::residuals(J.approx, G);
  const Real128 tol = J.tolerance > 0 ? J.tolerance : Real128(1e-30);
  return sq <= tol && comm <= tol;
}

}  // namespace crystorb
