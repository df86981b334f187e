#include "crystorb/hodge.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace crystorb;
using namespace fixtures;

namespace {

GaussianRational gq(const char* re, const char* im) {
  return {parse_rational(re), parse_rational(im)};
}

GaussMatrix column(std::initializer_list<GaussianRational> xs) {
  GaussMatrix m(xs.size(), 1);
  std::size_t i = 0;
  for (const auto& x : xs) m(i++, 0) = x;
  return m;
}

std::map<std::string, MatrixGroup> even_groups() {
  return {
      {"trivial2", closure({}, 8, 2)},
      {"trivial4", closure({}, 8, 4)},
      {"sign2", closure({-IntMatrix::identity(2)})},
      {"sign4", closure({-IntMatrix::identity(4)})},
      {"rot4", closure({rot4()})},
      {"rot3", closure({rot3()})},
      {"rot6", closure({rot6()})},
      {"q8", closure({quaternion_i(), quaternion_j()})},
      {"s3_twice", closure({direct_sum(a2_reflection1(), a2_reflection1()),
                            direct_sum(a2_reflection2(), a2_reflection2())})},
      {"pseudoreflection", closure({diag({1, 1, -1, -1})})},
      {"rot4_plus_sign", closure({direct_sum(rot4(), -IntMatrix::identity(2))})},
      {"rot3_x_rot4", closure({direct_sum(rot3(), IntMatrix::identity(2)),
                               direct_sum(IntMatrix::identity(2), rot4())})},
  };
}

std::map<std::string, MatrixGroup> odd_groups() {
  return {
      {"reflection", closure({diag({1, -1})})},
      {"rank3", closure({-IntMatrix::identity(3)})},
      {"s3", closure({a2_reflection1(), a2_reflection2()})},
      {"swap", closure({swap2()})},
      {"mixed", closure({diag({1, 1, 1, -1})})},
  };
}

// Count of dimension tuples (k_chi) with sum n for which a random subspace with
// k_chi dimensions in each eigenspace of an abelian group meets its conjugate
// trivially.
std::size_t brute_force_type_count(const MatrixGroup& G, const CharacterTable& T) {
  const auto N = static_cast<Eigen::Index>(G.rank());
  const std::size_t n = G.rank() / 2;
  std::vector<Eigen::MatrixXcd> spaces;
  for (std::size_t chi = 0; chi < T.size(); ++chi) {
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(N, N);
    for (std::size_t g = 0; g < G.order(); ++g)
      P += std::conj(T.values[chi][T.class_of[g]].to_complex()) * detail::to_eigen(G.element(g));
    P /= static_cast<double>(G.order());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(P, Eigen::ComputeFullU);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 1e-9) ++r;
    if (r > 0) spaces.push_back(svd.matrixU().leftCols(r));
  }
  std::mt19937_64 rng(11);
  std::size_t count = 0;
  std::vector<Eigen::Index> k(spaces.size(), 0);
  for (;;) {
    Eigen::Index total = 0;
    for (auto x : k) total += x;
    if (static_cast<std::size_t>(total) == n) {
      Eigen::MatrixXcd B(N, static_cast<Eigen::Index>(n));
      Eigen::Index col = 0;
      for (std::size_t s = 0; s < spaces.size(); ++s) {
        if (k[s] == 0) continue;
        Eigen::MatrixXcd coeff(spaces[s].cols(), k[s]);
        for (Eigen::Index i = 0; i < coeff.rows(); ++i)
          for (Eigen::Index j = 0; j < coeff.cols(); ++j)
            coeff(i, j) = {detail::unit_random(rng), detail::unit_random(rng)};
        B.middleCols(col, k[s]) = spaces[s] * coeff;
        col += k[s];
      }
      Eigen::MatrixXcd P(N, N);
      P << B, B.conjugate();
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(P);
      const auto sv = svd.singularValues();
      if (sv(sv.size() - 1) > 1e-8 * sv(0)) ++count;
    }
    std::size_t i = 0;
    while (i < k.size()) {
      if (++k[i] <= spaces[i].cols()) break;
      k[i] = 0;
      ++i;
    }
    if (i == k.size()) break;
  }
  return count;
}

}  // namespace

TEST(Evenness, Examples) {
  EXPECT_TRUE(is_even(closure({-IntMatrix::identity(2)})).even);
  auto refl = is_even(closure({diag({1, -1})}));
  EXPECT_FALSE(refl.even);
  EXPECT_EQ(refl.odd_classes().size(), 2u);
  auto rank3 = is_even(closure({-IntMatrix::identity(3)}));
  EXPECT_FALSE(rank3.even);
  EXPECT_FALSE(rank3.even_rank);
}

TEST(ComplexStructure, TrivialGroupGetsStandardStructure) {
  auto res = invariant_complex_structure(closure({}, 8, 2));
  ASSERT_TRUE(res.J);
  ASSERT_TRUE(res.J->is_exact());
  EXPECT_EQ(res.J->exact, (RatMatrix{{0, -1}, {1, 0}}));
}

TEST(ComplexStructure, RotationIsItsOwnStructure) {
  auto res = invariant_complex_structure(closure({rot4()}));
  ASSERT_TRUE(res.J);
  ASSERT_TRUE(res.J->is_exact());
  EXPECT_EQ(res.J->exact, to_rational(rot4()));
}

TEST(ComplexStructure, ReflectionHasNone) {
  auto res = invariant_complex_structure(closure({diag({1, -1})}));
  EXPECT_FALSE(res.J);
  auto odd = res.evenness.odd_classes();
  ASSERT_EQ(odd.size(), 2u);
  for (const auto& c : odd) EXPECT_EQ(c.dim, 1u);
}

TEST(ComplexStructure, HexagonalNeedsApproximatePath) {
  for (const auto& g : {rot3(), rot6()}) {
    auto G = closure({g});
    auto res = invariant_complex_structure(G);
    ASSERT_TRUE(res.J);
    EXPECT_FALSE(res.J->is_exact());
    EXPECT_LE(res.J->square_residual, Real128(1e-30));
    EXPECT_LE(res.J->commutator_residual, Real128(1e-30));
    EXPECT_TRUE(is_invariant_structure(*res.J, G));
  }
}

TEST(ComplexStructure, HigherPrecisionPath) {
  ComplexStructureOptions opt;
  opt.precision_bits = 256;
  auto res = invariant_complex_structure(closure({rot3()}), opt);
  ASSERT_TRUE(res.J);
  EXPECT_LE(res.J->square_residual, Real128(1e-30));
  opt.precision_bits = 64;
  EXPECT_THROW(invariant_complex_structure(closure({rot3()}), opt), InvalidArgument);
}

TEST(ComplexStructure, ExistsExactlyWhenEven) {
  for (const auto& [name, G] : even_groups()) {
    auto res = invariant_complex_structure(G);
    EXPECT_TRUE(res.evenness.even) << name;
    ASSERT_TRUE(res.J) << name;
    EXPECT_TRUE(is_invariant_structure(*res.J, G)) << name;
    if (res.J->is_exact()) {
      const RatMatrix& J = res.J->exact;
      EXPECT_EQ(J * J, RatMatrix::identity(G.rank()) * Rational(-1)) << name;
    } else {
      EXPECT_LE(res.J->square_residual, Real128(1e-30)) << name;
      EXPECT_LE(res.J->commutator_residual, Real128(1e-30)) << name;
    }
  }
  for (const auto& [name, G] : odd_groups()) {
    auto res = invariant_complex_structure(G);
    EXPECT_FALSE(res.evenness.even) << name;
    EXPECT_FALSE(res.J) << name;
  }
}

TEST(ComplexStructure, DeterministicForFixedSeed) {
  auto G = closure({rot3()});
  ComplexStructureOptions opt;
  opt.seed = 99;
  auto a = invariant_complex_structure(G, opt), b = invariant_complex_structure(G, opt);
  ASSERT_TRUE(a.J && b.J);
  EXPECT_EQ(a.J->approx, b.J->approx);
}

TEST(Omega, OrientationConvention) {
  EXPECT_FALSE(omega_in_T(column({GaussianRational::i(), 1})));
  EXPECT_EQ(omega_orientation_value(column({GaussianRational::i(), 1})), -2);
  EXPECT_TRUE(omega_in_T(column({1, GaussianRational::i()})));
  EXPECT_THROW(omega_in_T(column({1, 1})), DegenerateOmega);
  EXPECT_THROW(omega_in_T(column({1, 1, 1})), InvalidArgument);
}

TEST(Omega, BlockDiagonalOfPositivesIsPositive) {
  GaussMatrix omega(4, 2);
  omega(0, 0) = 1;
  omega(1, 0) = GaussianRational::i();
  omega(2, 1) = 1;
  omega(3, 1) = gq("1/2", "3");
  EXPECT_TRUE(omega_in_T(omega));
}

TEST(Torus, StandardStructureFromGaussianPeriods) {
  auto t = torus_from_omega(column({1, GaussianRational::i()}));
  EXPECT_TRUE(t.in_T);
  EXPECT_EQ(t.J, (RatMatrix{{0, -1}, {1, 0}}));
}

TEST(Torus, GeneralPeriodFormula) {
  const Rational x(1, 2), y(3, 2);
  auto t = torus_from_omega(column({1, GaussianRational(x, y)}));
  const RatMatrix expected{{-x / y, -(x * x + y * y) / y}, {Rational(1) / y, x / y}};
  EXPECT_EQ(t.J, expected);
  EXPECT_EQ(t.J * t.J, RatMatrix::identity(2) * Rational(-1));
}

TEST(Torus, InvariantPeriodsGiveCommutingStructure) {
  auto G = closure({rot4()});
  auto omega = column({1, GaussianRational::i()});
  ASSERT_TRUE(is_invariant_omega(G, omega));
  auto t = torus_from_omega(omega);
  for (const auto& g : G.elements()) EXPECT_EQ(t.J * to_rational(g), to_rational(g) * t.J);

  // rank 4, Omega = diag blocks (1,i) and (1, 2i), invariant under -I and diag(1,1,-1,-1)
  GaussMatrix w(4, 2);
  w(0, 0) = 1;
  w(1, 0) = GaussianRational::i();
  w(2, 1) = 1;
  w(3, 1) = gq("0", "2");
  auto H = closure({diag({1, 1, -1, -1})});
  ASSERT_TRUE(is_invariant_omega(H, w));
  auto tw = torus_from_omega(w);
  for (const auto& g : H.elements()) EXPECT_EQ(tw.J * to_rational(g), to_rational(g) * tw.J);
}

TEST(RightAction, Examples) {
  auto omega = column({1, GaussianRational::i()});
  EXPECT_EQ(right_action(omega, IntMatrix::identity(2)), omega);
  EXPECT_TRUE(same_column_span(right_action(omega, rot4()), omega));
  EXPECT_FALSE(same_column_span(right_action(omega, diag({1, -1})), omega));
  // eigen-subspace of an involution
  GaussMatrix e(4, 2);
  e(0, 0) = 1;
  e(1, 1) = 1;
  EXPECT_TRUE(same_column_span(right_action(e, diag({1, 1, -1, -1})), e));
}

TEST(HodgeTypes, TrivialGroupHasOneTypeOfGrassmannDimension) {
  for (std::size_t n : {1, 2, 3}) {
    auto G = closure({}, 8, 2 * n);
    auto types = hodge_types(G, character_table(G));
    ASSERT_EQ(types.size(), 1u);
    EXPECT_EQ(component_dimension(types[0]), n * n);
  }
}

TEST(HodgeTypes, RotationHasTwoRigidTypes) {
  auto G = closure({rot4()});
  auto types = hodge_types(G, character_table(G));
  ASSERT_EQ(types.size(), 2u);
  for (const auto& t : types) EXPECT_EQ(component_dimension(t), 0u);
}

TEST(HodgeTypes, SignOnRankFourIsEverything) {
  auto G = closure({-IntMatrix::identity(4)});
  auto types = hodge_types(G, character_table(G));
  ASSERT_EQ(types.size(), 1u);
  EXPECT_EQ(component_dimension(types[0]), 4u);
}

TEST(HodgeTypes, QuaternionGroupGivesProjectiveLine) {
  auto G = closure({quaternion_i(), quaternion_j()});
  auto types = hodge_types(G, character_table(G));
  ASSERT_EQ(types.size(), 1u);
  EXPECT_EQ(component_dimension(types[0]), 1u);
}

TEST(HodgeTypes, RejectsOddGroups) {
  auto G = closure({diag({1, -1})});
  EXPECT_THROW(hodge_types(G, character_table(G)), InvalidArgument);
}

TEST(HodgeTypes, SplitsSumToHalfRank) {
  for (const auto& [name, G] : even_groups()) {
    for (const auto& t : hodge_types(G, character_table(G))) EXPECT_EQ(t.total(), G.rank() / 2) << name;
  }
}

TEST(HodgeTypes, AbelianCountMatchesBruteForce) {
  const std::vector<MatrixGroup> groups{
      closure({}, 8, 2),
      closure({}, 8, 4),
      closure({rot4()}),
      closure({rot3()}),
      closure({-IntMatrix::identity(4)}),
      closure({diag({1, 1, -1, -1})}),
      closure({direct_sum(rot4(), rot4())}),
      closure({direct_sum(rot4(), -IntMatrix::identity(2))}),
      closure({direct_sum(rot3(), rot4())}),
      closure({direct_sum(direct_sum(rot4(), rot4()), rot4())}),
      closure({direct_sum(direct_sum(rot3(), rot6()), -IntMatrix::identity(2))}),
  };
  for (const auto& G : groups) {
    ASSERT_TRUE(G.is_abelian());
    auto T = character_table(G);
    EXPECT_EQ(hodge_types(G, T).size(), brute_force_type_count(G, T)) << G.element(1);
  }
}

TEST(HodgeTypes, DimensionMatchesTangentRank) {
  for (const auto& [name, G] : even_groups()) {
    auto T = character_table(G);
    for (const auto& t : hodge_types(G, T)) {
      auto sp = sample_point(G, T, t, 5);
      EXPECT_EQ(tangent_space_dimension(G, sp), component_dimension(t)) << name << " " << t.label();
    }
  }
}

TEST(Sample, PeriodsAndStructureAreConsistent) {
  for (const auto& [name, G] : even_groups()) {
    auto T = character_table(G);
    for (const auto& t : hodge_types(G, T)) {
      auto sp = sample_point(G, T, t, 1);
      const auto n = static_cast<Eigen::Index>(G.rank() / 2);
      ASSERT_EQ(sp.omega.cols(), n);
      Eigen::MatrixXcd Jc = sp.J.cast<std::complex<double>>();
      EXPECT_LT((sp.omega.transpose() * Jc - std::complex<double>(0, 1) * sp.omega.transpose()).norm(), 1e-8)
          << name;
      EXPECT_LT((sp.J * sp.J + Eigen::MatrixXd::Identity(2 * n, 2 * n)).norm(), 1e-8) << name;
      EXPECT_NE(sp.orientation, 0.0);
      Matrix<Real128> start(G.rank(), G.rank());
      for (std::size_t i = 0; i < G.rank(); ++i)
        for (std::size_t j = 0; j < G.rank(); ++j)
          start(i, j) = Real128(sp.J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      auto J = refine_complex_structure(G, start);
      EXPECT_LE(J.square_residual, Real128(1e-30)) << name;
      EXPECT_LE(J.commutator_residual, Real128(1e-30)) << name;
    }
  }
}

TEST(Sample, RotationTypesHaveOppositeOrientation) {
  auto G = closure({rot4()});
  auto T = character_table(G);
  auto types = hodge_types(G, T);
  ASSERT_EQ(types.size(), 2u);
  const double a = sample_point(G, T, types[0]).orientation;
  const double b = sample_point(G, T, types[1]).orientation;
  EXPECT_LT(a * b, 0.0);
}

TEST(Sample, TrivialGroupSampleIsInTeichmuellerSpace) {
  for (std::size_t n : {1, 2, 3}) {
    auto G = closure({}, 8, 2 * n);
    auto T = character_table(G);
    auto sp = sample_point(G, T, hodge_types(G, T)[0], 3);
    EXPECT_GT(sp.orientation, 0.0);
  }
}
