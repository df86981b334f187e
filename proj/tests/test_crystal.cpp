#include "crystorb/crystal/crystal.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace crystorb;
using namespace fixtures;

namespace {

CrystData single(const IntMatrix& L, RatVector t) {
  return {L.rows(), {{L, std::move(t)}}};
}

CrystData bagnera_de_franchis() {
  return single(diag({1, 1, -1, -1}), rvec({"1/2", "0", "0", "0"}));
}

// Exact (not reduced) products of generator words up to the given length.
std::vector<AffineMap> words(const CrystData& d, std::size_t length) {
  std::vector<AffineMap> layer{{IntMatrix::identity(d.rank), RatVector(d.rank, 0)}};
  std::vector<AffineMap> all = layer;
  for (std::size_t k = 0; k < length; ++k) {
    std::vector<AffineMap> next;
    for (const auto& w : layer)
      for (const auto& g : d.generators) next.push_back(w.compose(g));
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return all;
}

}  // namespace

TEST(Verify, NegativeIdentityIsCyclicOfOrderTwo) {
  auto G = verify_crystallographic(single(-IntMatrix::identity(2), rvec({"0", "0"})));
  EXPECT_EQ(G.order(), 2u);
  EXPECT_EQ(G.translation(1), rvec({"0", "0"}));
}

TEST(Verify, GlideReflectionSquaresToLatticeTranslation) {
  auto d = single(diag({1, -1}), rvec({"1/2", "0"}));
  auto G = verify_crystallographic(d);
  EXPECT_EQ(G.order(), 2u);
  auto sq = d.generators[0].compose(d.generators[0]);
  EXPECT_EQ(sq.linear, IntMatrix::identity(2));
  EXPECT_EQ(sq.translation, rvec({"1", "0"}));
}

TEST(Verify, NonLatticeTranslationIsKernelTooBig) {
  EXPECT_THROW(verify_crystallographic(single(IntMatrix::identity(2), rvec({"1/2", "0"}))),
               KernelTooBig);
  // hidden: the square of this generator is translation by (1/2, 0)
  EXPECT_THROW(verify_crystallographic(single(diag({1, -1}), rvec({"1/4", "0"}))),
               KernelTooBig);
}

TEST(Verify, InfiniteLinearPartIsNotFinite) {
  EXPECT_THROW(verify_crystallographic(single(imat({{1, 1}, {0, 1}}), rvec({"0", "0"})), 64),
               NotFinite);
  EXPECT_THROW(verify_crystallographic(single(imat({{2, 1}, {1, 1}}), rvec({"0", "0"})), 64),
               NotFinite);
}

TEST(Verify, RejectsMalformedInput) {
  EXPECT_THROW(verify_crystallographic(single(diag({2, 1}), rvec({"0", "0"}))),
               InvalidArgument);
  EXPECT_THROW(verify_crystallographic(single(diag({1, 1}), rvec({"0"}))), InvalidArgument);
  EXPECT_THROW(verify_crystallographic(CrystData{0, {}}), InvalidArgument);
}

TEST(Verify, TrivialGroupIsAccepted) {
  auto G = verify_crystallographic(CrystData{3, {}});
  EXPECT_EQ(G.order(), 1u);
  EXPECT_TRUE(is_torsion_free(G).torsion_free);
}

TEST(Verify, CocycleConditionHoldsOnAllPairs) {
  const std::vector<CrystData> inputs{
      bagnera_de_franchis(),
      single(rot4(), rvec({"0", "1/2"})),
      {2, {{a2_reflection1(), rvec({"0", "0"})}, {a2_reflection2(), rvec({"0", "0"})}}},
      {4,
       {{diag({1, 1, -1, -1}), rvec({"0", "0", "0", "0"})},
        {-IntMatrix::identity(4), rvec({"0", "0", "1/2", "0"})}}},
  };
  for (const auto& d : inputs) {
    auto G = verify_crystallographic(d);
    for (std::size_t g = 0; g < G.order(); ++g)
      for (std::size_t h = 0; h < G.order(); ++h)
        EXPECT_TRUE(congruent_mod_one(G.translation(G.group.multiply(g, h)),
                                      G.linear(g) * G.translation(h) + G.translation(g)));
  }
}

TEST(Normalize, AbsorbsHalfTranslation) {
  CrystData d{2,
              {{-IntMatrix::identity(2), rvec({"0", "0"})},
               {IntMatrix::identity(2), rvec({"1/2", "0"})}}};
  EXPECT_THROW(verify_crystallographic(d), KernelTooBig);
  auto G = normalize_action(d);
  EXPECT_EQ(G.order(), 2u);
  EXPECT_EQ(G.basis, (RatMatrix{{Rational(1, 2), 0}, {0, 1}}));
  EXPECT_EQ(abs(determinant_field(G.basis)), Rational(1, 2));
}

TEST(Normalize, AlreadyNormalizedIsUnchanged) {
  auto d = single(-IntMatrix::identity(2), rvec({"1/2", "1/2"}));
  d.generators.push_back({IntMatrix::identity(2), rvec({"1", "0"})});
  d.generators.push_back({IntMatrix::identity(2), rvec({"0", "1"})});
  auto G = normalize_action(d);
  EXPECT_EQ(G.basis, RatMatrix::identity(2));
  ASSERT_EQ(G.order(), 2u);
  EXPECT_EQ(G.linear(1), -IntMatrix::identity(2));
  EXPECT_EQ(G.translation(1), rvec({"1/2", "1/2"}));
}

TEST(Normalize, RebasedGlideBecomesLinear) {
  // the square of (diag(1,-1), (1/4,0)) is translation by (1/2,0)
  auto G = normalize_action(single(diag({1, -1}), rvec({"1/4", "0"})));
  EXPECT_EQ(G.order(), 2u);
  EXPECT_EQ(G.basis, (RatMatrix{{Rational(1, 2), 0}, {0, 1}}));
  EXPECT_EQ(G.translation(1), rvec({"1/2", "0"}));
}

TEST(Normalize, LinearPartsStayIntegralInNewBasis) {
  // rotation by 90 degrees with the centering translation (1/2,1/2)
  CrystData d{2, {{rot4(), rvec({"0", "0"})}, {IntMatrix::identity(2), rvec({"1/2", "1/2"})}}};
  auto G = normalize_action(d);
  EXPECT_EQ(G.order(), 4u);
  EXPECT_EQ(abs(determinant_field(G.basis)), Rational(1, 2));
  for (std::size_t g = 0; g < G.order(); ++g)
    EXPECT_EQ(abs(determinant(G.linear(g))), 1);
}

TEST(Realization, ZeroCocycleSplits) {
  auto G = closure({rot4()});
  auto u = affine_realization(G, ExtensionCocycle::zero(G.order(), 2));
  for (const auto& v : u) EXPECT_EQ(v, rvec({"0", "0"}));
}

TEST(Realization, GlideFromCocycle) {
  auto G = closure({diag({1, -1})});
  auto f = ExtensionCocycle::zero(2, 2);
  f(1, 1) = IntVector{1, 0};
  auto u = affine_realization(G, f);
  EXPECT_EQ(u[1], rvec({"1/2", "0"}));
}

TEST(Realization, RejectsNonCocycle) {
  // with L = -I the identity at (g,g,g) would need -2 f(g,g) = 0
  auto G = closure({-IntMatrix::identity(2)});
  auto f = ExtensionCocycle::zero(2, 2);
  f(1, 1) = IntVector{1, 1};
  EXPECT_THROW(affine_realization(G, f), CocycleViolation);
  auto unnormalized = ExtensionCocycle::zero(2, 2);
  unnormalized(0, 1) = IntVector{1, 0};
  EXPECT_THROW(affine_realization(G, unnormalized), CocycleViolation);
}

TEST(Realization, HalfTranslationUnderNegationIsSplit) {
  auto G = closure({-IntMatrix::identity(2)});
  VectorSystem u{rvec({"0", "0"}), rvec({"1/2", "1/2"})};
  VectorSystem zero{rvec({"0", "0"}), rvec({"0", "0"})};
  auto eq = realizations_equivalent(G, u, zero);
  ASSERT_TRUE(eq.equivalent);
  EXPECT_EQ(eq.witness, rvec({"1/4", "1/4"}));
}

TEST(Realization, RoundTripThroughCocycle) {
  const std::vector<CrystData> inputs{
      bagnera_de_franchis(),
      single(rot4(), rvec({"1/2", "0"})),
      single(rot3(), rvec({"1/3", "2/3"})),
      {4,
       {{diag({1, 1, -1, -1}), rvec({"0", "0", "0", "0"})},
        {-IntMatrix::identity(4), rvec({"0", "0", "1/2", "0"})}}},
  };
  for (const auto& d : inputs) {
    auto G = verify_crystallographic(d);
    auto f = cocycle_from_vector_system(G.group, G.translations);
    EXPECT_TRUE(is_normalized_cocycle(G.group, f));
    auto u = affine_realization(G.group, f);
    auto eq = realizations_equivalent(G.group, u, G.translations);
    EXPECT_TRUE(eq.equivalent);
  }
}

TEST(Realization, AffineMapsHaveOnlyLatticeTranslations) {
  const std::vector<CrystData> inputs{
      bagnera_de_franchis(),
      single(rot6(), rvec({"0", "0"})),
      {2, {{a2_reflection1(), rvec({"0", "0"})}, {a2_reflection2(), rvec({"0", "0"})}}},
  };
  for (const auto& d : inputs) {
    auto G = verify_crystallographic(d);
    auto u = affine_realization(G.group, cocycle_from_vector_system(G.group, G.translations));
    CrystData realized{d.rank, {}};
    for (std::size_t g = 1; g < G.order(); ++g) realized.generators.push_back({G.linear(g), u[g]});
    for (const auto& w : words(realized, 4))
      if (w.linear == IntMatrix::identity(d.rank)) EXPECT_TRUE(is_integral(w.translation));
  }
}

TEST(Equivalence, Examples) {
  auto G = closure({diag({1, -1})});
  VectorSystem u{rvec({"0", "0"}), rvec({"1/2", "0"})};
  auto same = realizations_equivalent(G, u, u);
  EXPECT_TRUE(same.equivalent);
  EXPECT_EQ(same.witness, rvec({"0", "0"}));

  VectorSystem v{rvec({"0", "0"}), rvec({"1/2", "1/3"})};
  auto eq = realizations_equivalent(G, u, v);
  ASSERT_TRUE(eq.equivalent);
  auto lhs = u[1] - v[1];
  auto rhs = (G.element(1) - IntMatrix::identity(2)) * eq.witness;
  EXPECT_TRUE(congruent_mod_one(lhs, rhs));
  auto back = realizations_equivalent(G, v, u);
  ASSERT_TRUE(back.equivalent);
  EXPECT_TRUE(congruent_mod_one(v[1] - u[1],
                                (G.element(1) - IntMatrix::identity(2)) * back.witness));

  VectorSystem zero{rvec({"0", "0"}), rvec({"0", "0"})};
  EXPECT_FALSE(realizations_equivalent(G, u, zero).equivalent);
}

TEST(Equivalence, IsAnEquivalenceRelation) {
  auto G = closure({rot4()});
  std::mt19937_64 rng(7);
  std::vector<VectorSystem> systems;
  for (int s = 0; s < 6; ++s) {
    // coboundary shifts of the zero system and of one nonsplit-looking system
    RatVector w{Rational(static_cast<long long>(rng() % 8), 8),
                Rational(static_cast<long long>(rng() % 6), 6)};
    VectorSystem u(G.order());
    for (std::size_t g = 0; g < G.order(); ++g)
      u[g] = frac((G.element(g) - IntMatrix::identity(2)) * w);
    systems.push_back(u);
  }
  systems.push_back(verify_crystallographic(single(rot4(), rvec({"1/2", "0"}))).translations);
  for (const auto& a : systems) {
    EXPECT_TRUE(realizations_equivalent(G, a, a).equivalent);
    for (const auto& b : systems) {
      const bool ab = realizations_equivalent(G, a, b).equivalent;
      EXPECT_EQ(ab, realizations_equivalent(G, b, a).equivalent);
      for (const auto& c : systems)
        if (ab && realizations_equivalent(G, b, c).equivalent)
          EXPECT_TRUE(realizations_equivalent(G, a, c).equivalent);
    }
  }
}

TEST(Torsion, Examples) {
  auto kummer = verify_crystallographic(single(-IntMatrix::identity(4), RatVector(4, 0)));
  auto rep = is_torsion_free(kummer);
  EXPECT_FALSE(rep.torsion_free);
  EXPECT_EQ(rep.offending, (std::vector<std::size_t>{1}));
  EXPECT_EQ(solve_mod_lattice(kummer.linear(1) - IntMatrix::identity(4), RatVector(4, 0))
                .component_count(),
            16u);

  EXPECT_TRUE(is_torsion_free(verify_crystallographic(bagnera_de_franchis())).torsion_free);
  EXPECT_TRUE(is_torsion_free(verify_crystallographic(CrystData{2, {}})).torsion_free);
}
