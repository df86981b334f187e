#include "crystorb/quotient/quotient.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace crystorb;
using namespace fixtures;

namespace {

CrystGroup cryst(std::vector<AffineMap> gens) {
  const std::size_t r = gens.front().linear.rows();
  return verify_crystallographic({r, std::move(gens)});
}

ComplexStructure structure(const CrystGroup& g) {
  auto res = invariant_complex_structure(g.group);
  if (!res.J) throw std::runtime_error("group is not even");
  return *res.J;
}

CrystGroup kummer() { return cryst({{-IntMatrix::identity(4), RatVector(4, 0)}}); }
CrystGroup bagnera_de_franchis() {
  return cryst({{diag({1, 1, -1, -1}), rvec({"1/2", "0", "0", "0"})}});
}
CrystGroup pseudoref_product() { return cryst({{diag({1, 1, -1, -1}), RatVector(4, 0)}}); }
CrystGroup mixed_c2c2() {
  return cryst({{diag({1, 1, -1, -1}), RatVector(4, 0)},
                {-IntMatrix::identity(4), rvec({"0", "0", "1/2", "0"})}});
}
// order 3 rotation of the hexagonal curve in the first factor only
CrystGroup rot3_pseudoref() {
  return cryst({{direct_sum(IntMatrix::identity(2), rot3()), RatVector(4, 0)}});
}
// C2 x C2 generated by the two coordinate reflections of E x E
CrystGroup reflections_c2c2() {
  return cryst({{diag({-1, -1, 1, 1}), RatVector(4, 0)}, {diag({1, 1, -1, -1}), RatVector(4, 0)}});
}
// order 4 group containing -I and an element swapping the factors of E_i x E_i
CrystGroup swap_with_rot() {
  const IntMatrix s = imat({{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}});
  return cryst({{s, RatVector(4, 0)}, {direct_sum(rot4(), rot4()), RatVector(4, 0)}});
}

std::vector<CrystGroup> all_examples() {
  return {kummer(),         bagnera_de_franchis(), pseudoref_product(), mixed_c2c2(),
          rot3_pseudoref(), reflections_c2c2(),    swap_with_rot()};
}

}  // namespace

TEST(FixedPoints, KummerHasSixteenHalfPeriods) {
  auto G = kummer();
  auto f = fixed_points(G, 1);
  EXPECT_EQ(f.component_count(), 16u);
  EXPECT_EQ(f.real_dimension, 0u);
  EXPECT_EQ(*f.complex_codimension, 2u);
  for (const auto& p : f.solutions.points)
    for (const auto& x : p) EXPECT_TRUE(x == 0 || x == Rational(1, 2));
}

TEST(FixedPoints, PointCountMatchesDeterminant) {
  for (const auto& G : all_examples())
    for (std::size_t g = 1; g < G.order(); ++g) {
      const IntMatrix A = G.linear(g) - IntMatrix::identity(G.rank);
      const Integer d = determinant(A);
      auto f = fixed_points(G, g);
      if (d == 0) continue;
      EXPECT_EQ(Integer(f.component_count()), abs(d));
      EXPECT_EQ(f.real_dimension, 0u);
    }
}

TEST(FixedPoints, SolutionsAreFixed) {
  for (const auto& G : all_examples())
    for (std::size_t g = 1; g < G.order(); ++g)
      for (const auto& p : fixed_points(G, g).solutions.points)
        EXPECT_TRUE(is_integral(G.linear(g) * p + G.translation(g) - p));
}

TEST(FixedPoints, ConjugationMovesFixedLoci) {
  for (const auto& G : all_examples())
    for (std::size_t g = 1; g < G.order(); ++g)
      for (std::size_t h = 0; h < G.order(); ++h) {
        const std::size_t c = G.group.multiply(G.group.multiply(h, g), G.group.inverse(h));
        auto target = components(fixed_points(G, c));
        auto source = components(fixed_points(G, g));
        ASSERT_EQ(source.size(), target.size());
        for (const auto& s : source) {
          auto img = s.transformed(G.linear(h), G.translation(h));
          EXPECT_NE(std::find(target.begin(), target.end(), img), target.end());
        }
      }
}

TEST(FixedPoints, OutOfRangeElementIsRejected) {
  EXPECT_THROW(fixed_points(kummer(), 5), InvalidArgument);
}

TEST(Classify, Examples) {
  auto k = kummer();
  EXPECT_EQ(classify_action(k, structure(k)).kind, ActionKind::quasi_free);
  auto b = bagnera_de_franchis();
  EXPECT_EQ(classify_action(b, structure(b)).kind, ActionKind::free);
  auto p = pseudoref_product();
  auto rep = classify_action(p, structure(p));
  EXPECT_EQ(rep.kind, ActionKind::divisorial);
  EXPECT_EQ(*rep.min_codimension, 1u);
  EXPECT_EQ(rep.evidence, std::vector<std::size_t>{1});
  EXPECT_EQ(rep.loci.front().component_count(), 4u);
  EXPECT_EQ(rep.loci.front().real_dimension, 2u);
}

TEST(Classify, FreeExactlyWhenTorsionFree) {
  for (const auto& G : all_examples())
    EXPECT_EQ(classify_action(G, structure(G)).kind == ActionKind::free,
              is_torsion_free(G).torsion_free);
}

TEST(Classify, RejectsNonCommutingStructure) {
  auto G = pseudoref_product();
  ComplexStructure bad = structure(G);
  // J of the swapped factors does not commute with diag(1,1,-1,-1)
  const IntMatrix s = imat({{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}});
  bad.exact = to_rational(s);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) bad.approx(i, j) = Real128(static_cast<long>(s(i, j)));
  EXPECT_THROW(classify_action(G, bad), InvalidArgument);
}

TEST(Pseudoreflection, DiagonalReflectionIsOne) {
  auto G = pseudoref_product();
  auto J = structure(G);
  EXPECT_EQ(pseudoreflections(G, J), std::vector<std::size_t>{1});
  auto gpr = gpr_subgroup(G, J);
  EXPECT_EQ(gpr.members.size(), G.order());
}

TEST(Pseudoreflection, GlideIsNotAPseudoreflection) {
  auto G = bagnera_de_franchis();
  EXPECT_TRUE(pseudoreflections(G, structure(G)).empty());
}

TEST(Pseudoreflection, KummerHasNone) {
  auto G = kummer();
  EXPECT_TRUE(pseudoreflections(G, structure(G)).empty());
  EXPECT_EQ(gpr_subgroup(G, structure(G)).members.size(), 1u);
}

TEST(Pseudoreflection, GprIsNormal) {
  for (const auto& G : all_examples()) {
    auto gpr = gpr_subgroup(G, structure(G));
    std::vector<bool> in(G.order(), false);
    for (auto m : gpr.members) in[m] = true;
    for (auto m : gpr.members)
      for (std::size_t h = 0; h < G.order(); ++h)
        EXPECT_TRUE(in[G.group.multiply(G.group.multiply(h, m), G.group.inverse(h))]);
    EXPECT_EQ(G.order() % gpr.members.size(), 0u);
  }
}

TEST(Factorization, MixedHasIndexTwo) {
  auto G = mixed_c2c2();
  auto J = structure(G);
  auto rep = factorization_report(G, J);
  EXPECT_EQ(rep.group_order, 4u);
  EXPECT_EQ(rep.gpr_order, 2u);
  EXPECT_EQ(rep.index, 2u);
  EXPECT_FALSE(rep.first_map_identity);
  EXPECT_FALSE(rep.second_map_identity);
  EXPECT_TRUE(rep.quasi_etale);
  ASSERT_EQ(rep.audit.size(), 1u);
  EXPECT_EQ(rep.audit.front().codimension, 2u);
  EXPECT_EQ(classify_action(G, J).kind, ActionKind::divisorial);
}

TEST(Factorization, DegenerateCases) {
  auto k = kummer();
  auto rk = factorization_report(k, structure(k));
  EXPECT_TRUE(rk.first_map_identity);
  EXPECT_EQ(rk.index, 2u);
  auto p = pseudoref_product();
  auto rp = factorization_report(p, structure(p));
  EXPECT_TRUE(rp.second_map_identity);
  EXPECT_TRUE(rp.audit.empty());
}

TEST(Factorization, AuditAlwaysPasses) {
  for (const auto& G : all_examples()) {
    auto rep = factorization_report(G, structure(G));
    EXPECT_TRUE(rep.quasi_etale);
    for (const auto& a : rep.audit) EXPECT_GE(a.codimension, 2u);
  }
}

TEST(Orbifold, PseudoreflectionProduct) {
  auto G = pseudoref_product();
  auto d = orbifold_descriptor(G, structure(G));
  EXPECT_EQ(d.kind, ActionKind::divisorial);
  ASSERT_EQ(d.divisors.size(), 4u);
  EXPECT_EQ(d.divisor_components(), 4u);
  for (const auto& c : d.divisors) {
    EXPECT_EQ(c.multiplicity, 2u);
    EXPECT_EQ(c.orbit_size, 1u);
    EXPECT_TRUE(c.cyclic);
    EXPECT_EQ(c.representative.real_dimension(), 2u);
  }
  EXPECT_TRUE(d.strata.empty());
}

TEST(Orbifold, KummerStrata) {
  auto G = kummer();
  auto d = orbifold_descriptor(G, structure(G));
  EXPECT_TRUE(d.divisors.empty());
  ASSERT_EQ(d.strata.size(), 1u);
  EXPECT_EQ(d.strata[0].codimension, 2u);
  EXPECT_EQ(d.strata[0].stabilizer_order, 2u);
  EXPECT_EQ(d.strata[0].orbits, 16u);
}

TEST(Orbifold, FreeActionHasNoBranchData) {
  auto G = bagnera_de_franchis();
  auto d = orbifold_descriptor(G, structure(G));
  EXPECT_EQ(d.kind, ActionKind::free);
  EXPECT_TRUE(d.divisors.empty());
  EXPECT_TRUE(d.strata.empty());
}

TEST(Orbifold, OrderThreeRotationGivesMultiplicityThree) {
  auto G = rot3_pseudoref();
  auto d = orbifold_descriptor(G, structure(G));
  ASSERT_EQ(d.divisors.size(), 3u);
  for (const auto& c : d.divisors) {
    EXPECT_EQ(c.multiplicity, 3u);
    EXPECT_TRUE(c.cyclic);
    EXPECT_EQ(G.group.element_order(c.stabilizer_generator), 3u);
  }
}

TEST(Orbifold, CrossingReflectionsMeetInPoints) {
  auto G = reflections_c2c2();
  auto d = orbifold_descriptor(G, structure(G));
  EXPECT_EQ(d.divisor_components(), 8u);
  for (const auto& c : d.divisors) EXPECT_EQ(c.multiplicity, 2u);
  ASSERT_EQ(d.strata.size(), 1u);
  EXPECT_EQ(d.strata[0].stabilizer_order, 4u);
  EXPECT_EQ(d.strata[0].orbits, 16u);
}

TEST(Orbifold, OrbitsPartitionTheDivisors) {
  for (const auto& G : all_examples()) {
    auto J = structure(G);
    auto d = orbifold_descriptor(G, J);
    std::vector<TorusComponent> all;
    for (auto g : pseudoreflections(G, J))
      for (auto& c : components(fixed_points(G, g)))
        if (std::find(all.begin(), all.end(), c) == all.end()) all.push_back(c);
    EXPECT_EQ(d.divisor_components(), all.size());
    for (const auto& cls : d.divisors) {
      // the representative's G-images are divisor components too
      for (std::size_t h = 0; h < G.order(); ++h) {
        auto img = cls.representative.transformed(G.linear(h), G.translation(h));
        EXPECT_NE(std::find(all.begin(), all.end(), img), all.end());
      }
      for (auto s : cls.stabilizer)
        EXPECT_TRUE(cls.representative.fixed_pointwise_by(G.linear(s), G.translation(s)));
    }
  }
}

TEST(Orbifold, SwapGroupIsDescribed) {
  auto G = swap_with_rot();
  auto J = structure(G);
  auto d = orbifold_descriptor(G, J);
  EXPECT_EQ(d.kind, classify_action(G, J).kind);
  for (const auto& c : d.divisors) EXPECT_TRUE(c.cyclic);
}
