#include <gtest/gtest.h>

#include "asai/asai.hpp"
#include "asai/group_law.hpp"
#include "asai/lang.hpp"
#include "asai/points.hpp"
#include "test_support.hpp"

namespace {

using namespace asai;
using test::const_point;

TEST(Lang, IdentityIsTrivial) {
  FieldTower tower(3);
  const auto law = builtin_n2(3);
  const auto e = identity_point(tower, law, 1);
  const auto w = lang_solve_triangular(tower, law, e, 3, 1);
  EXPECT_EQ(w.extension, 1U);
  EXPECT_EQ(w.x, e);
  const auto b = lang_solve_bruteforce(tower, law, e, 3, 1, 3);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->extension, 1U);
  EXPECT_EQ(b->x, e);
}

TEST(Lang, AdditiveNeedsDegreeThree) {
  FieldTower tower(3);
  const auto law = builtin_ga_power(1, 3);
  const auto g = const_point(tower, 1, {1});
  const auto w = lang_solve_triangular(tower, law, g, 3, 1);
  EXPECT_EQ(w.extension, 3U);
  EXPECT_TRUE(verify_witness(tower, law, w, 3, 1));
  const auto t = w.x.coords[0];
  EXPECT_EQ(t - t.pow(3), FieldElement::one(tower.field(3)));
  const auto b = lang_solve_bruteforce(tower, law, g, 3, 1, 3);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->extension, 3U);
  EXPECT_FALSE(lang_solve_bruteforce(tower, law, g, 3, 1, 2).has_value());
}

TEST(Lang, BruteForceOverF2FindsF4) {
  FieldTower tower(2);
  const auto law = builtin_ga_power(1, 2);
  const auto b = lang_solve_bruteforce(tower, law, const_point(tower, 1, {1}), 2, 1, 4);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->extension, 2U);
  const auto t = b->x.coords[0];
  EXPECT_EQ(t * t + t + FieldElement::one(tower.field(2)), FieldElement::zero(tower.field(2)));
}

TEST(Lang, N2CoordinateRecipe) {
  FieldTower tower(3);
  const auto law = builtin_n2(3);
  const auto g = const_point(tower, 1, {1, 0});
  const auto w = lang_solve_triangular(tower, law, g, 3, 1);
  EXPECT_TRUE(verify_witness(tower, law, w, 3, 1));
  const auto s = w.x.coords[0];
  EXPECT_EQ(s - s.pow(3), FieldElement::one(s.data()));
  EXPECT_TRUE(w.extension == 3U || w.extension == 9U) << w.extension;
}

TEST(Lang, CapsAreEnforced) {
  FieldTower tower(3);
  const auto law = builtin_ga_power(1, 3);
  EXPECT_THROW(lang_solve_triangular(tower, law, const_point(tower, 1, {1}), 3, 1, 2), ResourceLimitError);
  EXPECT_THROW(lang_solve_triangular(tower, law, const_point(tower, 2, {1}), 4, 1), ParameterError);
}

TEST(Lang, RejectsPointOutsideLevel) {
  FieldTower tower(3);
  const auto x = test::all_elements(tower, 2)[4];
  EXPECT_THROW(lang_solve_triangular(tower, builtin_ga_power(1, 3), Point{{x}}, 3, 1), ParameterError);
}

TEST(Lang, FiberInvariance) {
  FieldTower tower(3);
  const auto law = builtin_n2(3);
  const FiniteGroupView view(law, tower, 3, 1);
  for (Ordinal g = 0; g < view.order(); ++g) {
    const auto w = lang_solve_triangular(tower, law, view.point(g), 3, 1);
    ASSERT_TRUE(verify_witness(tower, law, w, 3, 1));
    for (Ordinal h = 0; h < view.order(); ++h) {
      LangWitness shifted = w;
      shifted.x = point_mul(tower, law, w.x, view.point(h));
      ASSERT_TRUE(verify_witness(tower, law, shifted, 3, 1));
    }
    // Off the fiber: multiply by an element outside G(F_3).
    LangWitness off = w;
    const auto y = test::all_elements(tower, 3)[1];
    off.x = point_mul(tower, law, w.x, Point{{y, FieldElement::zero(y.data())}});
    EXPECT_FALSE(verify_witness(tower, law, off, 3, 1));
  }
}

// Both solvers land in the same coset x G^{F^m} and give the same norm image class.
void expect_solvers_agree(const GroupLaw& law, FieldTower& tower, std::uint64_t q, std::uint32_t m,
                          std::uint32_t cap) {
  const FiniteGroupView view(law, tower, q, m);
  const auto table = conjugacy_classes(view);
  for (Ordinal g = 0; g < view.order(); ++g) {
    const auto gp = view.point(g);
    const auto tri = lang_solve_triangular(tower, law, gp, q, m);
    const auto brute = lang_solve_bruteforce(tower, law, gp, q, m, cap);
    ASSERT_TRUE(brute.has_value()) << law.name << " g=" << g;
    ASSERT_TRUE(verify_witness(tower, law, *brute, q, m));
    const auto diff = point_mul(tower, law, point_inv(tower, law, tri.x), brute->x);
    ASSERT_TRUE(view.try_ordinal(diff).has_value()) << law.name << " g=" << g;
    const auto image_tri = view.try_ordinal(point_conj(tower, law, gp, tri.x));
    const auto image_brute = view.try_ordinal(point_conj(tower, law, gp, brute->x));
    ASSERT_TRUE(image_tri && image_brute);
    EXPECT_EQ(table.class_of[*image_tri], table.class_of[*image_brute]);
    EXPECT_LE(brute->extension, tri.extension);
  }
}

TEST(Lang, SolversAgreeOnN2) {
  FieldTower tower(3);
  expect_solvers_agree(builtin_n2(3), tower, 3, 1, 9);
}

TEST(Lang, SolversAgreeOnUl3OverF2) {
  FieldTower tower(2);
  expect_solvers_agree(builtin_ul(3, 2), tower, 2, 1, 8);
}

TEST(Lang, SolversAgreeAtHigherLevel) {
  FieldTower tower(2);
  expect_solvers_agree(builtin_n2(2), tower, 2, 2, 4);
}

}  // namespace
