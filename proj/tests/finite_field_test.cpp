#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "asai/finite_field.hpp"
#include "asai/fp_linalg.hpp"
#include "asai/table_field.hpp"
#include "test_support.hpp"

namespace {

using asai::FieldElement;
using asai::FieldId;
using asai::FieldTower;
using asai::Residue;
using asai::test::all_elements;

// Independent oracle: least monic irreducible by trial division, coefficients
// compared constant term first.
std::vector<Residue> naive_poly_mod(std::vector<Residue> a, const std::vector<Residue>& m, Residue p) {
  const auto dm = m.size() - 1;
  const Residue lead_inv = asai::fp::inv(m.back(), p);
  while (a.size() > dm) {
    const Residue f = asai::fp::mul(a.back(), lead_inv, p);
    const auto shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = asai::fp::sub(a[shift + i], asai::fp::mul(f, m[i], p), p);
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

bool naive_irreducible(const std::vector<Residue>& f, Residue p) {
  const auto k = f.size() - 1;
  for (std::size_t d = 1; 2 * d <= k; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<Residue> g(d + 1, 0);
      g[d] = 1;
      auto c = code;
      for (std::size_t i = 0; i < d; ++i, c /= p) g[i] = static_cast<Residue>(c % p);
      if (naive_poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<Residue> naive_least_irreducible(Residue p, std::uint32_t k) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    // Lexicographic with c_0 most significant.
    std::vector<Residue> f(k + 1, 0);
    f[k] = 1;
    auto c = code;
    for (std::uint32_t i = k; i-- > 0; c /= p) f[i] = static_cast<Residue>(c % p);
    if (naive_irreducible(f, p)) return f;
  }
  return {};
}

TEST(FieldTower, ModulusIsLeastIrreducible) {
  for (auto [p, max_k] : {std::pair<Residue, std::uint32_t>{2, 8}, {3, 5}, {5, 3}, {7, 2}}) {
    FieldTower tower(p);
    for (std::uint32_t k = 2; k <= max_k; ++k) {
      const auto& mod = tower.field(k)->modulus();
      std::vector<Residue> got(mod.begin(), mod.end());
      EXPECT_EQ(got, naive_least_irreducible(p, k)) << "p=" << p << " k=" << k;
    }
  }
}

TEST(FieldTower, FrozenModuli) {
  FieldTower t2(2), t3(3);
  auto coeffs = [](FieldTower& t, std::uint32_t k) {
    const auto& m = t.field(k)->modulus();
    return std::vector<Residue>(m.begin(), m.end());
  };
  EXPECT_EQ(coeffs(t3, 2), (std::vector<Residue>{1, 0, 1}));
  EXPECT_EQ(coeffs(t3, 3), (std::vector<Residue>{1, 0, 2, 1}));
  EXPECT_EQ(coeffs(t2, 2), (std::vector<Residue>{1, 1, 1}));
  EXPECT_EQ(coeffs(t2, 3), (std::vector<Residue>{1, 0, 1, 1}));
  EXPECT_EQ(coeffs(t2, 8), (std::vector<Residue>{1, 0, 0, 0, 1, 1, 0, 1, 1}));
}

TEST(FieldTower, Cardinalities) {
  FieldTower t3(3);
  EXPECT_EQ(t3.make_field(1), (FieldId{3, 1}));
  EXPECT_EQ(all_elements(t3, 1).size(), 3U);
  EXPECT_EQ(all_elements(t3, 2).size(), 9U);
}

TEST(FieldTower, RejectsCompositeCharacteristic) { EXPECT_THROW(FieldTower(4), asai::ParameterError); }

// All fields with at most 81 elements.
TEST(FieldAxioms, ExhaustiveUpTo81) {
  for (Residue p : {2U, 3U, 5U, 7U, 11U, 13U, 17U, 19U, 23U, 29U, 31U, 37U, 41U, 43U, 47U, 53U, 59U, 61U, 67U, 71U,
                    73U, 79U}) {
    FieldTower tower(p);
    std::uint64_t order = p;
    for (std::uint32_t k = 1; order <= 81; ++k, order *= p) {
      const auto els = all_elements(tower, k);
      const auto zero = FieldElement::zero(tower.field(k));
      const auto one = FieldElement::one(tower.field(k));
      for (const auto& a : els) {
        ASSERT_EQ(a + zero, a);
        ASSERT_EQ(a * one, a);
        ASSERT_TRUE((a + (-a)).is_zero());
        if (!a.is_zero()) ASSERT_EQ(a * a.inverse(), one);
        ASSERT_EQ(a.pow(order), a);
        for (const auto& b : els) {
          ASSERT_EQ(a + b, b + a);
          ASSERT_EQ(a * b, b * a);
          for (const auto& c : els) {
            ASSERT_EQ((a + b) + c, a + (b + c));
            ASSERT_EQ((a * b) * c, a * (b * c));
            ASSERT_EQ(a * (b + c), a * b + a * c);
          }
        }
      }
    }
  }
}

TEST(TableField, AgreesWithPolynomialArithmetic) {
  for (auto [p, k] : {std::pair<Residue, std::uint32_t>{2, 4}, {3, 3}, {5, 2}}) {
    FieldTower tower(p);
    const asai::TableField f(tower.field(k));
    for (std::uint64_t a = 0; a < f.order(); ++a) {
      const auto ea = f.decode(static_cast<asai::TableField::Elem>(a));
      ASSERT_EQ(f.encode(ea), a);
      for (std::uint64_t b = 0; b < f.order(); ++b) {
        const auto eb = f.decode(static_cast<asai::TableField::Elem>(b));
        ASSERT_EQ(f.decode(f.add(static_cast<asai::TableField::Elem>(a), static_cast<asai::TableField::Elem>(b))),
                  ea + eb);
        ASSERT_EQ(f.decode(f.mul(static_cast<asai::TableField::Elem>(a), static_cast<asai::TableField::Elem>(b))),
                  ea * eb);
      }
    }
  }
}

TEST(Embed, ZeroAndOne) {
  FieldTower t3(3), t2(2);
  EXPECT_TRUE(t3.embed(t3.constant(t3.make_field(1), 0), t3.make_field(2)).is_zero());
  EXPECT_EQ(t2.embed(t2.constant(t2.make_field(1), 1), t2.make_field(6)), FieldElement::one(t2.field(6)));
  EXPECT_THROW(t2.embed(all_elements(t2, 2)[2], t2.make_field(3)), asai::IncompatibleFieldsError);
}

// F_64 receives F_4 and F_8 as ring homomorphisms that agree on F_2.
TEST(Embed, F64Homomorphisms) {
  FieldTower tower(2);
  const auto target = tower.make_field(6);
  for (std::uint32_t sub : {2U, 3U}) {
    const auto els = all_elements(tower, sub);
    for (const auto& a : els) {
      for (const auto& b : els) {
        ASSERT_EQ(tower.embed(a + b, target), tower.embed(a, target) + tower.embed(b, target));
        ASSERT_EQ(tower.embed(a * b, target), tower.embed(a, target) * tower.embed(b, target));
      }
    }
    for (const auto& c : all_elements(tower, 1)) {
      ASSERT_EQ(tower.embed(tower.embed(c, tower.make_field(sub)), target), tower.embed(c, target));
    }
  }
}

TEST(Embed, GeneratorOfF4HasOrderThreeInF64) {
  FieldTower tower(2);
  const auto els = all_elements(tower, 2);
  const auto one = FieldElement::one(tower.field(6));
  int generators = 0;
  for (const auto& g : els) {
    if (g.is_zero() || g == FieldElement::one(tower.field(2))) continue;
    ++generators;
    const auto e = tower.embed(g, tower.make_field(6));
    EXPECT_NE(e, one);
    EXPECT_NE(e * e, one);
    EXPECT_EQ(e * e * e, one);
  }
  EXPECT_EQ(generators, 2);
}

// a | b | c: embedding through b equals embedding directly.
TEST(Embed, CompatibleTriangles) {
  for (auto [p, max_c] : {std::pair<Residue, std::uint32_t>{2, 12}, {3, 6}}) {
    FieldTower tower(p);
    for (std::uint32_t c = 2; c <= max_c; ++c) {
      for (std::uint32_t b = 1; b < c; ++b) {
        if (c % b) continue;
        for (std::uint32_t a = 1; a < b; ++a) {
          if (b % a) continue;
          for (const auto& x : all_elements(tower, a)) {
            ASSERT_EQ(tower.embed(tower.embed(x, tower.make_field(b)), tower.make_field(c)),
                      tower.embed(x, tower.make_field(c)))
                << "p=" << p << " " << a << "|" << b << "|" << c;
          }
        }
      }
    }
  }
}

TEST(Embed, RestrictInvertsEmbed) {
  FieldTower tower(3);
  const auto f6 = tower.make_field(6);
  int in_f9 = 0;
  for (const auto& x : all_elements(tower, 2)) {
    auto back = tower.restrict_to(tower.embed(x, f6), tower.make_field(2));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, x);
  }
  for (const auto& y : all_elements(tower, 6)) {
    if (tower.restrict_to(y, tower.make_field(2))) ++in_f9;
  }
  EXPECT_EQ(in_f9, 9);
}

TEST(Frobenius, PrimeFieldFixed) {
  FieldTower tower(3);
  for (const auto& x : all_elements(tower, 1)) EXPECT_EQ(asai::frobenius(tower, x, 3), x);
}

TEST(Frobenius, GeneratorOfF9Moves) {
  FieldTower tower(3);
  // Every element of order 8.
  const auto one = FieldElement::one(tower.field(2));
  for (const auto& x : all_elements(tower, 2)) {
    if (x.is_zero() || x.pow(4) == one) continue;
    EXPECT_NE(asai::frobenius(tower, x, 3), x);
    EXPECT_EQ(asai::frobenius(tower, x, 3), x.pow(3));
  }
}

TEST(Frobenius, PowerMFixesLevel) {
  struct Case {
    Residue p;
    std::uint64_t q;
    std::uint32_t m;
  };
  for (auto c : {Case{3, 3, 2}, Case{3, 9, 1}, Case{2, 4, 3}, Case{2, 2, 5}, Case{3, 3, 3}}) {
    FieldTower tower(c.p);
    const auto degree = asai::q_exponent(c.p, c.q) * c.m;
    for (const auto& x : all_elements(tower, degree)) {
      ASSERT_EQ(asai::frobenius(tower, x, c.q, c.m), x);
      auto y = x;
      for (std::uint32_t i = 0; i < c.m; ++i) y = asai::frobenius(tower, y, c.q);
      ASSERT_EQ(y, x);
    }
  }
}

TEST(Trace, SubfieldElementScales) {
  FieldTower tower(3);
  for (const auto& x : all_elements(tower, 1)) {
    const auto up = tower.embed(x, tower.make_field(4));
    EXPECT_EQ(asai::trace_to(tower, up, tower.make_field(1)), x.scaled(4 % 3));
  }
}

TEST(Trace, RootOfGoldenPolynomial) {
  FieldTower tower(3);
  int roots = 0;
  for (const auto& g : all_elements(tower, 2)) {
    if (!(g * g - g - FieldElement::one(tower.field(2))).is_zero()) continue;
    ++roots;
    EXPECT_EQ(asai::trace_to(tower, g, tower.make_field(1)), tower.constant(tower.make_field(1), 1));
  }
  EXPECT_EQ(roots, 2);
}

TEST(Trace, Additive) {
  FieldTower tower(2);
  const auto els = all_elements(tower, 6);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
  for (int i = 0; i < 200; ++i) {
    const auto& a = els[pick(rng)];
    const auto& b = els[pick(rng)];
    for (std::uint32_t sub : {1U, 2U, 3U}) {
      const auto f = tower.make_field(sub);
      EXPECT_EQ(asai::trace_to(tower, a + b, f), asai::trace_to(tower, a, f) + asai::trace_to(tower, b, f));
    }
  }
}

TEST(ArtinSchreier, ZeroStaysPut) {
  FieldTower tower(3);
  const auto [t, level] = asai::artin_schreier_solve(tower, FieldElement::zero(tower.field(2)), 3, 1);
  EXPECT_TRUE(t.is_zero());
  EXPECT_EQ(level, tower.make_field(2));
}

TEST(ArtinSchreier, ExtendsWhenNeeded) {
  FieldTower t2(2), t3(3);
  for (const auto& x : all_elements(t2, 1)) EXPECT_NE(x * x - x, FieldElement::one(t2.field(1)));
  auto [r2, l2] = asai::artin_schreier_solve(t2, FieldElement::one(t2.field(1)), 2, 1);
  EXPECT_EQ(l2, t2.make_field(2));
  EXPECT_EQ(r2.pow(2) - r2, FieldElement::one(t2.field(2)));

  auto [r3, l3] = asai::artin_schreier_solve(t3, FieldElement::one(t3.field(1)), 3, 1);
  EXPECT_EQ(l3, t3.make_field(3));
  EXPECT_EQ(r3.pow(3) - r3, FieldElement::one(t3.field(3)));
}

TEST(ArtinSchreier, CapIsEnforced) {
  FieldTower tower(3);
  EXPECT_THROW(asai::artin_schreier_solve(tower, FieldElement::one(tower.field(1)), 3, 1, 2),
               asai::ResourceLimitError);
}

// Every output re-verifies and is the least root at its level (brute-force oracle).
TEST(ArtinSchreier, LeastRootAndVerified) {
  struct Case {
    Residue p;
    std::uint64_t q;
    std::uint32_t m;
    std::uint32_t c_degree;
  };
  for (auto cs : {Case{2, 2, 1, 2}, Case{2, 2, 2, 2}, Case{2, 4, 1, 2}, Case{3, 3, 1, 2}, Case{3, 3, 2, 2},
                  Case{3, 9, 1, 2}, Case{2, 2, 1, 3}, Case{5, 5, 1, 1}}) {
    FieldTower tower(cs.p);
    for (const auto& c : all_elements(tower, cs.c_degree)) {
      const auto [t, level] = asai::artin_schreier_solve(tower, c, cs.q, cs.m);
      ASSERT_EQ(t.field(), level);
      const auto ce = tower.embed(c, level);
      ASSERT_EQ(asai::frobenius(tower, t, cs.q, cs.m) - t, ce);
      std::optional<FieldElement> least;
      for (const auto& u : all_elements(tower, level.degree)) {
        if (asai::frobenius(tower, u, cs.q, cs.m) - u == ce) {
          least = u;
          break;
        }
      }
      ASSERT_TRUE(least.has_value());
      EXPECT_EQ(*least, t);
    }
  }
}

TEST(FpLinalg, LeastSolutionMatchesEnumeration) {
  const Residue p = 3;
  std::mt19937 rng(11);
  std::uniform_int_distribution<Residue> digit(0, p - 1);
  for (int trial = 0; trial < 50; ++trial) {
    asai::fp::Matrix a(3, 4, p);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 4; ++c) a(r, c) = trial % 3 == 0 && r == 2 ? 0 : digit(rng);
    const std::vector<Residue> b{digit(rng), digit(rng), digit(rng)};
    const asai::fp::AffineSolver solver(a);
    std::optional<std::vector<Residue>> least;
    for (std::uint32_t code = 0; code < 81 && !least; ++code) {
      std::vector<Residue> x{code / 27 % 3, code / 9 % 3, code / 3 % 3, code % 3};
      if (a.apply(x) == b) least = x;
    }
    EXPECT_EQ(solver.least_solution(b), least);
  }
}

}  // namespace
