#pragma once

// Solving the Lang equation x * F^m(x)^{-1} = g for g in G(F_{q^m}).
//
// For a triangular law the i-th coordinate of x * F^m(x)^{-1} is
// t_i - t_i^{q^m} + V_i(t_1, ..., t_{i-1}), so each coordinate is one
// Artin-Schreier equation t_i^{q^m} - t_i = V_i - g_i over the field
// generated by the earlier coordinates.

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "asai/errors.hpp"
#include "asai/finite_field.hpp"
#include "asai/group_law.hpp"
#include "asai/points.hpp"
#include "asai/table_field.hpp"

namespace asai {

struct LangWitness {
  Point g;                    // at level q^m
  Point x;                    // at level q^{mN}
  std::uint32_t extension{};  // N
};

/// Default cap on the degree over F_p of a witness field: p^d * m * n for q = p^n.
inline std::uint32_t default_lang_degree_cap(const GroupLaw& law, std::uint64_t q, std::uint32_t m) {
  const auto n = q_exponent(law.p, q);
  std::uint64_t cap = static_cast<std::uint64_t>(n) * m;
  for (std::size_t i = 0; i < law.dim; ++i) {
    cap *= law.p;
    if (cap > std::numeric_limits<std::uint32_t>::max() / 2) return std::numeric_limits<std::uint32_t>::max() / 2;
  }
  return static_cast<std::uint32_t>(cap);
}

/// x * F^m(x)^{-1}, evaluated at x's level.
inline Point lang_map(FieldTower& tower, const GroupLaw& law, const Point& x, std::uint64_t q, std::uint32_t m) {
  const auto fx = point_frobenius(tower, x, q, m);
  return point_mul(tower, law, x, point_inv(tower, law, fx));
}

namespace detail {

inline Point base_level_point(FieldTower& tower, const Point& g, std::uint32_t base) {
  if (g.coords.empty()) throw ParameterError("empty point");
  const auto lifted = embed_point(tower, g, lcm_degree(g.level().degree, base));
  auto down = restrict_point(tower, lifted, base);
  if (!down) throw ParameterError("g is not in G(F_q^m)");
  return *down;
}

}  // namespace detail

/// Coordinatewise Artin-Schreier reduction; deterministic (least solution at
/// every coordinate). `degree_cap` bounds the witness field degree over F_p
/// (0 selects default_lang_degree_cap).
inline LangWitness lang_solve_triangular(FieldTower& tower, const GroupLaw& law, const Point& g, std::uint64_t q,
                                         std::uint32_t m, std::uint32_t degree_cap = 0) {
  if (!law.triangular || law.inv.size() != law.dim) throw ValidationError("Lang solver requires a triangular law");
  if (g.coords.size() != law.dim) throw ParameterError("point of wrong dimension");
  const auto n = q_exponent(law.p, q);
  const std::uint32_t base = n * m;
  const auto cap = degree_cap == 0 ? default_lang_degree_cap(law, q, m) : degree_cap;

  const Point g_base = detail::base_level_point(tower, g, base);
  std::uint32_t degree = base;
  Point x = identity_point(tower, law, degree);
  Point target = g_base;
  for (std::size_t i = 0; i < law.dim; ++i) {
    // V_i: coordinate i of x * F^m(x)^{-1} with x_i = 0 (later coordinates are still 0).
    const ExtensionOps ops(tower.field(degree));
    const auto u = point_inv(tower, law, point_frobenius(tower, x, q, m));
    std::vector<FieldElement> vars = x.coords;
    vars.insert(vars.end(), u.coords.begin(), u.coords.end());
    const auto v = evaluate<ExtensionOps>(law.mul[i], vars, ops);
    const auto c = v - target.coords[i];
    auto [t, level] = artin_schreier_solve(tower, c, q, m, cap);
    if (level.degree != degree) {
      degree = level.degree;
      x = embed_point(tower, x, degree);
      target = embed_point(tower, target, degree);
    }
    x.coords[i] = std::move(t);
  }
  if (lang_map(tower, law, x, q, m) != target) {
    throw InternalInconsistency("triangular Lang solution does not satisfy x F(x)^-1 = g");
  }
  return {g_base, std::move(x), degree / base};
}

/// Exhaustive search for x over G(F_{q^{mN}}), N = 1..max_extension, pruned
/// coordinate by coordinate (coordinate i of x F^m(x)^{-1} only depends on
/// x_1..x_i). Returns the least witness at the least feasible N, or nullopt
/// when none exists within the cap (inconclusive, not a proof of absence).
/// Levels whose field exceeds `max_field_order` are skipped.
inline std::optional<LangWitness> lang_solve_bruteforce(FieldTower& tower, const GroupLaw& law, const Point& g,
                                                        std::uint64_t q, std::uint32_t m, std::uint32_t max_extension,
                                                        std::uint64_t max_field_order = std::uint64_t{1} << 20U) {
  if (law.inv.size() != law.dim) throw ValidationError("law has no inverse");
  if (g.coords.size() != law.dim) throw ParameterError("point of wrong dimension");
  const auto n = q_exponent(law.p, q);
  const std::uint32_t base = n * m;
  const Point g_base = detail::base_level_point(tower, g, base);
  const std::size_t d = law.dim;

  for (std::uint32_t big_n = 1; big_n <= max_extension; ++big_n) {
    const std::uint32_t degree = base * big_n;
    if (FieldId{law.p, degree}.order() > max_field_order) continue;
    const TableField field(tower.field(degree));
    const std::uint64_t size = field.order();
    const std::uint64_t units = size - 1;
    // x -> x^{q^m} on codes.
    std::uint64_t e = 1 % units;
    for (std::uint32_t i = 0; i < base; ++i) e = (e * law.p) % units;
    auto frob = [&](TableField::Elem a) { return a == 0 ? a : field.pow(a, e == 0 ? units : e); };

    std::vector<TableField::Elem> target;
    for (const auto& c : g_base.coords) target.push_back(field.encode(tower.embed(c, field.id())));

    std::vector<TableField::Elem> x(d, 0), fx(d, 0), vars(2 * d, 0);
    auto coordinate_matches = [&](std::size_t i) {
      for (std::size_t j = 0; j <= i; ++j) fx[j] = frob(x[j]);
      const auto u = invert<TableField>(law, fx, field);
      for (std::size_t j = 0; j < d; ++j) {
        vars[j] = x[j];
        vars[d + j] = u[j];
      }
      return evaluate<TableField>(law.mul[i], vars, field) == target[i];
    };

    // Depth-first over coordinates, each in ascending code order.
    std::vector<std::uint64_t> next(d, 0);
    std::size_t depth = 0;
    bool found = false;
    while (true) {
      if (next[depth] >= size) {
        x[depth] = 0;
        fx[depth] = 0;
        next[depth] = 0;
        if (depth == 0) break;
        --depth;
        continue;
      }
      x[depth] = static_cast<TableField::Elem>(next[depth]++);
      if (!coordinate_matches(depth)) continue;
      if (depth + 1 == d) {
        found = true;
        break;
      }
      ++depth;
    }
    if (!found) continue;
    Point xp;
    for (auto c : x) xp.coords.push_back(field.decode(c));
    return LangWitness{g_base, std::move(xp), big_n};
  }
  return std::nullopt;
}

/// Re-evaluates x F^m(x)^{-1} and compares with g at a common level.
inline bool verify_witness(FieldTower& tower, const GroupLaw& law, const LangWitness& w, std::uint64_t q,
                           std::uint32_t m) {
  if (w.x.coords.size() != law.dim || w.g.coords.size() != law.dim) return false;
  return points_equal(tower, lang_map(tower, law, w.x, q, m), w.g);
}

}  // namespace asai
