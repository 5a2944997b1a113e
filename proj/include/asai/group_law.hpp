#pragma once

// Unipotent groups presented as polynomial group laws on affine d-space.
//
// Variables of a multiplication polynomial are x1..xd (indices 0..d-1) and
// y1..yd (indices d..2d-1). The identity is the origin. A law is triangular
// when mul_i = x_i + y_i + h_i with h_i a polynomial in x_j, y_j for j < i.

#include <cstdint>
#include <optional>
#include <random>
#include <regex>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "asai/errors.hpp"
#include "asai/finite_field.hpp"
#include "asai/polynomial.hpp"
#include "asai/table_field.hpp"

namespace asai {

enum class Family {
  kUnipotentUpper,  // ul(n)
  kAdditivePower,   // ga_power(d)
  kNonExample,      // n2
  kCustom,          // parsed from text
};

struct GroupLaw {
  std::string name;
  Residue p = 2;
  std::size_t dim = 0;
  Family family = Family::kCustom;
  std::uint32_t family_param = 0;
  std::vector<Polynomial> mul;  // 2*dim variables each
  std::vector<Polynomial> inv;  // dim variables each
  bool triangular = false;

  bool same_law(const GroupLaw& o) const { return p == o.p && dim == o.dim && mul == o.mul; }
};

/// First coordinate (1-based) where mul(x, 0) = x or mul(0, y) = y fails as a
/// polynomial identity.
inline std::optional<std::size_t> identity_violation(std::span<const Polynomial> mul, std::size_t dim, Residue p) {
  const std::size_t nv = 2 * dim;
  std::vector<Polynomial> kill_y, kill_x;
  for (std::size_t v = 0; v < nv; ++v) {
    const bool is_x = v < dim;
    kill_y.push_back(is_x ? Polynomial::variable(p, nv, v) : Polynomial(p, nv));
    kill_x.push_back(is_x ? Polynomial(p, nv) : Polynomial::variable(p, nv, v));
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (mul[i].substitute(kill_y) != Polynomial::variable(p, nv, i)) return i + 1;
    if (mul[i].substitute(kill_x) != Polynomial::variable(p, nv, dim + i)) return i + 1;
  }
  return std::nullopt;
}

/// First coordinate (1-based) that breaks the triangular shape, with a reason.
inline std::optional<std::pair<std::size_t, std::string>> triangular_violation(std::span<const Polynomial> mul,
                                                                                 std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& poly = mul[i];
    Exponents xi(2 * dim, 0), yi(2 * dim, 0);
    xi[i] = 1;
    yi[dim + i] = 1;
    if (poly.coefficient(xi) != 1 || poly.coefficient(yi) != 1) {
      return std::make_pair(i + 1, "coordinate " + std::to_string(i + 1) + " must contain x" + std::to_string(i + 1) +
                                       " + y" + std::to_string(i + 1) + " with coefficient 1");
    }
    for (const auto& t : poly.terms()) {
      if (t.exps == xi || t.exps == yi) continue;
      for (std::size_t v = 0; v < 2 * dim; ++v) {
        const std::size_t index = v < dim ? v : v - dim;
        if (t.exps[v] > 0 && index >= i) {
          return std::make_pair(i + 1, "coordinate " + std::to_string(i + 1) + " depends on index " +
                                           std::to_string(index + 1) + " (non-triangular)");
        }
      }
    }
  }
  return std::nullopt;
}

/// inv_i = -x_i - h_i(x_{<i}, inv_{<i}(x)), coordinate by coordinate.
inline std::vector<Polynomial> derive_inverse(const GroupLaw& law) {
  if (auto bad = triangular_violation(law.mul, law.dim)) {
    throw ValidationError("cannot derive inverse: " + bad->second, bad->first);
  }
  const std::size_t d = law.dim;
  std::vector<Polynomial> inv;
  for (std::size_t i = 0; i < d; ++i) {
    Exponents xi(2 * d, 0), yi(2 * d, 0);
    xi[i] = 1;
    yi[d + i] = 1;
    const auto h = law.mul[i] - Polynomial::from_terms(law.p, 2 * d, {{1, xi}, {1, yi}});
    std::vector<Polynomial> repl;
    for (std::size_t v = 0; v < d; ++v) repl.push_back(Polynomial::variable(law.p, d, v));
    for (std::size_t v = 0; v < d; ++v) repl.push_back(v < i ? inv[v] : Polynomial(law.p, d));
    inv.push_back(-Polynomial::variable(law.p, d, i) - h.substitute(repl));
  }
  return inv;
}

/// Validates the identity axiom and triangularity, then derives the inverse.
inline GroupLaw make_law(std::string name, Residue p, std::size_t dim, std::vector<Polynomial> mul,
                         Family family = Family::kCustom, std::uint32_t family_param = 0) {
  if (!fp::is_prime(p)) throw ValidationError("characteristic must be prime, got " + std::to_string(p));
  if (dim == 0) throw ValidationError("dimension must be positive");
  if (mul.size() != dim) throw ValidationError("expected " + std::to_string(dim) + " multiplication polynomials");
  for (const auto& m : mul) {
    if (m.num_vars() != 2 * dim || m.characteristic() != p) throw ValidationError("polynomial over the wrong ring");
  }
  if (auto bad = identity_violation(mul, dim, p)) {
    throw ValidationError("identity axiom violated at coordinate " + std::to_string(*bad), *bad);
  }
  if (auto bad = triangular_violation(mul, dim)) throw ValidationError(bad->second, bad->first);
  GroupLaw law{std::move(name), p, dim, family, family_param, std::move(mul), {}, true};
  law.inv = derive_inverse(law);
  return law;
}

/// Index of the strictly-upper entry (i, j), 1-based, in the ul(n) coordinate
/// order (by j - i, then by i).
inline std::size_t ul_coordinate(std::size_t n, std::size_t i, std::size_t j) {
  std::size_t index = 0;
  for (std::size_t dist = 1; dist < j - i; ++dist) index += n - dist;
  return index + (i - 1);
}

inline GroupLaw builtin_ul(std::size_t n, Residue p) {
  if (n < 2) throw ParameterError("ul(n) requires n >= 2");
  const std::size_t d = n * (n - 1) / 2;
  const std::size_t nv = 2 * d;
  std::vector<Polynomial> mul(d);
  for (std::size_t dist = 1; dist < n; ++dist) {
    for (std::size_t i = 1; i + dist <= n; ++i) {
      const std::size_t j = i + dist;
      const std::size_t c = ul_coordinate(n, i, j);
      Polynomial poly = Polynomial::variable(p, nv, c) + Polynomial::variable(p, nv, d + c);
      for (std::size_t k = i + 1; k < j; ++k) {
        poly = poly + Polynomial::variable(p, nv, ul_coordinate(n, i, k)) *
                          Polynomial::variable(p, nv, d + ul_coordinate(n, k, j));
      }
      mul[c] = poly;
    }
  }
  return make_law("ul" + std::to_string(n), p, d, std::move(mul), Family::kUnipotentUpper,
                  static_cast<std::uint32_t>(n));
}

inline GroupLaw builtin_ga_power(std::size_t d, Residue p) {
  if (d < 1) throw ParameterError("ga_power(d) requires d >= 1");
  std::vector<Polynomial> mul;
  for (std::size_t i = 0; i < d; ++i) {
    mul.push_back(Polynomial::variable(p, 2 * d, i) + Polynomial::variable(p, 2 * d, d + i));
  }
  return make_law("ga_power" + std::to_string(d), p, d, std::move(mul), Family::kAdditivePower,
                  static_cast<std::uint32_t>(d));
}

/// (a, b)(a', b') = (a + a', b + b' + a a'^p).
inline GroupLaw builtin_n2(Residue p) {
  std::vector<Polynomial> mul;
  mul.push_back(Polynomial::variable(p, 4, 0) + Polynomial::variable(p, 4, 2));
  mul.push_back(Polynomial::variable(p, 4, 1) + Polynomial::variable(p, 4, 3) +
                Polynomial::variable(p, 4, 0) * Polynomial::variable(p, 4, 2).pow(p));
  return make_law("n2", p, 2, std::move(mul), Family::kNonExample, 0);
}

/// Builtin by family name: "ul" (param n), "ga_power" (param d), "n2".
inline GroupLaw builtin(const std::string& family, std::size_t param, Residue p) {
  if (!fp::is_prime(p)) throw ParameterError("characteristic " + std::to_string(p) + " is not prime");
  if (family == "ul") return builtin_ul(param, p);
  if (family == "ga_power") return builtin_ga_power(param, p);
  if (family == "n2") return builtin_n2(p);
  throw ParameterError("unknown group family '" + family + "'");
}

/// Parses "ul(3)", "ga_power(2)" or "n2".
inline GroupLaw builtin_from_name(const std::string& name, Residue p) {
  static const std::regex with_param(R"(^\s*([a-z_0-9]+)\s*\(\s*(\d+)\s*\)\s*$)");
  std::smatch m;
  if (std::regex_match(name, m, with_param)) return builtin(m[1].str(), std::stoul(m[2].str()), p);
  if (name == "n2") return builtin_n2(p);
  throw ParameterError("unknown group '" + name + "' (expected ul(n), ga_power(d) or n2)");
}

// ---------------------------------------------------------------------------
// Pointwise group operations through an arithmetic adapter.

template <class Ops>
std::vector<typename Ops::Elem> multiply(const GroupLaw& law, std::span<const typename Ops::Elem> a,
                                         std::span<const typename Ops::Elem> b, const Ops& ops) {
  std::vector<typename Ops::Elem> vars;
  vars.reserve(2 * law.dim);
  vars.insert(vars.end(), a.begin(), a.end());
  vars.insert(vars.end(), b.begin(), b.end());
  std::vector<typename Ops::Elem> out;
  out.reserve(law.dim);
  for (const auto& poly : law.mul) out.push_back(evaluate<Ops>(poly, vars, ops));
  return out;
}

template <class Ops>
std::vector<typename Ops::Elem> invert(const GroupLaw& law, std::span<const typename Ops::Elem> a, const Ops& ops) {
  std::vector<typename Ops::Elem> out;
  out.reserve(law.dim);
  for (const auto& poly : law.inv) out.push_back(evaluate<Ops>(poly, a, ops));
  return out;
}

struct ValidationReport {
  bool identity = false;
  bool associativity = false;
  bool associativity_exhaustive = false;
  bool inverse = false;
  bool frobenius_homomorphism = false;
  std::uint64_t triples_checked = 0;
  std::vector<std::string> failures;

  bool ok() const { return identity && associativity && inverse && frobenius_homomorphism; }
};

/// Exhaustive associativity is used when |G(F_q)| is at most this (|G|^3 triples).
inline constexpr std::uint64_t kExhaustiveAssociativityOrder = 216;

namespace detail {

template <class Ops>
std::vector<typename Ops::Elem> random_point(std::size_t dim, const Ops& ops, const TableField* table,
                                              std::mt19937_64& rng) {
  std::vector<typename Ops::Elem> out;
  const auto& field = ops.field();
  std::uniform_int_distribution<Residue> coef(0, field->p() - 1);
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<Residue> c(field->degree());
    for (auto& v : c) v = coef(rng);
    if constexpr (std::is_same_v<typename Ops::Elem, FieldElement>) {
      out.emplace_back(field, std::move(c));
    } else {
      out.push_back(table->encode(FieldElement(field, std::move(c))));
    }
  }
  return out;
}

template <class Ops>
bool associative_on(const GroupLaw& law, std::span<const typename Ops::Elem> a, std::span<const typename Ops::Elem> b,
                    std::span<const typename Ops::Elem> c, const Ops& ops) {
  const auto ab = multiply(law, a, b, ops);
  const auto bc = multiply(law, b, c, ops);
  return multiply<Ops>(law, ab, c, ops) == multiply<Ops>(law, a, bc, ops);
}

}  // namespace detail

/// Checks the group axioms of `law` at level F_q and on samples over F_{q^2}, F_{q^3}.
inline ValidationReport validate_law(const GroupLaw& law, FieldTower& tower, std::uint64_t q,
                                     std::uint64_t sample_budget = 1000) {
  ValidationReport report;
  const auto n = q_exponent(law.p, q);
  const std::size_t d = law.dim;
  std::mt19937_64 rng(0xC0FFEEULL);

  report.identity = !identity_violation(law.mul, d, law.p).has_value();
  if (!report.identity) report.failures.push_back("identity: mul(x, 0) = x or mul(0, y) = y fails");

  // Inverse as polynomial identities: mul(x, inv x) = 0 = mul(inv x, x).
  if (law.inv.size() == d) {
    std::vector<Polynomial> right, left;
    for (std::size_t v = 0; v < d; ++v) right.push_back(Polynomial::variable(law.p, d, v));
    for (std::size_t v = 0; v < d; ++v) right.push_back(law.inv[v]);
    for (std::size_t v = 0; v < d; ++v) left.push_back(law.inv[v]);
    for (std::size_t v = 0; v < d; ++v) left.push_back(Polynomial::variable(law.p, d, v));
    report.inverse = true;
    for (std::size_t i = 0; i < d; ++i) {
      if (!law.mul[i].substitute(right).is_zero() || !law.mul[i].substitute(left).is_zero()) {
        report.inverse = false;
        report.failures.push_back("inverse: coordinate " + std::to_string(i + 1));
        break;
      }
    }
  } else {
    report.failures.push_back("inverse: not derived");
  }

  // Associativity at level F_q.
  report.associativity = true;
  {
    const TableField table(tower.field(n));
    const std::uint64_t size = table.order();
    std::uint64_t group_order = 1;
    for (std::size_t i = 0; i < d && group_order <= kExhaustiveAssociativityOrder; ++i) group_order *= size;
    auto point_of = [&](std::uint64_t ordinal) {
      std::vector<TableField::Elem> pt(d);
      for (std::size_t i = d; i-- > 0;) {
        pt[i] = static_cast<TableField::Elem>(ordinal % size);
        ordinal /= size;
      }
      return pt;
    };
    if (group_order <= kExhaustiveAssociativityOrder) {
      report.associativity_exhaustive = true;
      for (std::uint64_t a = 0; a < group_order && report.associativity; ++a) {
        const auto pa = point_of(a);
        for (std::uint64_t b = 0; b < group_order && report.associativity; ++b) {
          const auto pb = point_of(b);
          const auto ab = multiply<TableField>(law, pa, pb, table);
          for (std::uint64_t c = 0; c < group_order; ++c) {
            const auto pc = point_of(c);
            const auto bc = multiply<TableField>(law, pb, pc, table);
            ++report.triples_checked;
            if (multiply<TableField>(law, ab, pc, table) != multiply<TableField>(law, pa, bc, table)) {
              report.associativity = false;
              report.failures.push_back("associativity fails at ordinals (" + std::to_string(a) + ", " +
                                        std::to_string(b) + ", " + std::to_string(c) + ") over F_q");
              break;
            }
          }
        }
      }
    } else {
      for (std::uint64_t s = 0; s < sample_budget && report.associativity; ++s) {
        const auto a = detail::random_point(d, table, &table, rng);
        const auto b = detail::random_point(d, table, &table, rng);
        const auto c = detail::random_point(d, table, &table, rng);
        ++report.triples_checked;
        if (!detail::associative_on<TableField>(law, a, b, c, table)) {
          report.associativity = false;
          report.failures.push_back("associativity fails on a sampled triple over F_q");
        }
      }
    }
  }

  // Samples over F_{q^2}, F_{q^3}: associativity and F(gh) = F(g)F(h).
  report.frobenius_homomorphism = true;
  for (std::uint32_t level = 2; level <= 3; ++level) {
    const auto field = tower.field(n * level);
    const ExtensionOps ops(field);
    auto frob = [&](const std::vector<FieldElement>& g) {
      std::vector<FieldElement> out;
      for (const auto& c : g) out.push_back(frobenius(tower, c, q));
      return out;
    };
    for (std::uint64_t s = 0; s < sample_budget; ++s) {
      const auto a = detail::random_point(d, ops, nullptr, rng);
      const auto b = detail::random_point(d, ops, nullptr, rng);
      const auto c = detail::random_point(d, ops, nullptr, rng);
      if (report.associativity) {
        ++report.triples_checked;
        if (!detail::associative_on<ExtensionOps>(law, a, b, c, ops)) {
          report.associativity = false;
          report.failures.push_back("associativity fails on a sampled triple over F_q^" + std::to_string(level));
        }
      }
      if (report.frobenius_homomorphism &&
          frob(multiply<ExtensionOps>(law, a, b, ops)) != multiply<ExtensionOps>(law, frob(a), frob(b), ops)) {
        report.frobenius_homomorphism = false;
        report.failures.push_back("Frobenius is not multiplicative over F_q^" + std::to_string(level));
      }
      if (!report.associativity && !report.frobenius_homomorphism) break;
    }
  }
  return report;
}

}  // namespace asai
