#pragma once

// The norm map N_1 on conjugacy classes of G(F_{q^m}), the twisting operator
// it induces on class functions, twisted conjugacy classes, and centralizer
// witnesses z with z^{-1} F^m(z) = g.
//
// With g = x F^m(x)^{-1}, N_1(g) = F^m(x)^{-1} x = x^{-1} g x; both forms are
// computed and compared on every class.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "asai/errors.hpp"
#include "asai/lang.hpp"
#include "asai/points.hpp"

namespace asai {

struct NormMapOptions {
  std::uint32_t degree_cap = 0;      // 0: default_lang_degree_cap
  bool check_well_defined = true;  // recompute from a second class member
};

struct NormMapResult {
  std::shared_ptr<const ClassTable> table;
  std::uint64_t q = 0;
  std::uint32_t m = 0;
  std::vector<std::uint32_t> perm;      // class -> image class
  std::vector<LangWitness> witnesses;   // per class, for the representative
  std::vector<Ordinal> images;          // N_1(rep) as an ordinal of G(F_{q^m})
};

namespace detail {

// N_1(g) for one element; returns its ordinal and the witness used.
inline std::pair<Ordinal, LangWitness> norm_image(const FiniteGroupView& view, Ordinal g, std::uint32_t degree_cap) {
  auto& tower = view.tower();
  const auto& law = view.law();
  const auto gp = view.point(g);
  auto w = lang_solve_triangular(tower, law, gp, view.q(), view.m(), degree_cap);
  const auto fx = point_frobenius(tower, w.x, view.q(), view.m());
  const auto via_frobenius = point_mul(tower, law, point_inv(tower, law, fx), w.x);
  const auto via_conjugation = point_conj(tower, law, gp, w.x);
  if (!points_equal(tower, via_frobenius, via_conjugation)) {
    throw InternalInconsistency("F^m(x)^-1 x differs from x^-1 g x");
  }
  const auto ordinal = view.try_ordinal(via_frobenius);
  if (!ordinal) throw InternalInconsistency("N_1(g) is not F^m-fixed");
  return {*ordinal, std::move(w)};
}

}  // namespace detail

/// N_1 on the classes of `table`. Throws InternalInconsistency when a check
/// that holds for every connected group fails (image not rational, result
/// depending on the class member, permutation not bijective).
inline NormMapResult norm_map(const FiniteGroupView& view, std::shared_ptr<const ClassTable> table,
                              const NormMapOptions& options = {}) {
  NormMapResult r;
  r.q = view.q();
  r.m = view.m();
  r.table = std::move(table);
  const auto& classes = r.table->classes;
  r.perm.resize(classes.size());
  r.images.resize(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto [image, w] = detail::norm_image(view, classes[c].rep, options.degree_cap);
    r.images[c] = image;
    r.perm[c] = r.table->class_of[image];
    r.witnesses.push_back(std::move(w));
    if (options.check_well_defined && classes[c].size() > 1) {
      const auto other = detail::norm_image(view, classes[c].members.back(), options.degree_cap).first;
      if (r.table->class_of[other] != r.perm[c]) {
        throw InternalInconsistency("N_1 is not constant on class " + std::to_string(c));
      }
    }
  }
  std::vector<bool> hit(classes.size(), false);
  for (auto t : r.perm) {
    if (hit[t]) throw InternalInconsistency("N_1 is not a permutation of classes");
    hit[t] = true;
  }
  return r;
}

inline NormMapResult norm_map(const FiniteGroupView& view, const ClassTable& table, const NormMapOptions& options = {}) {
  return norm_map(view, std::make_shared<const ClassTable>(table), options);
}

/// The twisting operator is the identity iff N_1 fixes every class.
inline bool is_asai_trivial(const NormMapResult& r) {
  for (std::size_t c = 0; c < r.perm.size(); ++c) {
    if (r.perm[c] != c) return false;
  }
  return true;
}

inline std::vector<std::uint32_t> moved_classes(const NormMapResult& r) {
  std::vector<std::uint32_t> out;
  for (std::size_t c = 0; c < r.perm.size(); ++c) {
    if (r.perm[c] != c) out.push_back(static_cast<std::uint32_t>(c));
  }
  return out;
}

/// Order of the class permutation.
inline std::uint64_t permutation_order(const std::vector<std::uint32_t>& perm) {
  std::uint64_t order = 1;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t c = 0; c < perm.size(); ++c) {
    if (seen[c]) continue;
    std::uint64_t len = 0;
    for (std::size_t i = c; !seen[i]; i = perm[i]) {
      seen[i] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

// ---------------------------------------------------------------------------
// Class functions with exact rational values.

using Scalar = boost::rational<std::int64_t>;

struct ClassFunction {
  std::shared_ptr<const ClassTable> table;
  std::vector<Scalar> values;

  static ClassFunction constant(std::shared_ptr<const ClassTable> table, Scalar v) {
    const auto n = table->size();
    return {std::move(table), std::vector<Scalar>(n, v)};
  }
  static ClassFunction delta(std::shared_ptr<const ClassTable> table, std::size_t cls) {
    auto f = constant(std::move(table), 0);
    f.values.at(cls) = 1;
    return f;
  }

  bool operator==(const ClassFunction& o) const { return table == o.table && values == o.values; }
};

/// (Theta f)(c) = f(N_1(c)).
inline ClassFunction asai_apply(const NormMapResult& r, const ClassFunction& f) {
  if (f.table != r.table || f.values.size() != r.perm.size()) {
    throw ParameterError("class function over a different class table");
  }
  ClassFunction out{f.table, std::vector<Scalar>(f.values.size())};
  for (std::size_t c = 0; c < r.perm.size(); ++c) out.values[c] = f.values[r.perm[c]];
  return out;
}

/// Sum over group elements of f1(g) f2(g); conjugation is trivial on rationals.
inline Scalar inner_product(const ClassFunction& f1, const ClassFunction& f2) {
  if (f1.table != f2.table || f1.values.size() != f2.values.size() || f1.values.size() != f1.table->size()) {
    throw ParameterError("class functions over different class tables");
  }
  Scalar acc = 0;
  for (std::size_t c = 0; c < f1.values.size(); ++c) {
    acc += f1.values[c] * f2.values[c] * static_cast<std::int64_t>(f1.table->classes[c].size());
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Twisted conjugacy g ~ F(h)^{-1} g h.

/// Orbit partition of {0..order-1} under g -> endo(h)^{-1} * g * h; orbits
/// are sorted and ordered by least element.
template <class Mul, class Inv, class Endo>
std::vector<std::vector<std::uint32_t>> twisted_classes(std::uint64_t order, Mul&& mul, Inv&& inv, Endo&& endo) {
  constexpr std::uint32_t kUnassigned = ~std::uint32_t{0};
  std::vector<std::uint32_t> endo_inv(order);
  for (std::uint64_t h = 0; h < order; ++h) {
    const std::uint64_t fh = endo(static_cast<std::uint32_t>(h));
    if (fh >= order) throw ParameterError("endomorphism leaves the set");
    const std::uint64_t fh_inv = inv(static_cast<std::uint32_t>(fh));
    if (fh_inv >= order) throw ParameterError("set is not closed under inverse");
    endo_inv[h] = static_cast<std::uint32_t>(fh_inv);
  }
  std::vector<std::uint32_t> orbit_of(order, kUnassigned);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint64_t g = 0; g < order; ++g) {
    if (orbit_of[g] != kUnassigned) continue;
    const auto index = static_cast<std::uint32_t>(out.size());
    std::vector<std::uint32_t> orbit;
    for (std::uint64_t h = 0; h < order; ++h) {
      const std::uint64_t t = mul(mul(endo_inv[h], static_cast<std::uint32_t>(g)), static_cast<std::uint32_t>(h));
      if (t >= order) throw ParameterError("set is not closed under multiplication");
      if (orbit_of[t] == kUnassigned) {
        orbit_of[t] = index;
        orbit.push_back(static_cast<std::uint32_t>(t));
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Centralizer witnesses.

struct Lemma21Witness {
  Point g;                    // class representative, level q^m
  Point z;                    // level q^{mN}
  Point y;                    // in G(F_{q^m}), y^{-1} N_1(g) y = g
  Ordinal y_ordinal = 0;
  std::uint32_t extension{};  // N
  bool in_centralizer = false;
  bool twisted_identity = false;  // z^{-1} F^m(z) = g
};

/// Searches y in G(F_{q^m}) (canonical order, first match) with
/// y^{-1} N_1(g) y = g. If found, z = (x y)^{-1} lies in Z(g) and satisfies
/// z^{-1} F^m(z) = g; both facts are re-checked exactly. Returns nullopt when
/// no y exists, i.e. when N_1 moves the class.
inline std::optional<Lemma21Witness> lemma21_witness(const FiniteGroupView& view, const NormMapResult& r,
                                                     std::size_t cls) {
  if (cls >= r.perm.size()) throw ParameterError("class index out of range");
  auto& tower = view.tower();
  const auto& law = view.law();
  const Ordinal g = r.table->classes[cls].rep;
  const Ordinal image = r.images[cls];
  std::optional<Ordinal> y;
  for (std::uint64_t cand = 0; cand < view.order(); ++cand) {
    if (view.conj(image, static_cast<Ordinal>(cand)) == g) {
      y = static_cast<Ordinal>(cand);
      break;
    }
  }
  if (!y) return std::nullopt;
  const auto& w = r.witnesses[cls];
  const auto gp = view.point(g);
  const auto z = point_inv(tower, law, point_mul(tower, law, w.x, view.point(*y)));
  Lemma21Witness out{gp, z, view.point(*y), *y, w.extension, false, false};
  out.in_centralizer = points_equal(tower, point_mul(tower, law, z, gp), point_mul(tower, law, gp, z));
  const auto twisted = point_mul(tower, law, point_inv(tower, law, z), point_frobenius(tower, z, view.q(), view.m()));
  out.twisted_identity = points_equal(tower, twisted, gp);
  if (!out.in_centralizer || !out.twisted_identity) {
    throw InternalInconsistency("centralizer witness failed its checks for class " + std::to_string(cls));
  }
  return out;
}

}  // namespace asai
