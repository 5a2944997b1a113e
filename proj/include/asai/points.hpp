#pragma once

// Finite groups G(F_{q^m}) of a group law: enumeration, conjugacy classes,
// centralizers and centralizer growth across field levels.
//
// Points of G(F_{q^m}) are numbered by ordinals: with coordinate codes
// c_1..c_d (see TableField) the ordinal is sum_i c_i * Q^(d-i), Q = q^m. The
// ordinal order is the canonical coefficient-lexicographic order and the
// identity has ordinal 0.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asai/errors.hpp"
#include "asai/finite_field.hpp"
#include "asai/group_law.hpp"
#include "asai/table_field.hpp"

namespace asai {

using Ordinal = std::uint32_t;

/// A point of G with all coordinates in one field.
struct Point {
  std::vector<FieldElement> coords;

  const FieldId& level() const { return coords.front().field(); }
  bool operator==(const Point&) const = default;
};

// ---------------------------------------------------------------------------
// Point arithmetic over the tower (any level).

inline std::uint32_t common_degree(const Point& a, const Point& b) {
  return lcm_degree(a.level().degree, b.level().degree);
}

inline Point embed_point(FieldTower& tower, const Point& a, std::uint32_t degree) {
  const FieldId target{tower.characteristic(), degree};
  Point out;
  for (const auto& c : a.coords) out.coords.push_back(tower.embed(c, target));
  return out;
}

/// The point with every coordinate restricted to F_{p^degree}, if possible.
inline std::optional<Point> restrict_point(FieldTower& tower, const Point& a, std::uint32_t degree) {
  const FieldId target{tower.characteristic(), degree};
  Point out;
  for (const auto& c : a.coords) {
    auto r = tower.restrict_to(c, target);
    if (!r) return std::nullopt;
    out.coords.push_back(std::move(*r));
  }
  return out;
}

inline Point identity_point(FieldTower& tower, const GroupLaw& law, std::uint32_t degree) {
  Point out;
  const auto field = tower.field(degree);
  for (std::size_t i = 0; i < law.dim; ++i) out.coords.push_back(FieldElement::zero(field));
  return out;
}

inline Point point_mul(FieldTower& tower, const GroupLaw& law, const Point& a, const Point& b) {
  const auto deg = common_degree(a, b);
  const auto ea = embed_point(tower, a, deg);
  const auto eb = embed_point(tower, b, deg);
  const ExtensionOps ops(tower.field(deg));
  return {multiply<ExtensionOps>(law, ea.coords, eb.coords, ops)};
}

inline Point point_inv(FieldTower& tower, const GroupLaw& law, const Point& a) {
  const ExtensionOps ops(a.coords.front().data());
  return {invert<ExtensionOps>(law, a.coords, ops)};
}

/// Coordinatewise x -> x^{q^m}; a group endomorphism since the law has F_p coefficients.
inline Point point_frobenius(FieldTower& tower, const Point& a, std::uint64_t q, std::uint32_t m) {
  Point out;
  for (const auto& c : a.coords) out.coords.push_back(frobenius(tower, c, q, m));
  return out;
}

inline Point point_conj(FieldTower& tower, const GroupLaw& law, const Point& g, const Point& h) {
  return point_mul(tower, law, point_mul(tower, law, point_inv(tower, law, h), g), h);
}

inline bool points_equal(FieldTower& tower, const Point& a, const Point& b) {
  const auto deg = common_degree(a, b);
  return embed_point(tower, a, deg) == embed_point(tower, b, deg);
}

// ---------------------------------------------------------------------------
// Table-driven evaluation of a law at one enumeration level.

class CompiledLaw {
 public:
  using Elem = TableField::Elem;
  static constexpr std::size_t kMaxDim = 32;

  CompiledLaw(const GroupLaw& law, const TableField& field) : dim_(law.dim), field_(&field) {
    if (law.dim > kMaxDim) throw ResourceLimitError("dimension too large for enumeration");
    for (const auto& poly : law.mul) mul_.push_back(compile(poly));
    for (const auto& poly : law.inv) inv_.push_back(compile(poly));
  }

  std::size_t dim() const { return dim_; }

  void multiply(const Elem* a, const Elem* b, Elem* out) const {
    std::array<Elem, 2 * kMaxDim> vars{};
    std::copy(a, a + dim_, vars.begin());
    std::copy(b, b + dim_, vars.begin() + static_cast<std::ptrdiff_t>(dim_));
    for (std::size_t i = 0; i < dim_; ++i) out[i] = eval(mul_[i], vars.data());
  }

  void invert(const Elem* a, Elem* out) const {
    for (std::size_t i = 0; i < dim_; ++i) out[i] = eval(inv_[i], a);
  }

 private:
  struct Factor {
    std::uint32_t var;
    std::uint32_t exp;
  };
  struct CompiledTerm {
    Elem coef;
    std::vector<Factor> factors;
  };
  using CompiledPoly = std::vector<CompiledTerm>;

  CompiledPoly compile(const Polynomial& poly) const {
    CompiledPoly out;
    for (const auto& t : poly.terms()) {
      CompiledTerm ct{field_->constant(t.coef), {}};
      for (std::size_t v = 0; v < t.exps.size(); ++v) {
        if (t.exps[v] > 0) ct.factors.push_back({static_cast<std::uint32_t>(v), t.exps[v]});
      }
      out.push_back(std::move(ct));
    }
    return out;
  }

  Elem eval(const CompiledPoly& poly, const Elem* vars) const {
    Elem acc = 0;
    for (const auto& t : poly) {
      Elem v = t.coef;
      for (const auto& f : t.factors) {
        const Elem x = vars[f.var];
        if (x == 0) {
          v = 0;
          break;
        }
        v = field_->mul(v, f.exp == 1 ? x : field_->pow(x, f.exp));
      }
      acc = field_->add(acc, v);
    }
    return acc;
  }

  std::size_t dim_;
  const TableField* field_;
  std::vector<CompiledPoly> mul_;
  std::vector<CompiledPoly> inv_;
};

/// The finite group G(F_{q^m}) with canonically ordered elements.
///
/// Keeps a pointer to the tower, which must outlive the view.
class FiniteGroupView {
 public:
  static constexpr std::uint64_t kDefaultMaxOrder = 2'000'000;

  FiniteGroupView(const GroupLaw& law, FieldTower& tower, std::uint64_t q, std::uint32_t m,
                  std::uint64_t max_order = kDefaultMaxOrder)
      : law_(law), tower_(&tower), q_(q), m_(m) {
    if (tower.characteristic() != law.p) throw ParameterError("tower characteristic differs from the law's");
    if (m == 0) throw ParameterError("m must be positive");
    const auto n = q_exponent(law.p, q);
    degree_ = n * m;
    // Order check before any table is built.
    long double est = std::pow(static_cast<long double>(law.p), static_cast<long double>(degree_) * law.dim);
    if (est > static_cast<long double>(max_order) || est > static_cast<long double>(1U << 31U)) {
      throw ResourceLimitError("group order " + std::to_string(law.p) + "^" + std::to_string(degree_ * law.dim) +
                               " exceeds cap " + std::to_string(max_order));
    }
    field_ = std::make_unique<TableField>(tower.field(degree_));
    compiled_ = std::make_unique<CompiledLaw>(law_, *field_);
    field_size_ = field_->order();
    order_ = 1;
    for (std::size_t i = 0; i < law.dim; ++i) order_ *= field_size_;
    inverse_.resize(order_);
    std::array<CompiledLaw::Elem, CompiledLaw::kMaxDim> a{}, out{};
    for (std::uint64_t g = 0; g < order_; ++g) {
      decode(static_cast<Ordinal>(g), a.data());
      compiled_->invert(a.data(), out.data());
      inverse_[g] = encode(out.data());
    }
    build_generators();
  }

  FiniteGroupView(const FiniteGroupView&) = delete;
  FiniteGroupView& operator=(const FiniteGroupView&) = delete;

  const GroupLaw& law() const { return law_; }
  FieldTower& tower() const { return *tower_; }
  std::uint64_t q() const { return q_; }
  std::uint32_t m() const { return m_; }
  /// Degree over F_p of the coordinate field F_{q^m}.
  std::uint32_t degree() const { return degree_; }
  FieldId level() const { return {law_.p, degree_}; }
  const TableField& field() const { return *field_; }
  std::uint64_t order() const { return order_; }

  Ordinal mul(Ordinal a, Ordinal b) const {
    std::array<CompiledLaw::Elem, CompiledLaw::kMaxDim> ca{}, cb{}, out{};
    decode(a, ca.data());
    decode(b, cb.data());
    compiled_->multiply(ca.data(), cb.data(), out.data());
    return encode(out.data());
  }
  Ordinal inv(Ordinal a) const { return inverse_[a]; }
  /// h^{-1} g h.
  Ordinal conj(Ordinal g, Ordinal h) const { return mul(mul(inverse_[h], g), h); }

  /// Coordinatewise x -> x^{q^e} restricted to this level.
  Ordinal frobenius(Ordinal a, std::uint32_t e = 1) const {
    const auto pt = frobenius_point(point(a), e);
    return *try_ordinal(pt);
  }

  Point point(Ordinal a) const {
    std::array<CompiledLaw::Elem, CompiledLaw::kMaxDim> c{};
    decode(a, c.data());
    Point out;
    for (std::size_t i = 0; i < law_.dim; ++i) out.coords.push_back(field_->decode(c[i]));
    return out;
  }

  /// Ordinal of a point lying in G(F_{q^m}) (given at this level, a subfield
  /// or an extension); nullopt when it is not F^m-fixed.
  std::optional<Ordinal> try_ordinal(const Point& pt) const {
    if (pt.coords.size() != law_.dim) throw ParameterError("point of wrong dimension");
    std::array<CompiledLaw::Elem, CompiledLaw::kMaxDim> c{};
    for (std::size_t i = 0; i < law_.dim; ++i) {
      const auto& x = pt.coords[i];
      std::optional<FieldElement> here;
      if (degree_ % x.field().degree == 0) {
        here = tower_->embed(x, level());
      } else if (x.field().degree % degree_ == 0) {
        here = tower_->restrict_to(x, level());
      } else {
        const auto both = lcm_degree(degree_, x.field().degree);
        here = tower_->restrict_to(tower_->embed(x, {law_.p, both}), level());
      }
      if (!here) return std::nullopt;
      c[i] = field_->encode(*here);
    }
    return encode(c.data());
  }

  Ordinal ordinal(const Point& pt) const {
    auto o = try_ordinal(pt);
    if (!o) throw ParameterError("point is not in G(F_q^m)");
    return *o;
  }

  /// Greedy generating set: least ordinals outside the subgroup generated so far.
  const std::vector<Ordinal>& generators() const { return generators_; }

  bool is_abelian() const {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      for (std::size_t j = i + 1; j < generators_.size(); ++j) {
        if (mul(generators_[i], generators_[j]) != mul(generators_[j], generators_[i])) return false;
      }
    }
    return true;
  }

 private:
  void build_generators() {
    std::vector<bool> in(order_, false);
    std::vector<Ordinal> elements{0};
    in[0] = true;
    for (std::uint64_t g = 1; g < order_ && elements.size() < order_; ++g) {
      if (in[g]) continue;
      const auto gen = static_cast<Ordinal>(g);
      generators_.push_back(gen);
      // Old elements are closed under the old generators; extend by s * gen, then close.
      std::size_t head = elements.size();
      const std::size_t old = elements.size();
      for (std::size_t i = 0; i < old; ++i) {
        const auto x = mul(elements[i], gen);
        if (!in[x]) {
          in[x] = true;
          elements.push_back(x);
        }
      }
      for (; head < elements.size(); ++head) {
        for (auto h : generators_) {
          const auto x = mul(elements[head], h);
          if (!in[x]) {
            in[x] = true;
            elements.push_back(x);
          }
        }
      }
    }
  }

  Point frobenius_point(const Point& pt, std::uint32_t e) const {
    Point out;
    for (const auto& c : pt.coords) out.coords.push_back(asai::frobenius(*tower_, c, q_, e));
    return out;
  }

  void decode(Ordinal a, CompiledLaw::Elem* out) const {
    std::uint64_t v = a;
    for (std::size_t i = law_.dim; i-- > 0;) {
      out[i] = static_cast<CompiledLaw::Elem>(v % field_size_);
      v /= field_size_;
    }
  }
  Ordinal encode(const CompiledLaw::Elem* c) const {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < law_.dim; ++i) v = v * field_size_ + c[i];
    return static_cast<Ordinal>(v);
  }

  GroupLaw law_;
  FieldTower* tower_;
  std::uint64_t q_;
  std::uint32_t m_;
  std::uint32_t degree_ = 1;
  std::unique_ptr<TableField> field_;
  std::unique_ptr<CompiledLaw> compiled_;
  std::uint64_t field_size_ = 0;
  std::vector<Ordinal> generators_;
  std::uint64_t order_ = 0;
  std::vector<Ordinal> inverse_;
};

struct ConjugacyClass {
  Ordinal rep = 0;               // least member
  std::vector<Ordinal> members;  // ascending

  std::size_t size() const { return members.size(); }
  bool operator==(const ConjugacyClass&) const = default;
};

struct ClassTable {
  std::vector<ConjugacyClass> classes;  // ordered by representative
  std::vector<std::uint32_t> class_of;  // ordinal -> class index

  std::size_t size() const { return classes.size(); }
  bool operator==(const ClassTable&) const = default;
};

/// Orbit partition under conjugation; classes ordered by least representative.
inline ClassTable conjugacy_classes(const FiniteGroupView& view) {
  constexpr std::uint32_t kUnassigned = ~std::uint32_t{0};
  const std::uint64_t n = view.order();
  ClassTable table;
  table.class_of.assign(n, kUnassigned);
  for (std::uint64_t g = 0; g < n; ++g) {
    if (table.class_of[g] != kUnassigned) continue;
    const auto index = static_cast<std::uint32_t>(table.classes.size());
    ConjugacyClass cls;
    cls.rep = static_cast<Ordinal>(g);
    cls.members.push_back(cls.rep);
    table.class_of[g] = index;
    // Conjugation by generators reaches the whole orbit.
    for (std::size_t head = 0; head < cls.members.size(); ++head) {
      for (auto h : view.generators()) {
        const Ordinal c = view.conj(cls.members[head], h);
        if (table.class_of[c] == kUnassigned) {
          table.class_of[c] = index;
          cls.members.push_back(c);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    table.classes.push_back(std::move(cls));
  }
  return table;
}

/// Ordinals h with hg = gh, ascending.
inline std::vector<Ordinal> centralizer(const FiniteGroupView& view, Ordinal g) {
  if (g >= view.order()) throw ParameterError("element not in the group");
  std::vector<Ordinal> out;
  for (std::uint64_t h = 0; h < view.order(); ++h) {
    const auto hh = static_cast<Ordinal>(h);
    if (view.mul(hh, g) == view.mul(g, hh)) out.push_back(hh);
  }
  return out;
}

inline std::vector<Ordinal> centralizer(const FiniteGroupView& view, const Point& g) {
  return centralizer(view, view.ordinal(g));
}

/// |Z(g)(F_{q^{mN}})| for N in [first_n, last_n]; g must lie in G(F_{q^m}).
inline std::vector<std::pair<std::uint32_t, std::uint64_t>> centralizer_counts(
    const GroupLaw& law, FieldTower& tower, const Point& g, std::uint64_t q, std::uint32_t m, std::uint32_t first_n,
    std::uint32_t last_n, std::uint64_t max_order = FiniteGroupView::kDefaultMaxOrder) {
  if (first_n == 0 || last_n < first_n) throw ParameterError("invalid N range");
  const auto n = q_exponent(law.p, q);
  if (!restrict_point(tower, embed_point(tower, g, lcm_degree(g.level().degree, n * m)), n * m)) {
    throw ParameterError("g is not in G(F_q^m)");
  }
  std::vector<std::pair<std::uint32_t, std::uint64_t>> out;
  for (std::uint32_t big_n = first_n; big_n <= last_n; ++big_n) {
    const FiniteGroupView view(law, tower, q, m * big_n, max_order);
    out.emplace_back(big_n, centralizer(view, g).size());
  }
  return out;
}

/// Dimension and component-count estimates read off centralizer counts.
/// Heuristic: the component value counts F^{mN}-fixed components only.
struct GrowthEstimate {
  std::optional<std::uint32_t> dimension;
  std::optional<std::uint64_t> components;
  bool heuristic = true;
};

inline GrowthEstimate estimate_growth(std::span<const std::pair<std::uint32_t, std::uint64_t>> counts,
                                      std::uint64_t level_size) {
  GrowthEstimate est;
  if (counts.size() < 2 || level_size < 2) return est;
  std::optional<std::uint32_t> dim;
  for (std::size_t i = 0; i + 1 < counts.size(); ++i) {
    if (counts[i + 1].first != counts[i].first + 1) return est;
    if (counts[i].second == 0 || counts[i + 1].second % counts[i].second != 0) return est;
    std::uint64_t ratio = counts[i + 1].second / counts[i].second;
    std::uint32_t e = 0;
    while (ratio > 1 && ratio % level_size == 0) {
      ratio /= level_size;
      ++e;
    }
    if (ratio != 1) return est;
    if (dim && *dim != e) return est;
    dim = e;
  }
  est.dimension = dim;
  std::optional<std::uint64_t> comp;
  for (const auto& [big_n, count] : counts) {
    unsigned __int128 denom = 1;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(big_n) * *dim; ++i) denom *= level_size;
    if (count % denom != 0) return est;
    const auto c = static_cast<std::uint64_t>(count / denom);
    if (comp && *comp != c) return est;
    comp = c;
  }
  est.components = comp;
  return est;
}

}  // namespace asai
