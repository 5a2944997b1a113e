#pragma once

// Table-driven arithmetic for small fields, used by the enumeration kernel.
//
// Elements are integer codes: code(x) = sum_i c_i * p^(k-1-i), so comparing
// codes is the coefficient-lexicographic order on coordinate vectors.
// Multiplication goes through discrete log/exp tables, addition through a
// Zech logarithm table.

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "asai/errors.hpp"
#include "asai/finite_field.hpp"

namespace asai {

class TableField {
 public:
  using Elem = std::uint32_t;
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 24U;

  explicit TableField(std::shared_ptr<const FieldData> field) : field_(std::move(field)) {
    const auto id = field_->id();
    order_ = id.order();
    if (order_ > kMaxOrder) {
      throw ResourceLimitError("field " + to_string(id) + " too large for tables");
    }
    p_ = id.p;
    k_ = id.degree;
    lead_ = static_cast<Elem>(order_ / p_);
    const std::uint64_t units = order_ - 1;

    const auto generator = find_generator();
    exp_.resize(units);
    log_.assign(order_, 0);
    auto cur = FieldElement::one(field_);
    for (std::uint64_t i = 0; i < units; ++i) {
      const auto code = encode(cur);
      exp_[i] = code;
      log_[code] = static_cast<Elem>(i);
      cur *= generator;
    }
    zech_.resize(units);
    for (std::uint64_t i = 0; i < units; ++i) {
      const Elem s = plus_one(exp_[i]);
      zech_[i] = s == 0 ? kNone : log_[s];
    }
    neg_one_ = constant(p_ - 1);
  }

  const std::shared_ptr<const FieldData>& field() const { return field_; }
  const FieldId& id() const { return field_->id(); }
  std::uint64_t order() const { return order_; }

  Elem zero() const { return 0; }
  Elem one() const { return lead_; }
  Elem constant(Residue c) const { return static_cast<Elem>((c % p_) * lead_); }
  bool is_zero(Elem a) const { return a == 0; }

  Elem add(Elem a, Elem b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint64_t units = order_ - 1;
    const std::uint64_t la = log_[a];
    const std::uint64_t d = (log_[b] + units - la) % units;
    const Elem z = zech_[d];
    if (z == kNone) return 0;
    return exp_[(la + z) % units];
  }
  Elem neg(Elem a) const { return p_ == 2 ? a : mul(a, neg_one_); }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    const std::uint64_t s = static_cast<std::uint64_t>(log_[a]) + log_[b];
    const std::uint64_t units = order_ - 1;
    return exp_[s >= units ? s - units : s];
  }

  Elem pow(Elem a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a == 0) return 0;
    const std::uint64_t units = order_ - 1;
    return exp_[(static_cast<unsigned __int128>(log_[a]) * e) % units];
  }

  Elem inv(Elem a) const {
    if (a == 0) throw ParameterError("inverse of zero");
    const std::uint64_t units = order_ - 1;
    return exp_[(units - log_[a]) % units];
  }

  Elem encode(const FieldElement& x) const {
    if (x.field() != id()) throw IncompatibleFieldsError("encoding an element of " + to_string(x.field()));
    std::uint64_t code = 0;
    for (auto c : x.coeffs()) code = code * p_ + c;
    return static_cast<Elem>(code);
  }

  FieldElement decode(Elem code) const {
    std::vector<Residue> c(k_, 0);
    std::uint64_t v = code;
    for (std::uint32_t i = k_; i-- > 0;) {
      c[i] = static_cast<Residue>(v % p_);
      v /= p_;
    }
    return {field_, std::move(c)};
  }

 private:
  static constexpr Elem kNone = std::numeric_limits<Elem>::max();

  Elem plus_one(Elem code) const {
    const Elem digit = code / lead_;
    const Elem bumped = (digit + 1) % p_;
    return code - digit * lead_ + bumped * lead_;
  }

  FieldElement find_generator() const {
    const std::uint64_t units = order_ - 1;
    if (units == 1) return FieldElement::one(field_);
    const auto primes = fp::prime_factors(units);
    for (std::uint64_t code = 1; code < order_; ++code) {
      const auto g = decode(static_cast<Elem>(code));
      bool primitive = true;
      for (auto l : primes) {
        if (g.pow(units / l) == FieldElement::one(field_)) {
          primitive = false;
          break;
        }
      }
      if (primitive) return g;
    }
    throw InternalInconsistency("no primitive element in " + to_string(id()));
  }

  std::shared_ptr<const FieldData> field_;
  std::uint64_t order_ = 0;
  Residue p_ = 2;
  std::uint32_t k_ = 1;
  Elem lead_ = 1;
  Elem neg_one_ = 0;
  std::vector<Elem> exp_;
  std::vector<Elem> log_;
  std::vector<Elem> zech_;
};

}  // namespace asai
