#pragma once

// Finite fields F_{p^k} realized inside a compatible tower.
//
// Every field F_{p^k} is F_p[t]/(f_k) with f_k the lexicographically least monic
// irreducible of degree k (coefficients compared from the constant term).
// Embeddings F_{p^a} -> F_{p^c} form a compatible lattice: for a | b | c the
// composite a -> b -> c equals the direct a -> c. Elements are stored as
// coordinate vectors in the power basis 1, t, ..., t^{k-1}.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "asai/errors.hpp"
#include "asai/fp_linalg.hpp"
#include "asai/fp_poly.hpp"

namespace asai {

struct FieldId {
  Residue p = 2;
  std::uint32_t degree = 1;

  std::uint64_t order() const {
    std::uint64_t n = 1;
    for (std::uint32_t i = 0; i < degree; ++i) n *= p;
    return n;
  }

  auto operator<=>(const FieldId&) const = default;
};

inline std::string to_string(const FieldId& f) {
  return "F_" + std::to_string(f.p) + "^" + std::to_string(f.degree);
}

/// Immutable description of one field F_p[t]/(modulus).
class FieldData {
 public:
  FieldData(FieldId id, fp_poly::Poly modulus) : id_(id), modulus_(std::move(modulus)) {
    frobenius_ = fp::Matrix(id_.degree, id_.degree, id_.p);
    // Column j holds the coordinates of (t^j)^p.
    const fp_poly::Poly t_to_p = fp_poly::powmod({0, 1}, id_.p, modulus_, id_.p);
    fp_poly::Poly col{1};
    for (std::uint32_t j = 0; j < id_.degree; ++j) {
      for (std::uint32_t i = 0; i < id_.degree && i < col.size(); ++i) frobenius_(i, j) = col[i];
      col = fp_poly::mulmod(col, t_to_p, modulus_, id_.p);
    }
  }

  const FieldId& id() const { return id_; }
  Residue p() const { return id_.p; }
  std::uint32_t degree() const { return id_.degree; }
  const fp_poly::Poly& modulus() const { return modulus_; }
  /// Matrix of x -> x^p on coordinates.
  const fp::Matrix& frobenius_matrix() const { return frobenius_; }

  std::vector<Residue> multiply(std::span<const Residue> a, std::span<const Residue> b) const {
    const std::size_t k = id_.degree;
    const Residue p = id_.p;
    std::vector<std::uint64_t> acc(2 * k - 1, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < k; ++j) acc[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
      if ((i & 0xFFU) == 0xFFU) {
        for (auto& v : acc) v %= p;
      }
    }
    for (auto& v : acc) v %= p;
    // Reduce using t^k = -(m_0 + ... + m_{k-1} t^{k-1}).
    for (std::size_t i = 2 * k - 1; i-- > k;) {
      const std::uint64_t c = acc[i];
      if (c == 0) continue;
      const std::size_t shift = i - k;
      for (std::size_t j = 0; j < k; ++j) {
        acc[shift + j] = (acc[shift + j] + (p - c) * modulus_[j]) % p;
      }
      acc[i] = 0;
    }
    std::vector<Residue> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = static_cast<Residue>(acc[i] % p);
    return out;
  }

  std::vector<Residue> inverse(std::span<const Residue> a) const {
    fp_poly::Poly poly(a.begin(), a.end());
    fp_poly::trim(poly);
    if (poly.empty()) throw ParameterError("inverse of zero in " + to_string(id_));
    auto inv = fp_poly::invmod(poly, modulus_, id_.p);
    inv.resize(id_.degree, 0);
    return inv;
  }

 private:
  FieldId id_;
  fp_poly::Poly modulus_;
  fp::Matrix frobenius_;
};

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(std::shared_ptr<const FieldData> field, std::vector<Residue> coeffs)
      : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (!field_) throw ParameterError("field element without a field");
    if (coeffs_.size() != field_->degree()) throw ParameterError("coefficient count does not match field degree");
    for (auto& c : coeffs_) {
      if (c >= field_->p()) throw ParameterError("coefficient out of range");
    }
  }

  static FieldElement zero(std::shared_ptr<const FieldData> field) {
    const auto k = field->degree();
    return {std::move(field), std::vector<Residue>(k, 0)};
  }
  static FieldElement constant(std::shared_ptr<const FieldData> field, std::int64_t value) {
    std::vector<Residue> c(field->degree(), 0);
    c[0] = fp::reduce(value, field->p());
    return {std::move(field), std::move(c)};
  }
  static FieldElement one(std::shared_ptr<const FieldData> field) { return constant(std::move(field), 1); }

  const FieldId& field() const { return field_->id(); }
  const std::shared_ptr<const FieldData>& data() const { return field_; }
  std::span<const Residue> coeffs() const { return coeffs_; }
  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](Residue c) { return c == 0; });
  }

  FieldElement operator+(const FieldElement& o) const {
    check_same(o);
    auto out = coeffs_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = fp::add(out[i], o.coeffs_[i], p());
    return {field_, std::move(out)};
  }
  FieldElement operator-(const FieldElement& o) const {
    check_same(o);
    auto out = coeffs_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = fp::sub(out[i], o.coeffs_[i], p());
    return {field_, std::move(out)};
  }
  FieldElement operator-() const {
    auto out = coeffs_;
    for (auto& c : out) c = fp::neg(c, p());
    return {field_, std::move(out)};
  }
  FieldElement operator*(const FieldElement& o) const {
    check_same(o);
    return {field_, field_->multiply(coeffs_, o.coeffs_)};
  }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement scaled(Residue s) const {
    auto out = coeffs_;
    for (auto& c : out) c = fp::mul(c, s % p(), p());
    return {field_, std::move(out)};
  }

  FieldElement inverse() const { return {field_, field_->inverse(coeffs_)}; }

  FieldElement pow(std::uint64_t e) const {
    FieldElement result = one(field_);
    FieldElement base = *this;
    while (e > 0) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e > 0) base *= base;
    }
    return result;
  }

  /// x -> x^p.
  FieldElement frobenius_p() const { return {field_, field_->frobenius_matrix().apply(coeffs_)}; }

  bool operator==(const FieldElement& o) const { return field() == o.field() && coeffs_ == o.coeffs_; }

  /// Coefficient-lexicographic order within a field (constant term first).
  std::strong_ordering operator<=>(const FieldElement& o) const {
    if (auto c = field() <=> o.field(); c != 0) return c;
    return coeffs_ <=> o.coeffs_;
  }

 private:
  Residue p() const { return field_->p(); }
  void check_same(const FieldElement& o) const {
    if (field() != o.field()) {
      throw IncompatibleFieldsError("arithmetic across " + to_string(field()) + " and " + to_string(o.field()));
    }
  }

  std::shared_ptr<const FieldData> field_;
  std::vector<Residue> coeffs_;
};

inline std::uint32_t lcm_degree(std::uint32_t a, std::uint32_t b) { return std::lcm(a, b); }

namespace detail {

// Polynomials with coefficients in one extension field; used only for root
// finding while building embeddings.
class ExtPoly {
 public:
  using Coeffs = std::vector<FieldElement>;

  static void trim(Coeffs& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
  }

  static Coeffs mul(const Coeffs& a, const Coeffs& b, const std::shared_ptr<const FieldData>& f) {
    if (a.empty() || b.empty()) return {};
    Coeffs out(a.size() + b.size() - 1, FieldElement::zero(f));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
  }

  static Coeffs mod(Coeffs a, const Coeffs& m) {
    trim(a);
    const auto lead_inv = m.back().inverse();
    while (a.size() >= m.size()) {
      const auto c = a.back() * lead_inv;
      const std::size_t shift = a.size() - m.size();
      for (std::size_t j = 0; j < m.size(); ++j) a[shift + j] -= c * m[j];
      trim(a);
    }
    return a;
  }

  static Coeffs sub(Coeffs a, const Coeffs& b, const std::shared_ptr<const FieldData>& f) {
    if (a.size() < b.size()) a.resize(b.size(), FieldElement::zero(f));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
  }

  static Coeffs gcd(Coeffs a, Coeffs b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
      auto r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.empty()) {
      const auto s = a.back().inverse();
      for (auto& c : a) c *= s;
    }
    return a;
  }

  static Coeffs powmod(Coeffs base, std::uint64_t e, const Coeffs& m, const std::shared_ptr<const FieldData>& f) {
    Coeffs result{FieldElement::one(f)};
    base = mod(std::move(base), m);
    while (e > 0) {
      if (e & 1U) result = mod(mul(result, base, f), m);
      e >>= 1U;
      if (e > 0) base = mod(mul(base, base, f), m);
    }
    return mod(std::move(result), m);
  }

  /// One root of a squarefree polynomial that splits into linear factors over `f`.
  static FieldElement split_root(Coeffs g, const std::shared_ptr<const FieldData>& f) {
    trim(g);
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ f->degree());
    std::uniform_int_distribution<Residue> coef(0, f->p() - 1);
    for (int guard = 0; guard < 100000 && g.size() > 2; ++guard) {
      std::vector<Residue> dc(f->degree());
      for (auto& c : dc) c = coef(rng);
      FieldElement delta(f, dc);
      if (delta.is_zero()) continue;
      // Absolute trace of delta*X, reduced modulo g.
      Coeffs term{FieldElement::zero(f), delta};
      term = mod(term, g);
      Coeffs trace = term;
      for (std::uint32_t i = 1; i < f->degree(); ++i) {
        term = powmod(term, f->p(), g, f);
        if (trace.size() < term.size()) trace.resize(term.size(), FieldElement::zero(f));
        for (std::size_t j = 0; j < term.size(); ++j) trace[j] += term[j];
        trim(trace);
      }
      for (Residue c = 0; c < f->p(); ++c) {
        auto shifted = sub(trace, Coeffs{FieldElement::constant(f, c)}, f);
        auto h = gcd(g, shifted);
        if (h.size() > 1 && h.size() < g.size()) {
          g = std::move(h);
          break;
        }
      }
    }
    if (g.size() != 2) throw InternalInconsistency("root splitting did not converge");
    return -(g[0] * g[1].inverse());
  }
};

}  // namespace detail

/// A compatible tower of finite fields of one characteristic.
///
/// Construction of a field builds every subfield first, so lookups after
/// `make_field` never recurse. All public methods are safe to call
/// concurrently; constructed fields and embeddings are immutable.
class FieldTower {
 public:
  static constexpr std::uint32_t kDefaultDegreeCap = 512;

  explicit FieldTower(Residue p, std::uint32_t degree_cap = kDefaultDegreeCap) : p_(p), degree_cap_(degree_cap) {
    if (!fp::is_prime(p)) throw ParameterError("characteristic " + std::to_string(p) + " is not prime");
    if (degree_cap == 0) throw ParameterError("degree cap must be positive");
  }

  FieldTower(const FieldTower&) = delete;
  FieldTower& operator=(const FieldTower&) = delete;

  Residue characteristic() const { return p_; }
  std::uint32_t degree_cap() const { return degree_cap_; }

  FieldId make_field(std::uint32_t degree) { return field(degree)->id(); }

  std::shared_ptr<const FieldData> field(std::uint32_t degree) {
    std::lock_guard lock(mutex_);
    return build_locked(degree);
  }
  std::shared_ptr<const FieldData> field(const FieldId& id) {
    check_char(id);
    return field(id.degree);
  }

  FieldElement element(const FieldId& id, std::vector<Residue> coeffs) { return {field(id), std::move(coeffs)}; }
  FieldElement constant(const FieldId& id, std::int64_t v) { return FieldElement::constant(field(id), v); }

  FieldElement embed(const FieldElement& x, const FieldId& target) {
    check_char(x.field());
    check_char(target);
    if (target.degree % x.field().degree != 0) {
      throw IncompatibleFieldsError("cannot embed " + to_string(x.field()) + " into " + to_string(target));
    }
    if (target == x.field()) return x;
    const auto e = embedding(x.field().degree, target.degree);
    return {field(target), e->forward.apply(x.coeffs())};
  }

  /// Preimage of `x` in the subfield `sub`, or nullopt when x is not in it.
  std::optional<FieldElement> restrict_to(const FieldElement& x, const FieldId& sub) {
    check_char(sub);
    if (x.field().degree % sub.degree != 0) {
      throw IncompatibleFieldsError(to_string(sub) + " is not a subfield of " + to_string(x.field()));
    }
    if (sub == x.field()) return x;
    const auto e = embedding(sub.degree, x.field().degree);
    auto pre = e->inverse.least_solution(x.coeffs());
    if (!pre) return std::nullopt;
    return FieldElement(field(sub), std::move(*pre));
  }

  /// Matrix of x -> x^{p^e} on F_{p^degree}.
  std::shared_ptr<const fp::Matrix> frobenius_power(std::uint32_t degree, std::uint64_t e) {
    const auto data = field(degree);
    e %= degree;
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(degree, e);
    if (auto it = frob_powers_.find(key); it != frob_powers_.end()) return it->second;
    auto m = std::make_shared<const fp::Matrix>(data->frobenius_matrix().power(e));
    frob_powers_.emplace(key, m);
    return m;
  }

  /// Solver for t^{p^e} - t = c on F_{p^degree}.
  std::shared_ptr<const fp::AffineSolver> artin_schreier_system(std::uint32_t degree, std::uint64_t e) {
    const auto frob = frobenius_power(degree, e);
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(degree, e % degree);
    if (auto it = as_systems_.find(key); it != as_systems_.end()) return it->second;
    auto a = *frob - fp::Matrix::identity(degree, p_);
    auto solver = std::make_shared<const fp::AffineSolver>(a);
    as_systems_.emplace(key, solver);
    return solver;
  }

 private:
  struct Embedding {
    fp::Matrix forward;  // c x a, column j = image of t^j
    fp::AffineSolver inverse;
  };

  void check_char(const FieldId& id) const {
    if (id.p != p_) throw IncompatibleFieldsError("field of characteristic " + std::to_string(id.p) + " in tower of " + std::to_string(p_));
  }

  std::shared_ptr<const Embedding> embedding(std::uint32_t a, std::uint32_t c) {
    field(c);
    std::lock_guard lock(mutex_);
    return embeddings_.at({a, c});
  }

  static std::vector<std::uint32_t> proper_divisors(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = 1; d < n; ++d) {
      if (n % d == 0) out.push_back(d);
    }
    return out;
  }

  fp_poly::Poly least_irreducible(std::uint32_t k) const {
    // Odometer over (c_0, ..., c_{k-1}) with c_0 most significant.
    std::vector<Residue> c(k, 0);
    if (k > 1) c[0] = 1;  // t divides anything with zero constant term
    while (true) {
      fp_poly::Poly f(c.begin(), c.end());
      f.push_back(1);
      if (fp_poly::is_irreducible(f, p_)) return f;
      std::size_t i = k;
      while (i-- > 0) {
        if (++c[i] < p_) break;
        c[i] = 0;
        if (i == 0) throw InternalInconsistency("no irreducible polynomial found");
      }
    }
  }

  std::shared_ptr<const FieldData> build_locked(std::uint32_t degree) {
    if (degree == 0) throw ParameterError("field degree must be at least 1");
    if (auto it = fields_.find(degree); it != fields_.end()) return it->second;
    if (degree > degree_cap_) {
      throw ResourceLimitError("field degree " + std::to_string(degree) + " exceeds cap " + std::to_string(degree_cap_));
    }
    const auto divisors = proper_divisors(degree);
    for (auto d : divisors) build_locked(d);
    auto data = std::make_shared<const FieldData>(FieldId{p_, degree}, least_irreducible(degree));
    fields_.emplace(degree, data);
    for (auto a : divisors) {
      auto forward = compute_embedding_locked(a, degree);
      fp::AffineSolver inverse(forward);
      embeddings_.emplace(std::make_pair(a, degree),
                          std::make_shared<const Embedding>(Embedding{std::move(forward), std::move(inverse)}));
    }
    return data;
  }

  // Powers r^0, ..., r^{count-1} as coordinate vectors of `f`.
  static std::vector<FieldElement> powers(const FieldElement& r, std::uint32_t count) {
    std::vector<FieldElement> out;
    out.reserve(count);
    auto cur = FieldElement::one(r.data());
    for (std::uint32_t j = 0; j < count; ++j) {
      out.push_back(cur);
      cur *= r;
    }
    return out;
  }

  static FieldElement evaluate_in_basis(std::span<const Residue> coords, const std::vector<FieldElement>& basis) {
    auto acc = FieldElement::zero(basis.front().data());
    for (std::size_t j = 0; j < coords.size(); ++j) {
      if (coords[j] != 0) acc += basis[j].scaled(coords[j]);
    }
    return acc;
  }

  // Some root of f_a inside F_{p^c}, a | c, a > 1.
  FieldElement any_root_locked(std::uint32_t a, std::uint32_t c) {
    const auto big = fields_.at(c);
    const auto small = fields_.at(a);
    // The copy of F_{p^a} inside F_{p^c} is the fixed space of x -> x^{p^a}.
    const auto fixed = big->frobenius_matrix().power(a) - fp::Matrix::identity(c, p_);
    const fp::AffineSolver fixed_space(fixed);
    const auto& basis = fixed_space.kernel();
    if (basis.size() != a) throw InternalInconsistency("subfield of unexpected dimension");

    std::mt19937_64 rng(0x5851f42d4c957f2dULL ^ (static_cast<std::uint64_t>(a) << 32U) ^ c);
    std::uniform_int_distribution<Residue> coef(0, p_ - 1);
    for (int attempt = 0; attempt < 10000; ++attempt) {
      std::vector<Residue> beta_c(c, 0);
      for (const auto& v : basis) {
        const Residue s = coef(rng);
        for (std::uint32_t i = 0; i < c; ++i) beta_c[i] = fp::add(beta_c[i], fp::mul(s, v[i], p_), p_);
      }
      const FieldElement beta(big, beta_c);
      const auto pw = powers(beta, a + 1);
      fp::Matrix cols(c, a, p_);
      for (std::uint32_t j = 0; j < a; ++j) cols.set_column(j, pw[j].coeffs());
      if (fp::rank(cols) != a) continue;  // beta lies in a proper subfield
      // Minimal polynomial mu of beta over F_p.
      std::vector<Residue> rhs(pw[a].coeffs().begin(), pw[a].coeffs().end());
      for (auto& v : rhs) v = fp::neg(v, p_);
      const auto low = fp::AffineSolver(cols).least_solution(rhs);
      if (!low) throw InternalInconsistency("minimal polynomial system inconsistent");
      // Root s of mu in our model of F_{p^a}; then t -> beta extends s -> beta.
      detail::ExtPoly::Coeffs mu;
      for (auto v : *low) mu.push_back(FieldElement::constant(small, v));
      mu.push_back(FieldElement::one(small));
      const auto s = detail::ExtPoly::split_root(mu, small);
      const auto spow = powers(s, a);
      fp::Matrix sm(a, a, p_);
      for (std::uint32_t j = 0; j < a; ++j) sm.set_column(j, spow[j].coeffs());
      std::vector<Residue> t_coords(a, 0);
      t_coords[1] = 1;
      const auto k = fp::AffineSolver(sm).least_solution(t_coords);
      if (!k) throw InternalInconsistency("power basis of a root is singular");
      return evaluate_in_basis(*k, pw);
    }
    throw InternalInconsistency("no generator found for subfield");
  }

  fp::Matrix compute_embedding_locked(std::uint32_t a, std::uint32_t c) {
    const auto big = fields_.at(c);
    fp::Matrix forward(c, a, p_);
    if (a == 1) {
      forward(0, 0) = 1;
      return forward;
    }
    const auto small = fields_.at(a);
    auto r = any_root_locked(a, c);
    std::vector<FieldElement> roots;
    for (std::uint32_t i = 0; i < a; ++i) {
      roots.push_back(r);
      r = r.frobenius_p();
    }
    std::sort(roots.begin(), roots.end());

    // Constraint: agree with the already chosen a' -> c for maximal a' | a.
    std::vector<std::uint32_t> maximal;
    for (auto l : fp::prime_factors(a)) maximal.push_back(a / static_cast<std::uint32_t>(l));
    for (const auto& cand : roots) {
      const auto pw = powers(cand, a);
      bool ok = true;
      for (auto sub : maximal) {
        if (sub == 1) continue;  // 1 -> 1 always
        const auto& to_big = embeddings_.at({sub, c})->forward;
        std::vector<Residue> gen(sub, 0);
        gen[1] = 1;
        const auto direct = to_big.apply(gen);
        const auto via = embeddings_.at({sub, a})->forward.apply(gen);
        const auto composed = evaluate_in_basis(via, pw);
        if (!std::equal(direct.begin(), direct.end(), composed.coeffs().begin())) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      // f_a(cand) = 0 by construction; checked anyway.
      auto value = FieldElement::zero(big);
      for (std::size_t j = small->modulus().size(); j-- > 0;) {
        value = value * cand + FieldElement::constant(big, small->modulus()[j]);
      }
      if (!value.is_zero()) throw InternalInconsistency("embedding image is not a root of the modulus");
      for (std::uint32_t j = 0; j < a; ++j) forward.set_column(j, pw[j].coeffs());
      return forward;
    }
    throw InternalInconsistency("no compatible embedding F_p^" + std::to_string(a) + " -> F_p^" + std::to_string(c));
  }

  Residue p_;
  std::uint32_t degree_cap_;
  std::mutex mutex_;
  std::map<std::uint32_t, std::shared_ptr<const FieldData>> fields_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const Embedding>> embeddings_;
  std::map<std::pair<std::uint32_t, std::uint64_t>, std::shared_ptr<const fp::Matrix>> frob_powers_;
  std::map<std::pair<std::uint32_t, std::uint64_t>, std::shared_ptr<const fp::AffineSolver>> as_systems_;
};

/// Exponent n with q = p^n for the tower's characteristic.
inline std::uint32_t q_exponent(Residue p, std::uint64_t q) {
  const auto pp = fp::prime_power(q);
  if (!pp || pp->first != p) {
    throw ParameterError("q = " + std::to_string(q) + " is not a power of " + std::to_string(p));
  }
  return pp->second;
}

/// x -> x^q with q a power of the characteristic.
inline FieldElement frobenius(FieldTower& tower, const FieldElement& x, std::uint64_t q) {
  const auto n = q_exponent(x.field().p, q);
  const auto m = tower.frobenius_power(x.field().degree, n);
  return {x.data(), m->apply(x.coeffs())};
}

/// x -> x^{q^m}.
inline FieldElement frobenius(FieldTower& tower, const FieldElement& x, std::uint64_t q, std::uint32_t m) {
  const auto n = q_exponent(x.field().p, q);
  const auto mat = tower.frobenius_power(x.field().degree, static_cast<std::uint64_t>(n) * m);
  return {x.data(), mat->apply(x.coeffs())};
}

/// Relative trace to a subfield: sum of x^{(p^s)^i}, i < [x.field : sub].
inline FieldElement trace_to(FieldTower& tower, const FieldElement& x, const FieldId& sub) {
  if (sub.p != x.field().p || x.field().degree % sub.degree != 0) {
    throw IncompatibleFieldsError("trace from " + to_string(x.field()) + " to " + to_string(sub));
  }
  const auto r = x.field().degree / sub.degree;
  const auto step = tower.frobenius_power(x.field().degree, sub.degree);
  auto term = x;
  auto acc = x;
  for (std::uint32_t i = 1; i < r; ++i) {
    term = FieldElement(term.data(), step->apply(term.coeffs()));
    acc += term;
  }
  auto down = tower.restrict_to(acc, sub);
  if (!down) throw InternalInconsistency("trace left the subfield");
  return *down;
}

/// Least solution t of t^{q^m} - t = c in the first field of the chain
/// F_{p^k} ⊆ F_{p^{kp}} ⊆ ... that has one, where k = lcm(deg c, deg q^m).
inline std::pair<FieldElement, FieldId> artin_schreier_solve(FieldTower& tower, const FieldElement& c, std::uint64_t q,
                                                              std::uint32_t m, std::uint32_t degree_cap = 0) {
  if (m == 0) throw ParameterError("m must be positive");
  const auto n = q_exponent(tower.characteristic(), q);
  const std::uint64_t e = static_cast<std::uint64_t>(n) * m;
  const auto cap = degree_cap == 0 ? tower.degree_cap() : degree_cap;
  std::uint64_t degree = std::lcm<std::uint64_t>(c.field().degree, e);
  while (true) {
    if (degree > cap) {
      throw ResourceLimitError("Artin-Schreier extension degree " + std::to_string(degree) + " exceeds cap " +
                               std::to_string(cap));
    }
    const auto d = static_cast<std::uint32_t>(degree);
    const auto level = tower.make_field(d);
    const auto lifted = tower.embed(c, level);
    const auto system = tower.artin_schreier_system(d, e);
    if (auto t = system->least_solution(lifted.coeffs())) {
      return {FieldElement(tower.field(level), std::move(*t)), level};
    }
    degree *= tower.characteristic();
  }
}

/// Arithmetic adapter over one extension field for the generic evaluators.
class ExtensionOps {
 public:
  using Elem = FieldElement;

  explicit ExtensionOps(std::shared_ptr<const FieldData> field) : field_(std::move(field)) {}

  const std::shared_ptr<const FieldData>& field() const { return field_; }
  Elem zero() const { return FieldElement::zero(field_); }
  Elem one() const { return FieldElement::one(field_); }
  Elem constant(Residue c) const { return FieldElement::constant(field_, c); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem pow(const Elem& a, std::uint64_t e) const { return a.pow(e); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }

 private:
  std::shared_ptr<const FieldData> field_;
};

}  // namespace asai
