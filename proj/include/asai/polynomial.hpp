#pragma once

// Multivariate polynomials over F_p with a fixed number of variables.
//
// Canonical form: no zero coefficients, no repeated monomials, terms sorted by
// ascending total degree and, within a degree, by descending exponent vector
// (so x1 comes before x2 comes before y1). Exponents are never reduced: the
// variables range over the algebraic closure, where x^p != x.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "asai/errors.hpp"
#include "asai/fp_linalg.hpp"

namespace asai {

using Exponents = std::vector<std::uint32_t>;

struct Term {
  Residue coef = 0;
  Exponents exps;

  std::uint32_t total_degree() const { return std::accumulate(exps.begin(), exps.end(), std::uint32_t{0}); }
  bool operator==(const Term&) const = default;
};

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Residue p, std::size_t nvars) : p_(p), nvars_(nvars) {}

  static Polynomial constant(Residue p, std::size_t nvars, std::int64_t c) {
    Polynomial out(p, nvars);
    out.add_term(fp::reduce(c, p), Exponents(nvars, 0));
    return out;
  }

  static Polynomial variable(Residue p, std::size_t nvars, std::size_t index) {
    Exponents e(nvars, 0);
    e.at(index) = 1;
    Polynomial out(p, nvars);
    out.add_term(1, std::move(e));
    return out;
  }

  /// Builds from arbitrary terms (merging duplicates, dropping zeros).
  static Polynomial from_terms(Residue p, std::size_t nvars, const std::vector<Term>& terms) {
    Polynomial out(p, nvars);
    for (const auto& t : terms) {
      if (t.exps.size() != nvars) throw ParameterError("exponent vector of wrong length");
      out.add_term(t.coef % p, t.exps);
    }
    return out;
  }

  Residue characteristic() const { return p_; }
  std::size_t num_vars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.total_degree());
    return d;
  }

  /// Coefficient of one monomial (0 when absent).
  Residue coefficient(const Exponents& e) const {
    for (const auto& t : terms_) {
      if (t.exps == e) return t.coef;
    }
    return 0;
  }

  bool uses_variable(std::size_t v) const {
    return std::any_of(terms_.begin(), terms_.end(), [v](const Term& t) { return t.exps[v] > 0; });
  }

  Polynomial operator+(const Polynomial& o) const {
    check(o);
    Polynomial out = *this;
    for (const auto& t : o.terms_) out.add_term(t.coef, t.exps);
    return out;
  }

  Polynomial operator-() const {
    Polynomial out = *this;
    for (auto& t : out.terms_) t.coef = fp::neg(t.coef, p_);
    return out;
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    check(o);
    Polynomial out(p_, nvars_);
    Exponents e(nvars_);
    for (const auto& a : terms_) {
      for (const auto& b : o.terms_) {
        for (std::size_t i = 0; i < nvars_; ++i) e[i] = a.exps[i] + b.exps[i];
        out.add_term(fp::mul(a.coef, b.coef, p_), e);
      }
    }
    return out;
  }

  Polynomial pow(std::uint32_t e) const {
    Polynomial result = constant(p_, nvars_, 1);
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1U) result = result * base;
      e >>= 1U;
      if (e > 0) base = base * base;
    }
    return result;
  }

  /// Substitutes variable i by replacements[i]; all replacements share one
  /// variable count, which becomes the result's.
  Polynomial substitute(std::span<const Polynomial> replacements) const {
    if (replacements.size() != nvars_) throw ParameterError("substitution arity mismatch");
    const std::size_t target = replacements.empty() ? 0 : replacements.front().nvars_;
    Polynomial out(p_, target);
    for (const auto& t : terms_) {
      Polynomial term = constant(p_, target, t.coef);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (t.exps[i] > 0) term = term * replacements[i].pow(t.exps[i]);
      }
      out = out + term;
    }
    return out;
  }

  bool operator==(const Polynomial& o) const { return p_ == o.p_ && nvars_ == o.nvars_ && terms_ == o.terms_; }

 private:
  static bool term_less(const Exponents& a, const Exponents& b) {
    const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
    if (da != db) return da < db;
    return b < a;
  }

  void check(const Polynomial& o) const {
    if (p_ != o.p_ || nvars_ != o.nvars_) throw ParameterError("polynomials over different rings");
  }

  void add_term(Residue coef, const Exponents& e) {
    if (coef == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponents& key) { return term_less(t.exps, key); });
    if (it != terms_.end() && it->exps == e) {
      it->coef = fp::add(it->coef, coef, p_);
      if (it->coef == 0) terms_.erase(it);
      return;
    }
    terms_.insert(it, Term{coef, e});
  }

  Residue p_ = 2;
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

/// Evaluates `poly` at `vars` through an arithmetic adapter (see ExtensionOps).
template <class Ops>
typename Ops::Elem evaluate(const Polynomial& poly, std::span<const typename Ops::Elem> vars, const Ops& ops) {
  auto acc = ops.zero();
  for (const auto& t : poly.terms()) {
    auto v = ops.constant(t.coef);
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      if (t.exps[i] == 0) continue;
      v = ops.mul(v, t.exps[i] == 1 ? vars[i] : ops.pow(vars[i], t.exps[i]));
      if (ops.is_zero(v)) break;
    }
    acc = ops.add(acc, v);
  }
  return acc;
}

}  // namespace asai
