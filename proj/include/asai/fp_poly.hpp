#pragma once

// Univariate polynomials over F_p, little-endian coefficient vectors.
// The zero polynomial is the empty vector; results are always trimmed.

#include <cstdint>
#include <utility>
#include <vector>

#include "asai/fp_linalg.hpp"

namespace asai::fp_poly {

using Poly = std::vector<Residue>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly add(const Poly& a, const Poly& b, Residue p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = fp::add(out[i], b[i], p);
  trim(out);
  return out;
}

inline Poly sub(const Poly& a, const Poly& b, Residue p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = fp::sub(out[i], b[i], p);
  trim(out);
  return out;
}

inline Poly mul(const Poly& a, const Poly& b, Residue p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
    if ((i & 0xFFU) == 0xFFU) {
      for (auto& v : acc) v %= p;
    }
  }
  Poly out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<Residue>(acc[i] % p);
  trim(out);
  return out;
}

/// Quotient and remainder; `b` must be nonzero.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b, Residue p) {
  if (b.empty()) throw ParameterError("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {Poly{}, a};
  const Residue lead_inv = fp::inv(b.back(), p);
  Poly q(a.size() - b.size() + 1, 0);
  for (std::size_t i = a.size(); i-- >= b.size();) {
    const Residue coef = fp::mul(a[i], lead_inv, p);
    const std::size_t shift = i - (b.size() - 1);
    q[shift] = coef;
    if (coef != 0) {
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = fp::sub(a[shift + j], fp::mul(coef, b[j], p), p);
    }
    if (i == 0) break;
  }
  trim(q);
  trim(a);
  return {q, a};
}

inline Poly mod(const Poly& a, const Poly& b, Residue p) { return divmod(a, b, p).second; }

inline Poly monic(Poly a, Residue p) {
  trim(a);
  if (a.empty()) return a;
  const Residue s = fp::inv(a.back(), p);
  for (auto& c : a) c = fp::mul(c, s, p);
  return a;
}

inline Poly gcd(Poly a, Poly b, Residue p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, Residue p) { return mod(mul(a, b, p), m, p); }

inline Poly powmod(Poly base, std::uint64_t e, const Poly& m, Residue p) {
  Poly result{1};
  base = mod(base, m, p);
  while (e > 0) {
    if (e & 1U) result = mulmod(result, base, m, p);
    e >>= 1U;
    if (e > 0) base = mulmod(base, base, m, p);
  }
  trim(result);
  return mod(result, m, p);
}

/// Inverse of `a` modulo `m` (extended Euclid); requires gcd(a, m) = 1.
inline Poly invmod(const Poly& a, const Poly& m, Residue p) {
  Poly r0 = m, r1 = mod(a, m, p);
  Poly s0{}, s1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    Poly s = sub(s0, mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) throw ParameterError("polynomial is not invertible modulo the modulus");
  const Residue s = fp::inv(r0[0], p);
  for (auto& c : s0) c = fp::mul(c, s, p);
  return mod(s0, m, p);
}

/// Irreducibility over F_p: gcd(f, t^{p^i} - t) = 1 for 1 <= i <= deg/2.
inline bool is_irreducible(const Poly& f, Residue p) {
  const int n = degree(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  const Poly t{0, 1};
  Poly power = t;
  for (int i = 1; i <= n / 2; ++i) {
    power = powmod(power, p, f, p);
    if (degree(gcd(f, sub(power, t, p), p)) != 0) return false;
  }
  return true;
}

}  // namespace asai::fp_poly
