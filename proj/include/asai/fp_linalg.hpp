#pragma once

// Dense linear algebra over a prime field F_p.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "asai/errors.hpp"

namespace asai {

using Residue = std::uint32_t;

namespace fp {

inline Residue add(Residue a, Residue b, Residue p) { return (a + b) % p; }
inline Residue sub(Residue a, Residue b, Residue p) { return (a + p - b) % p; }
inline Residue mul(Residue a, Residue b, Residue p) {
  return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % p);
}
inline Residue neg(Residue a, Residue p) { return (p - a) % p; }

inline Residue pow(Residue a, std::uint64_t e, Residue p) {
  Residue result = 1 % p;
  while (e > 0) {
    if (e & 1U) result = mul(result, a, p);
    a = mul(a, a, p);
    e >>= 1U;
  }
  return result;
}

/// Inverse of a nonzero residue (Fermat).
inline Residue inv(Residue a, Residue p) {
  if (a % p == 0) throw ParameterError("inverse of zero in F_" + std::to_string(p));
  return pow(a, p - 2, p);
}

/// Reduce a signed integer into [0, p).
inline Residue reduce(std::int64_t v, Residue p) {
  const auto m = static_cast<std::int64_t>(p);
  return static_cast<Residue>(((v % m) + m) % m);
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Distinct prime factors, ascending.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// If q = p^n with p prime and n >= 1, returns {p, n}.
inline std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  const auto factors = prime_factors(q);
  if (factors.size() != 1) return std::nullopt;
  std::uint32_t n = 0;
  while (q > 1) {
    q /= factors.front();
    ++n;
  }
  return std::make_pair(static_cast<std::uint32_t>(factors.front()), n);
}

/// Row-major dense matrix with entries in [0, p).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Residue p) : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n, Residue p) {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Residue modulus() const { return p_; }

  Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void set_column(std::size_t c, std::span<const Residue> values) {
    assert(values.size() == rows_);
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
  }

  std::vector<Residue> apply(std::span<const Residue> v) const {
    assert(v.size() == cols_);
    std::vector<Residue> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      std::uint64_t acc = 0;
      const Residue* row_ptr = data_.data() + r * cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        acc += static_cast<std::uint64_t>(row_ptr[c]) * v[c];
        if ((c & 0xFFU) == 0xFFU) acc %= p_;
      }
      out[r] = static_cast<Residue>(acc % p_);
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.cols_ == b.rows_ && a.p_ == b.p_);
    Matrix out(a.rows_, b.cols_, a.p_);
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Residue s = a(r, k);
        if (s == 0) continue;
        const Residue* brow = b.data_.data() + k * b.cols_;
        for (std::size_t c = 0; c < b.cols_; ++c) acc[c] += static_cast<std::uint64_t>(s) * brow[c];
        if ((k & 0xFFU) == 0xFFU) {
          for (auto& x : acc) x %= a.p_;
        }
      }
      for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) = static_cast<Residue>(acc[c] % a.p_);
    }
    return out;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] = sub(a.data_[i], b.data_[i], a.p_);
    return a;
  }

  Matrix power(std::uint64_t e) const {
    assert(rows_ == cols_);
    Matrix result = identity(rows_, p_);
    Matrix base = *this;
    while (e > 0) {
      if (e & 1U) result = result * base;
      e >>= 1U;
      if (e > 0) base = base * base;
    }
    return result;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Residue p_ = 2;
  std::vector<Residue> data_;
};

/// Reduced row echelon form in place; returns pivot columns in row order.
inline std::vector<std::size_t> row_reduce(Matrix& m) {
  const Residue p = m.modulus();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(sel, k), m(r, k));
    }
    const Residue scale = inv(m(r, c), p);
    for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) = mul(m(r, k), scale, p);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Residue f = m(i, c);
      for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = sub(m(i, k), mul(f, m(r, k), p), p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Matrix m) { return row_reduce(m).size(); }

/// Solves A·x = b for many right-hand sides. Among all solutions it returns the
/// least one in coefficient-lexicographic order (index 0 most significant).
class AffineSolver {
 public:
  explicit AffineSolver(const Matrix& a) : rows_(a.rows()), cols_(a.cols()), p_(a.modulus()) {
    // Augment with the identity to record the row operations.
    Matrix aug(rows_, cols_ + rows_, p_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) aug(r, c) = a(r, c);
      aug(r, cols_ + r) = 1;
    }
    // Only eliminate on the coefficient block.
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t sel = r;
      while (sel < rows_ && aug(sel, c) == 0) ++sel;
      if (sel == rows_) continue;
      if (sel != r) {
        for (std::size_t k = 0; k < aug.cols(); ++k) std::swap(aug(sel, k), aug(r, k));
      }
      const Residue scale = inv(aug(r, c), p_);
      for (std::size_t k = 0; k < aug.cols(); ++k) aug(r, k) = mul(aug(r, k), scale, p_);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || aug(i, c) == 0) continue;
        const Residue f = aug(i, c);
        for (std::size_t k = 0; k < aug.cols(); ++k) aug(i, k) = sub(aug(i, k), mul(f, aug(r, k), p_), p_);
      }
      pivots_.push_back(c);
      ++r;
    }
    rref_ = Matrix(rows_, cols_, p_);
    transform_ = Matrix(rows_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t c = 0; c < cols_; ++c) rref_(i, c) = aug(i, c);
      for (std::size_t c = 0; c < rows_; ++c) transform_(i, c) = aug(i, cols_ + c);
    }
    build_kernel();
  }

  std::size_t rank() const { return pivots_.size(); }
  std::size_t kernel_dimension() const { return kernel_.size(); }
  const std::vector<std::vector<Residue>>& kernel() const { return kernel_; }

  std::optional<std::vector<Residue>> least_solution(std::span<const Residue> b) const {
    assert(b.size() == rows_);
    const auto tb = transform_.apply(b);
    for (std::size_t i = pivots_.size(); i < rows_; ++i) {
      if (tb[i] != 0) return std::nullopt;
    }
    std::vector<Residue> x(cols_, 0);
    for (std::size_t i = 0; i < pivots_.size(); ++i) x[pivots_[i]] = tb[i];
    for (const auto& k : kernel_) {
      const std::size_t lead = leading_index(k);
      const Residue f = x[lead];
      if (f == 0) continue;
      for (std::size_t c = 0; c < cols_; ++c) x[c] = sub(x[c], mul(f, k[c], p_), p_);
    }
    return x;
  }

 private:
  static std::size_t leading_index(std::span<const Residue> v) {
    std::size_t i = 0;
    while (i < v.size() && v[i] == 0) ++i;
    return i;
  }

  void build_kernel() {
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots_) is_pivot[c] = true;
    std::vector<std::vector<Residue>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<Residue> v(cols_, 0);
      v[f] = 1;
      for (std::size_t i = 0; i < pivots_.size(); ++i) v[pivots_[i]] = neg(rref_(i, f), p_);
      basis.push_back(std::move(v));
    }
    if (basis.empty()) return;
    // Reduce the kernel basis so each vector has a distinct leading index and
    // vanishes at the leading indices of the others.
    Matrix k(basis.size(), cols_, p_);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t c = 0; c < cols_; ++c) k(i, c) = basis[i][c];
    }
    const auto lead = row_reduce(k);
    for (std::size_t i = 0; i < lead.size(); ++i) {
      kernel_.emplace_back(k.row(i).begin(), k.row(i).end());
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  Residue p_;
  Matrix rref_;
  Matrix transform_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<Residue>> kernel_;
};

}  // namespace fp
}  // namespace asai
