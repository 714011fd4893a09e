// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hemi/ff.hpp"

/// Dense Gaussian elimination over GF(p) or GF(p²).
namespace hemi::linalg {

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
Matrix<T> zeros(std::size_t rows, std::size_t cols) {
  return Matrix<T>(rows, std::vector<T>(cols));
}

/// In-place reduced row echelon form; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(const ff::Tower& t, Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pick = r;
    while (pick < rows && t.is_zero(m[pick][c])) ++pick;
    if (pick == rows) continue;
    std::swap(m[r], m[pick]);
    const T inv = t.inv(m[r][c]);
    for (std::size_t j = c; j < cols; ++j) m[r][j] = t.mul(m[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || t.is_zero(m[i][c])) continue;
      const T f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = t.sub(m[i][j], t.mul(f, m[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
std::size_t rank(const ff::Tower& t, Matrix<T> m) {
  return rref(t, m).size();
}

/// Basis of {x : m x = 0}.
template <class T>
Matrix<T> nullspace(const ff::Tower& t, Matrix<T> m) {
  Matrix<T> basis;
  if (m.empty()) return basis;
  const std::size_t cols = m[0].size();
  const auto pivots = rref(t, m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(cols);
    v[free] = t.pow(T{}, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = t.neg(m[i][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
std::optional<Matrix<T>> inverse(const ff::Tower& t, const Matrix<T>& m) {
  const std::size_t n = m.size();
  Matrix<T> aug = zeros<T>(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = t.pow(T{}, 0);
  }
  const auto pivots = rref(t, aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<T> inv = zeros<T>(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  }
  return inv;
}

template <class T>
std::vector<T> apply(const ff::Tower& t, const Matrix<T>& m, const std::vector<T>& x) {
  std::vector<T> y(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    T acc{};
    for (std::size_t j = 0; j < x.size(); ++j) acc = t.add(acc, t.mul(m[i][j], x[j]));
    y[i] = acc;
  }
  return y;
}

template <class T>
Matrix<T> multiply(const ff::Tower& t, const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c = zeros<T>(a.size(), b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (t.is_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] = t.add(c[i][j], t.mul(a[i][k], b[k][j]));
    }
  }
  return c;
}

/// Solver for a fixed square system m y = c, with m possibly singular.
template <class T>
class AffineSolver {
 public:
  AffineSolver(const ff::Tower& t, const Matrix<T>& m) : t_(&t), n_(m.size()) {
    Matrix<T> aug = zeros<T>(n_, 2 * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) aug[i][j] = m[i][j];
      aug[i][n_ + i] = t.pow(T{}, 0);
    }
    // Pivot only inside the left block.
    std::size_t r = 0;
    for (std::size_t c = 0; c < n_ && r < n_; ++c) {
      std::size_t pick = r;
      while (pick < n_ && t.is_zero(aug[pick][c])) ++pick;
      if (pick == n_) continue;
      std::swap(aug[r], aug[pick]);
      const T inv = t.inv(aug[r][c]);
      for (auto& x : aug[r]) x = t.mul(x, inv);
      for (std::size_t i = 0; i < n_; ++i) {
        if (i == r || t.is_zero(aug[i][c])) continue;
        const T f = aug[i][c];
        for (std::size_t j = 0; j < 2 * n_; ++j) aug[i][j] = t.sub(aug[i][j], t.mul(f, aug[r][j]));
      }
      pivots_.push_back(c);
      ++r;
    }
    transform_ = zeros<T>(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) transform_[i][j] = aug[i][n_ + j];
    }
  }

  std::size_t rank() const noexcept { return pivots_.size(); }

  /// One solution with free variables zero, or nullopt when c is outside the image.
  std::optional<std::vector<T>> solve(const std::vector<T>& c) const {
    const auto z = apply(*t_, transform_, c);
    for (std::size_t i = pivots_.size(); i < n_; ++i) {
      if (!t_->is_zero(z[i])) return std::nullopt;
    }
    std::vector<T> y(n_);
    for (std::size_t i = 0; i < pivots_.size(); ++i) y[pivots_[i]] = z[i];
    return y;
  }

 private:
  const ff::Tower* t_;
  std::size_t n_;
  std::vector<std::size_t> pivots_;
  Matrix<T> transform_;
};

}  // namespace hemi::linalg
