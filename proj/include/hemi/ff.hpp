// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <type_traits>

#include "hemi/error.hpp"

/// Arithmetic in the tower GF(p) ⊂ GF(p²) ⊂ GF(p⁴).
///
/// Elements are plain value types; every operation goes through a Tower,
/// which carries the prime and the two quadratic moduli. GF(p²) = GF(p)[t]
/// with t² = n (n the least quadratic non-residue), GF(p⁴) = GF(p²)[s] with
/// s² = β (β the lexicographically least non-square of GF(p²)).
namespace hemi::ff {

struct Fp {
  std::uint32_t v = 0;
  friend constexpr bool operator==(Fp, Fp) = default;
  friend constexpr auto operator<=>(Fp, Fp) = default;
};

/// a0 + a1·t.
struct Fq2 {
  Fp a0, a1;
  friend constexpr bool operator==(const Fq2&, const Fq2&) = default;
  friend constexpr auto operator<=>(const Fq2&, const Fq2&) = default;
};

/// b0 + b1·s.
struct Fq4 {
  Fq2 b0, b1;
  friend constexpr bool operator==(const Fq4&, const Fq4&) = default;
  friend constexpr auto operator<=>(const Fq4&, const Fq4&) = default;
};

bool is_prime(std::uint64_t n);

class Tower {
 public:
  /// Throws ConfigError unless p is a prime with p ≡ 1 (mod 4).
  static Tower make(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }
  Fp nonresidue() const noexcept { return n_; }
  Fq2 beta() const noexcept { return beta_; }

  /// True when 2 is a non-square of GF(p), i.e. p ≡ 5 (mod 8).
  bool has_h() const noexcept { return has_h_; }
  /// Lexicographically least square root of 2 in GF(p²) \ GF(p).
  Fq2 h() const;
  /// h^((p−1)/2); lies in GF(p) and squares to −1.
  Fq2 alpha() const;

  // Embeddings and constants.
  Fp fp(std::int64_t x) const noexcept;
  Fq2 q2(std::int64_t x) const noexcept { return {fp(x), {}}; }
  Fq2 q2(Fp a0, Fp a1 = {}) const noexcept { return {a0, a1}; }
  Fq4 q4(Fq2 b0, Fq2 b1 = {}) const noexcept { return {b0, b1}; }
  Fq2 t() const noexcept { return {{}, {1}}; }

  // GF(p).
  Fp add(Fp x, Fp y) const noexcept { return {reduce_add(x.v + y.v)}; }
  Fp sub(Fp x, Fp y) const noexcept { return {reduce_add(x.v + p_ - y.v)}; }
  Fp neg(Fp x) const noexcept { return {x.v == 0 ? 0 : p_ - x.v}; }
  Fp mul(Fp x, Fp y) const noexcept {
    return {static_cast<std::uint32_t>(static_cast<std::uint64_t>(x.v) * y.v % p_)};
  }
  Fp inv(Fp x) const;
  Fp pow(Fp x, std::uint64_t e) const noexcept;
  bool is_zero(Fp x) const noexcept { return x.v == 0; }
  bool is_one(Fp x) const noexcept { return x.v == 1; }
  int legendre(Fp x) const noexcept;

  // GF(p²).
  Fq2 add(const Fq2& x, const Fq2& y) const noexcept { return {add(x.a0, y.a0), add(x.a1, y.a1)}; }
  Fq2 sub(const Fq2& x, const Fq2& y) const noexcept { return {sub(x.a0, y.a0), sub(x.a1, y.a1)}; }
  Fq2 neg(const Fq2& x) const noexcept { return {neg(x.a0), neg(x.a1)}; }
  Fq2 mul(const Fq2& x, const Fq2& y) const noexcept;
  Fq2 mul(const Fq2& x, Fp c) const noexcept { return {mul(x.a0, c), mul(x.a1, c)}; }
  Fq2 inv(const Fq2& x) const;
  Fq2 pow(const Fq2& x, std::uint64_t e) const noexcept;
  bool is_zero(const Fq2& x) const noexcept { return x.a0.v == 0 && x.a1.v == 0; }
  bool is_one(const Fq2& x) const noexcept { return x.a0.v == 1 && x.a1.v == 0; }
  bool in_base(const Fq2& x) const noexcept { return x.a1.v == 0; }

  // GF(p⁴).
  Fq4 add(const Fq4& x, const Fq4& y) const noexcept { return {add(x.b0, y.b0), add(x.b1, y.b1)}; }
  Fq4 sub(const Fq4& x, const Fq4& y) const noexcept { return {sub(x.b0, y.b0), sub(x.b1, y.b1)}; }
  Fq4 neg(const Fq4& x) const noexcept { return {neg(x.b0), neg(x.b1)}; }
  Fq4 mul(const Fq4& x, const Fq4& y) const noexcept;
  Fq4 inv(const Fq4& x) const;
  Fq4 pow(const Fq4& x, std::uint64_t e) const noexcept;
  bool is_zero(const Fq4& x) const noexcept { return is_zero(x.b0) && is_zero(x.b1); }
  bool is_one(const Fq4& x) const noexcept { return is_one(x.b0) && is_zero(x.b1); }
  bool in_q2(const Fq4& x) const noexcept { return is_zero(x.b1); }

  /// x^(p^k).
  Fp frob(Fp x, unsigned = 1) const noexcept { return x; }
  Fq2 frob(const Fq2& x, unsigned k = 1) const noexcept;
  Fq4 frob(const Fq4& x, unsigned k = 1) const noexcept;

  /// Norm and trace of GF(p²)/GF(p): x^(p+1) and x + x^p.
  Fp norm(const Fq2& x) const noexcept;
  Fp trace(const Fq2& x) const noexcept { return add(x.a0, x.a0); }
  /// Norm and trace of GF(p⁴)/GF(p²).
  Fq2 norm(const Fq4& x) const noexcept;
  Fq2 trace(const Fq4& x) const noexcept { return add(x.b0, x.b0); }

  bool is_square(Fp x) const noexcept { return legendre(x) >= 0; }
  bool is_square(const Fq2& x) const noexcept;
  /// Lexicographically least square root, or nullopt for non-squares.
  std::optional<Fp> sqrt(Fp x) const;
  std::optional<Fq2> sqrt(const Fq2& x) const;

  /// Dense code a0 + a1·p in [0, p²); the enumeration order of GF(p²).
  std::uint32_t code(const Fq2& x) const noexcept { return x.a0.v + x.a1.v * p_; }
  Fq2 from_code(std::uint32_t c) const noexcept { return {{c % p_}, {c / p_}}; }
  std::uint32_t q2_size() const noexcept { return p_ * p_; }

 private:
  Tower() = default;
  std::uint32_t reduce_add(std::uint32_t s) const noexcept { return s >= p_ ? s - p_ : s; }
  Fp tonelli(Fp x) const;

  std::uint32_t p_ = 0;
  Fp n_{};
  Fq2 beta_{};
  Fq2 frob4_{};  // s^(p−1) = β^((p−1)/2)
  bool has_h_ = false;
  Fq2 h_{};
  Fq2 alpha_{};
};

/// Value-plus-context wrapper so formulas read like algebra.
template <class T>
class Element {
 public:
  Element(const Tower& tower, T value) : tower_(&tower), value_(value) {}

  const T& value() const noexcept { return value_; }
  const Tower& tower() const noexcept { return *tower_; }
  bool is_zero() const noexcept { return tower_->is_zero(value_); }

  Element pow(std::uint64_t e) const { return {*tower_, tower_->pow(value_, e)}; }
  Element inv() const { return {*tower_, tower_->inv(value_)}; }
  Element frob(unsigned k = 1) const { return {*tower_, tower_->frob(value_, k)}; }

  friend Element operator+(const Element& x, const Element& y) { return {*x.tower_, x.tower_->add(x.value_, y.value_)}; }
  friend Element operator-(const Element& x, const Element& y) { return {*x.tower_, x.tower_->sub(x.value_, y.value_)}; }
  friend Element operator*(const Element& x, const Element& y) { return {*x.tower_, x.tower_->mul(x.value_, y.value_)}; }
  friend Element operator/(const Element& x, const Element& y) { return x * y.inv(); }
  friend Element operator-(const Element& x) { return {*x.tower_, x.tower_->neg(x.value_)}; }

  friend Element operator+(const Element& x, std::int64_t c) { return x + x.lift(c); }
  friend Element operator+(std::int64_t c, const Element& x) { return x.lift(c) + x; }
  friend Element operator-(const Element& x, std::int64_t c) { return x - x.lift(c); }
  friend Element operator-(std::int64_t c, const Element& x) { return x.lift(c) - x; }
  friend Element operator*(const Element& x, std::int64_t c) { return x * x.lift(c); }
  friend Element operator*(std::int64_t c, const Element& x) { return x.lift(c) * x; }
  friend Element operator/(const Element& x, std::int64_t c) { return x / x.lift(c); }
  friend Element operator/(std::int64_t c, const Element& x) { return x.lift(c) / x; }

  friend bool operator==(const Element& x, const Element& y) { return x.value_ == y.value_; }
  friend bool operator==(const Element& x, std::int64_t c) { return x.value_ == x.lift(c).value_; }

 private:
  Element lift(std::int64_t c) const;

  const Tower* tower_;
  T value_;
};

template <class T>
Element<T> Element<T>::lift(std::int64_t c) const {
  const Fp base = tower_->fp(c);
  if constexpr (std::is_same_v<T, Fp>) {
    return {*tower_, base};
  } else if constexpr (std::is_same_v<T, Fq2>) {
    return {*tower_, Fq2{base, {}}};
  } else {
    return {*tower_, Fq4{Fq2{base, {}}, {}}};
  }
}

using E1 = Element<Fp>;
using E2 = Element<Fq2>;
using E4 = Element<Fq4>;

}  // namespace hemi::ff
