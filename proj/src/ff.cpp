// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hemi/ff.hpp"

#include <string>

namespace hemi::ff {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Tower Tower::make(std::uint32_t p) {
  if (!is_prime(p)) throw ConfigError("p = " + std::to_string(p) + " is not prime");
  if (p % 4 != 1) throw ConfigError("p = " + std::to_string(p) + " is not 1 mod 4");
  if (p > 65521) throw ConfigError("p = " + std::to_string(p) + " exceeds the 16-bit tower limit");

  Tower t;
  t.p_ = p;
  for (std::uint32_t a = 2; a < p; ++a) {
    if (t.legendre(Fp{a}) < 0) {
      t.n_ = Fp{a};
      break;
    }
  }
  // Lexicographic scan over (a0, a1); matches operator<=> on Fq2.
  bool found = false;
  for (std::uint32_t a0 = 0; a0 < p && !found; ++a0) {
    for (std::uint32_t a1 = 0; a1 < p && !found; ++a1) {
      const Fq2 x{{a0}, {a1}};
      if (!t.is_zero(x) && !t.is_square(x)) {
        t.beta_ = x;
        found = true;
      }
    }
  }
  t.frob4_ = t.pow(t.beta_, (p - 1) / 2);

  if (t.legendre(Fp{2}) < 0) {
    // 2 = c²·n for c ∈ GF(p), so √2 = ±c·t.
    const Fp c = *t.sqrt(t.mul(Fp{2}, t.inv(t.n_)));
    const Fq2 r1{{}, c};
    const Fq2 r2{{}, t.neg(c)};
    t.h_ = std::min(r1, r2);
    t.alpha_ = t.pow(t.h_, (p - 1) / 2);
    t.has_h_ = true;
  }
  return t;
}

Fq2 Tower::h() const {
  if (!has_h_) {
    throw ConfigError("2 is a square in GF(" + std::to_string(p_) + "); h = √2 lies in the base field");
  }
  return h_;
}

Fq2 Tower::alpha() const {
  if (!has_h_) {
    throw ConfigError("alpha = h^((p-1)/2) needs p ≡ 5 (mod 8)");
  }
  return alpha_;
}

Fp Tower::fp(std::int64_t x) const noexcept {
  std::int64_t r = x % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r)};
}

Fp Tower::inv(Fp x) const {
  if (x.v == 0) throw DomainError("inverse of zero in GF(p)");
  return pow(x, p_ - 2);
}

Fp Tower::pow(Fp x, std::uint64_t e) const noexcept {
  Fp r{1};
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

int Tower::legendre(Fp x) const noexcept {
  if (x.v == 0) return 0;
  return pow(x, (p_ - 1) / 2).v == 1 ? 1 : -1;
}

Fq2 Tower::mul(const Fq2& x, const Fq2& y) const noexcept {
  const std::uint64_t p = p_;
  const std::uint64_t a1b1 = static_cast<std::uint64_t>(x.a1.v) * y.a1.v % p;
  const std::uint64_t c0 = (static_cast<std::uint64_t>(x.a0.v) * y.a0.v + a1b1 * n_.v) % p;
  const std::uint64_t c1 = (static_cast<std::uint64_t>(x.a0.v) * y.a1.v + static_cast<std::uint64_t>(x.a1.v) * y.a0.v) % p;
  return {{static_cast<std::uint32_t>(c0)}, {static_cast<std::uint32_t>(c1)}};
}

Fp Tower::norm(const Fq2& x) const noexcept {
  return sub(mul(x.a0, x.a0), mul(n_, mul(x.a1, x.a1)));
}

Fq2 Tower::inv(const Fq2& x) const {
  if (is_zero(x)) throw DomainError("inverse of zero in GF(p^2)");
  const Fp ni = inv(norm(x));
  return {mul(x.a0, ni), neg(mul(x.a1, ni))};
}

Fq2 Tower::pow(const Fq2& x, std::uint64_t e) const noexcept {
  Fq2 r{{1}, {}};
  Fq2 b = x;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Fq2 Tower::frob(const Fq2& x, unsigned k) const noexcept {
  return (k % 2) ? Fq2{x.a0, neg(x.a1)} : x;
}

Fq4 Tower::mul(const Fq4& x, const Fq4& y) const noexcept {
  return {add(mul(x.b0, y.b0), mul(beta_, mul(x.b1, y.b1))),
          add(mul(x.b0, y.b1), mul(x.b1, y.b0))};
}

Fq2 Tower::norm(const Fq4& x) const noexcept {
  return sub(mul(x.b0, x.b0), mul(beta_, mul(x.b1, x.b1)));
}

Fq4 Tower::inv(const Fq4& x) const {
  if (is_zero(x)) throw DomainError("inverse of zero in GF(p^4)");
  const Fq2 ni = inv(norm(x));
  return {mul(x.b0, ni), neg(mul(x.b1, ni))};
}

Fq4 Tower::pow(const Fq4& x, std::uint64_t e) const noexcept {
  Fq4 r{{{1}, {}}, {}};
  Fq4 b = x;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Fq4 Tower::frob(const Fq4& x, unsigned k) const noexcept {
  Fq4 r = x;
  for (unsigned i = 0; i < k % 4; ++i) {
    // (b0 + b1 s)^p = b0^p + b1^p · s^(p−1) · s
    r = {frob(r.b0), mul(frob(r.b1), frob4_)};
  }
  return r;
}

bool Tower::is_square(const Fq2& x) const noexcept {
  // x is a square in GF(p²) iff its norm is a square in GF(p).
  return legendre(norm(x)) >= 0;
}

Fp Tower::tonelli(Fp x) const {
  // x is a nonzero square.
  std::uint32_t q = p_ - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Fp z = n_;
  Fp c = pow(z, q);
  Fp r = pow(x, (q + 1) / 2);
  Fp t = pow(x, q);
  unsigned m = s;
  while (t.v != 1) {
    unsigned i = 0;
    Fp tt = t;
    while (tt.v != 1) {
      tt = mul(tt, tt);
      ++i;
    }
    Fp b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = mul(b, b);
    r = mul(r, b);
    c = mul(b, b);
    t = mul(t, c);
    m = i;
  }
  return r;
}

std::optional<Fp> Tower::sqrt(Fp x) const {
  if (x.v == 0) return Fp{0};
  if (legendre(x) < 0) return std::nullopt;
  const Fp r = tonelli(x);
  return std::min(r, neg(r));
}

std::optional<Fq2> Tower::sqrt(const Fq2& x) const {
  if (is_zero(x)) return Fq2{};
  if (!is_square(x)) return std::nullopt;
  Fq2 y;
  if (x.a1.v == 0) {
    if (legendre(x.a0) >= 0) {
      y = {*sqrt(x.a0), {}};
    } else {
      y = {{}, *sqrt(mul(x.a0, inv(n_)))};
    }
  } else {
    // (y0 + y1 t)² = x  ⇒  y0² = (a0 ± √N(x)) / 2, y1 = a1 / (2 y0).
    const Fp root_norm = *sqrt(norm(x));
    const Fp half = inv(Fp{2});
    Fp y0sq = mul(add(x.a0, root_norm), half);
    if (legendre(y0sq) < 0) y0sq = mul(sub(x.a0, root_norm), half);
    const Fp y0 = *sqrt(y0sq);
    const Fp y1 = mul(x.a1, inv(add(y0, y0)));
    y = {y0, y1};
  }
  if (mul(y, y) != x) throw InternalConsistencyError("GF(p^2) square root failed");
  return std::min(y, neg(y));
}

}  // namespace hemi::ff
