// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hemi/ff.hpp"

using namespace hemi;
using namespace hemi::ff;

namespace {

Fq2 random_q2(const Tower& t, std::mt19937_64& rng) {
  return t.from_code(static_cast<std::uint32_t>(rng() % t.q2_size()));
}

Fq4 random_q4(const Tower& t, std::mt19937_64& rng) { return {random_q2(t, rng), random_q2(t, rng)}; }

// Brute-force power by repeated multiplication.
template <class T>
T slow_pow(const Tower& t, T x, std::uint64_t e) {
  T r = t.pow(x, 0);
  for (std::uint64_t i = 0; i < e; ++i) r = t.mul(r, x);
  return r;
}

}  // namespace

TEST_CASE("tower rejects bad primes") {
  CHECK_THROWS_AS(Tower::make(15), ConfigError);
  CHECK_THROWS_AS(Tower::make(7), ConfigError);
  CHECK_THROWS_AS(Tower::make(3), ConfigError);
  CHECK_NOTHROW(Tower::make(13));
  CHECK_THROWS_AS(Tower::make(17).h(), ConfigError);
}

TEST_CASE("tower constants at p=5") {
  const Tower t = Tower::make(5);
  CHECK(t.nonresidue() == Fp{2});
  CHECK(t.h() == t.t());
  CHECK(t.alpha() == t.q2(2));
  CHECK(t.mul(t.alpha(), t.alpha()) == t.q2(-1));
  CHECK(t.add(t.frob(t.h()), t.h()) == Fq2{});
  CHECK(t.norm(t.h()) == t.fp(-2));
  CHECK(t.sqrt(t.q2(2)) == t.h());
  CHECK_FALSE(t.is_square(Fp{2}));
  CHECK(t.is_square(Fp{0}));
  CHECK(t.sqrt(Fp{0}) == Fp{0});
}

TEST_CASE("tower constants at p=37") {
  const Tower t = Tower::make(37);
  CHECK(t.nonresidue() == Fp{2});
  CHECK(t.pow(Fp{2}, 18) == t.fp(-1));
  CHECK(t.h() == t.t());
}

TEST_CASE("tower invariants for supported primes") {
  for (std::uint32_t p : {5u, 13u, 29u, 37u, 41u, 53u, 61u, 101u, 197u}) {
    CAPTURE(p);
    const Tower t = Tower::make(p);
    CHECK(t.legendre(t.nonresidue()) == -1);
    for (std::uint32_t a = 2; a < t.nonresidue().v; ++a) CHECK(t.legendre(Fp{a}) == 1);
    // β^((q²−1)/2) = −1
    const std::uint64_t q2m1 = static_cast<std::uint64_t>(p) * p - 1;
    CHECK(t.pow(t.beta(), q2m1 / 2) == t.q2(-1));
    if (p % 8 == 5) {
      const Fq2 h = t.h();
      CHECK(t.mul(h, h) == t.q2(2));
      CHECK(t.add(t.frob(h), h) == Fq2{});
      CHECK(t.pow(h, p + 1) == t.q2(-2));
      CHECK(t.in_base(t.alpha()));
      CHECK(t.alpha() == t.pow(h, (p - 1) / 2));
      CHECK(t.mul(t.alpha(), t.alpha()) == t.q2(-1));
      CHECK(h < t.neg(h));
    } else {
      CHECK_FALSE(t.has_h());
    }
  }
}

TEST_CASE("square roots agree with exhaustive scan") {
  for (std::uint32_t p : {5u, 13u, 37u}) {
    CAPTURE(p);
    const Tower t = Tower::make(p);
    // GF(p)
    std::set<std::uint32_t> squares;
    for (std::uint32_t y = 0; y < p; ++y) squares.insert(t.mul(Fp{y}, Fp{y}).v);
    std::size_t nonsq = 0;
    for (std::uint32_t x = 0; x < p; ++x) {
      const bool sq = squares.count(x) > 0;
      CHECK(t.is_square(Fp{x}) == sq);
      if (!sq) ++nonsq;
      auto r = t.sqrt(Fp{x});
      REQUIRE(r.has_value() == sq);
      if (sq) {
        Fp least{p};
        for (std::uint32_t y = 0; y < p; ++y) {
          if (t.mul(Fp{y}, Fp{y}).v == x) {
            least = Fp{y};
            break;
          }
        }
        CHECK(*r == least);
      }
    }
    CHECK(nonsq == (p - 1) / 2);
    // GF(p²)
    std::vector<Fq2> least_root(t.q2_size(), Fq2{{p}, {p}});
    for (std::uint32_t c = 0; c < t.q2_size(); ++c) {
      const Fq2 y = t.from_code(c);
      const Fq2 y2 = t.mul(y, y);
      Fq2& slot = least_root[t.code(y2)];
      if (slot.a0.v == p || y < slot) slot = y;
    }
    std::size_t nonsq2 = 0;
    for (std::uint32_t c = 0; c < t.q2_size(); ++c) {
      const Fq2 x = t.from_code(c);
      const bool sq = least_root[c].a0.v != p;
      CHECK(t.is_square(x) == sq);
      CHECK(t.is_square(x) == (t.is_zero(x) || t.is_one(t.pow(x, (t.q2_size() - 1) / 2))));
      if (!sq) ++nonsq2;
      auto r = t.sqrt(x);
      REQUIRE(r.has_value() == sq);
      if (sq) CHECK(*r == least_root[c]);
    }
    CHECK(nonsq2 == (t.q2_size() - 1) / 2);
  }
}

TEST_CASE("field operations against slow oracles") {
  const Tower t = Tower::make(13);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Fq2 x = random_q2(t, rng);
    CHECK(t.frob(x) == slow_pow(t, x, 13));
    CHECK(t.pow(x, 14) == slow_pow(t, x, 14));
    CHECK(t.norm(x) == t.pow(x, 14).a0);
    CHECK(t.in_base(t.pow(x, 14)));
    CHECK(t.q2(t.trace(x)) == t.add(x, t.frob(x)));
    const Fq4 y = random_q4(t, rng);
    CHECK(t.frob(y) == slow_pow(t, y, 13));
    CHECK(t.frob(y, 2) == t.pow(y, 169));
    CHECK(t.frob(t.frob(y, 2), 2) == y);
    const Fq4 n4 = t.pow(y, 170);
    CHECK(t.in_q2(n4));
    CHECK(n4.b0 == t.norm(y));
    CHECK(t.trace(y) == t.add(y, t.frob(y, 2)).b0);
    if (!t.is_zero(x)) CHECK(t.is_one(t.mul(x, t.inv(x))));
  }
  CHECK_THROWS_AS(t.inv(Fp{0}), DomainError);
  CHECK_THROWS_AS(t.inv(Fq2{}), DomainError);
  CHECK_THROWS_AS(t.inv(Fq4{}), DomainError);
  CHECK(t.trace(t.q2(5)) == t.fp(10));
}

TEST_CASE("codes enumerate GF(p^2)") {
  const Tower t = Tower::make(5);
  std::set<Fq2> seen;
  for (std::uint32_t c = 0; c < t.q2_size(); ++c) {
    const Fq2 x = t.from_code(c);
    CHECK(t.code(x) == c);
    seen.insert(x);
  }
  CHECK(seen.size() == 25);
}

TEST_CASE("element wrapper reads like algebra") {
  const Tower t = Tower::make(5);
  const E2 h(t, t.h());
  CHECK((h * h) == 2);
  CHECK((h.frob() + h) == 0);
  const E2 v0 = -2 * (h - 2);
  CHECK(v0.value() == t.mul(t.q2(-2), t.sub(t.h(), t.q2(2))));
  CHECK(((1 / h) * h) == 1);
}
