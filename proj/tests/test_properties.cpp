// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "hemi/codes.hpp"
#include "hemi/hemisystem.hpp"

using namespace hemi;
using ff::Fp;
using ff::Fq2;
using ff::Fq4;
using ff::Tower;
using geom::LineId;

namespace {

constexpr int kCases = 1000;

std::mt19937_64& rng() {
  static std::mt19937_64 r(20260101);
  return r;
}

Fp rand_fp(const Tower& t) { return Fp{static_cast<std::uint32_t>(rng()() % t.p())}; }
Fq2 rand_q2(const Tower& t) { return {rand_fp(t), rand_fp(t)}; }
Fq4 rand_q4(const Tower& t) { return {rand_q2(t), rand_q2(t)}; }

const hs::Model& m5() {
  static const hs::Model m(5, hs::ModelOptions{});
  return m;
}

}  // namespace

TEST_CASE("field axioms in GF(p^2) and GF(p^4)") {
  for (std::uint32_t p : {5u, 13u, 37u, 1009u}) {
    const auto t = Tower::make(p);
    for (int i = 0; i < kCases; ++i) {
      const auto a = rand_q2(t), b = rand_q2(t), c = rand_q2(t);
      CHECK(t.mul(a, t.mul(b, c)) == t.mul(t.mul(a, b), c));
      CHECK(t.mul(a, t.add(b, c)) == t.add(t.mul(a, b), t.mul(a, c)));
      CHECK(t.mul(a, b) == t.mul(b, a));
      CHECK(t.add(a, t.neg(a)) == Fq2{});
      if (!t.is_zero(a)) CHECK(t.is_one(t.mul(a, t.inv(a))));

      const auto x = rand_q4(t), y = rand_q4(t), z = rand_q4(t);
      CHECK(t.mul(x, t.mul(y, z)) == t.mul(t.mul(x, y), z));
      CHECK(t.mul(x, t.add(y, z)) == t.add(t.mul(x, y), t.mul(x, z)));
      CHECK(t.mul(x, y) == t.mul(y, x));
      if (!t.is_zero(x)) CHECK(t.is_one(t.mul(x, t.inv(x))));
    }
    for (int i = 0; i < kCases; ++i) {
      const auto a = rand_q2(t);
      CHECK(t.pow(a, std::uint64_t{p} * p) == a);
    }
  }
}

TEST_CASE("Frobenius, norm and trace") {
  for (std::uint32_t p : {5u, 13u, 37u, 1009u}) {
    const auto t = Tower::make(p);
    for (int i = 0; i < kCases; ++i) {
      const auto a = rand_q2(t), b = rand_q2(t);
      CHECK(t.frob(t.mul(a, b)) == t.mul(t.frob(a), t.frob(b)));
      CHECK(t.frob(t.add(a, b)) == t.add(t.frob(a), t.frob(b)));
      CHECK(t.frob(a) == t.pow(a, p));
      CHECK(t.frob(t.frob(a)) == a);
      CHECK(t.norm(t.mul(a, b)) == t.mul(t.norm(a), t.norm(b)));
      CHECK(t.q2(t.norm(a)) == t.mul(a, t.frob(a)));
      CHECK(t.q2(t.trace(a)) == t.add(a, t.frob(a)));

      const auto x = rand_q4(t), y = rand_q4(t);
      CHECK(t.frob(t.mul(x, y)) == t.mul(t.frob(x), t.frob(y)));
      CHECK(t.frob(x) == t.pow(x, p));
      CHECK(t.frob(x, 4) == x);
      CHECK(t.in_q2(t.q4(t.norm(x))));
      CHECK(t.q4(t.norm(x)) == t.mul(x, t.frob(x, 2)));
    }
  }
}

TEST_CASE("square roots") {
  for (std::uint32_t p : {5u, 13u, 37u, 1009u}) {
    const auto t = Tower::make(p);
    for (int i = 0; i < kCases; ++i) {
      const auto a = rand_q2(t);
      const auto sq = t.mul(a, a);
      const auto r = t.sqrt(sq);
      REQUIRE(r.has_value());
      CHECK(t.mul(*r, *r) == sq);
      const auto b = rand_q2(t);
      CHECK(t.sqrt(b).has_value() == t.is_square(b));
      const auto c = rand_fp(t);
      CHECK(t.sqrt(c).has_value() == (t.legendre(c) >= 0));
    }
  }
}

TEST_CASE("projective normalization is idempotent and scale invariant") {
  const auto t = Tower::make(13);
  for (int i = 0; i < kCases; ++i) {
    geom::Point4 x{rand_q2(t), rand_q2(t), rand_q2(t), rand_q2(t)};
    if (std::all_of(x.begin(), x.end(), [&](const Fq2& c) { return t.is_zero(c); })) continue;
    const auto n1 = geom::normalized(t, x);
    CHECK(geom::normalized(t, n1) == n1);
    Fq2 s = rand_q2(t);
    if (t.is_zero(s)) s = t.q2(1);
    geom::Point4 y;
    for (int j = 0; j < 4; ++j) y[j] = t.mul(x[j], s);
    CHECK(geom::normalized(t, y) == n1);
  }
}

TEST_CASE("canonical line does not depend on the spanning pair") {
  const auto t = Tower::make(13);
  int done = 0;
  while (done < kCases) {
    geom::Point4 a{rand_q2(t), rand_q2(t), rand_q2(t), rand_q2(t)};
    geom::Point4 b{rand_q2(t), rand_q2(t), rand_q2(t), rand_q2(t)};
    linalg::Matrix<Fq2> m{{a.begin(), a.end()}, {b.begin(), b.end()}};
    if (linalg::rank(t, m) != 2) continue;
    const auto l = geom::canonical_line(t, a, b);
    // Another basis: (a + λb, μb).
    const auto lam = rand_q2(t);
    Fq2 mu = rand_q2(t);
    if (t.is_zero(mu)) mu = t.q2(1);
    geom::Point4 c, d;
    for (int j = 0; j < 4; ++j) {
      c[j] = t.add(a[j], t.mul(lam, b[j]));
      d[j] = t.mul(mu, b[j]);
    }
    CHECK(geom::canonical_line(t, d, c) == l);
    CHECK(geom::canonical_line(t, l.first, l.second) == l);
    ++done;
  }
}

TEST_CASE("orbit membership is preserved by random elements of the group") {
  const auto& m = m5();
  const auto& t = m.tower;
  const auto& gens = m.group.h_generators;
  const auto g1 = m.cls.of(curve::GenClass::g1);
  const auto g2 = m.cls.of(curve::GenClass::g2);
  for (int i = 0; i < kCases; ++i) {
    auto g = group::identity(t);
    const int len = 1 + static_cast<int>(rng()() % 12);
    for (int j = 0; j < len; ++j) g = group::compose(t, gens[rng()() % gens.size()], g);
    CHECK(g.in_h);
    const LineId a = g1[rng()() % g1.size()];
    CHECK(m.g1_orbits.index_of(group::act(m.surface, g.m, a)) == m.g1_orbits.index_of(a));
    const LineId b = g2[rng()() % g2.size()];
    CHECK(m.g2_orbits.index_of(group::act(m.surface, g.m, b)) == m.g2_orbits.index_of(b));
    // Composition matches sequential action.
    const auto h = gens[rng()() % gens.size()];
    CHECK(group::act(m.surface, group::compose(t, h, g).m, a) ==
          group::act(m.surface, h.m, group::act(m.surface, g.m, a)));
    CHECK(group::act(m.surface, group::inverse(t, g).m, group::act(m.surface, g.m, a)) == a);
  }
}

TEST_CASE("orbit computation is deterministic under input order") {
  const auto& m = m5();
  auto g1 = m.cls.of(curve::GenClass::g1);
  const auto ref = group::orbits(m.surface, m.group.h_matrices(), g1);
  CHECK(ref.orbits == m.g1_orbits.orbits);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(g1.begin(), g1.end(), rng());
    CHECK(group::orbits(m.surface, m.group.h_matrices(), g1).orbits == ref.orbits);
  }
}

TEST_CASE("complement duality on random line sets") {
  const auto& m = m5();
  const auto& s = m.surface;
  const std::uint32_t n = s.num_generators();
  for (int i = 0; i < kCases; ++i) {
    std::vector<LineId> r;
    const std::uint64_t keep = rng()() % 100;
    for (LineId l = 0; l < n; ++l) {
      if (rng()() % 100 < keep) r.push_back(l);
    }
    const auto c = hs::complement(s, r);
    CHECK(r.size() + c.size() == n);
    const auto hr = hs::incidence_histogram(s, r);
    const auto hc = hs::incidence_histogram(s, c);
    CHECK(hr.incidences + hc.incidences == std::uint64_t{n} * 26);
    CHECK(hr.min + hc.max == 6);
    CHECK(hr.max + hc.min == 6);
    CHECK(hs::complement(s, c) == r);
  }
}

TEST_CASE("Pless moments on random projective codes") {
  const auto t = Tower::make(5);
  const geom::ProjectiveSpace5 ps(5);
  for (int i = 0; i < kCases; ++i) {
    const std::size_t n = 1 + rng()() % 8;
    std::vector<std::uint64_t> idx(n);
    for (auto& x : idx) x = rng()() % ps.size();
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    std::vector<geom::Point6> cols;
    for (auto x : idx) cols.push_back(ps.point(x));
    const auto wd = codes::weight_distribution(t, cols);
    CHECK(codes::pless_moment0(wd));
    CHECK(codes::pless_moment1(wd));
    CHECK(codes::pless_moment2(wd));
  }
}
