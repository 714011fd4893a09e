// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "hemi/curve.hpp"

using namespace hemi;
using namespace hemi::curve;
using geom::Point4;

namespace {

struct Fixture {
  ff::Tower t = ff::Tower::make(5);
  geom::Surface s = geom::Surface::build(t);
  CurveTables ct = build_tables(s);
  Classification cls = classify_generators(s, ct);
};

const Fixture& fx() {
  static const Fixture f;
  return f;
}

}  // namespace

TEST_CASE("rational points at p=5") {
  const auto& f = fx();
  CHECK(f.ct.x_plus.size() == 66);
  CHECK(f.ct.x_minus.size() == 66);
  CHECK(f.ct.omega.size() == 6);
  CHECK(f.ct.delta_plus.size() == 60);
  CHECK(f.ct.delta_minus.size() == 60);
  // Brute-force oracle over all pairs (x, y).
  const auto& t = f.t;
  std::size_t count = 0;
  for (std::uint32_t a = 0; a < 25; ++a) {
    for (std::uint32_t b = 0; b < 25; ++b) {
      const ff::Fq2 x = t.from_code(a), y = t.from_code(b);
      if (t.sub(t.frob(y), y) == t.pow(x, 3)) {
        ++count;
        const Point4 img{t.q2(1), x, y, t.mul(y, y)};
        CHECK(geom::on_surface(t, img));
        CHECK(std::binary_search(f.ct.x_plus.begin(), f.ct.x_plus.end(), f.s.point_id(img)));
      }
    }
  }
  CHECK(count + 1 == 66);
}

TEST_CASE("Omega is the X1 = 0 section") {
  const auto& f = fx();
  CHECK_NOTHROW(classify_omega(f.s, f.ct));
  const auto& t = f.t;
  const auto o = f.s.point_id({t.q2(1), ff::Fq2{}, ff::Fq2{}, ff::Fq2{}});
  CHECK(std::binary_search(f.ct.omega.begin(), f.ct.omega.end(), o));
  CHECK(std::binary_search(f.ct.omega.begin(), f.ct.omega.end(), f.s.vertex_id()));
  for (auto id : f.ct.omega) {
    const Point4 x = f.s.point(id);
    for (const auto& c : x) CHECK(t.in_base(c));
  }
  CurveTables broken = f.ct;
  broken.omega[1] = f.ct.delta_plus[0];
  CHECK_THROWS_AS(classify_omega(f.s, broken), InternalConsistencyError);
}

TEST_CASE("quartic points and imaginary chords at p=5") {
  const auto& f = fx();
  CHECK(quartic_projective_count(f.t, 1) == 426);
  CHECK(quartic_projective_count(f.t, -1) == 426);
  const auto qp = quartic_points(f.t, 1);
  CHECK(qp.size() == 360);
  CHECK(f.ct.q4_count_plus == 426);
  CHECK(f.ct.chords.size() == 180);
  // Brute-force oracle for the GF(q⁴) count: scan all (x, y).
  const auto& t = f.t;
  std::uint64_t brute = 1;
  for (std::uint32_t a = 0; a < 625; ++a) {
    const ff::Fq4 x{t.from_code(a % 25), t.from_code(a / 25)};
    const ff::Fq4 rhs = t.pow(x, 3);
    for (std::uint32_t b = 0; b < 625; ++b) {
      const ff::Fq4 y{t.from_code(b % 25), t.from_code(b / 25)};
      if (t.sub(t.frob(y), y) == rhs) ++brute;
    }
  }
  CHECK(brute == 426);
  // Every chord is a generator pairing two conjugate points.
  for (const auto& p : qp) {
    const ff::Fq4 y2 = t.mul(p.y, p.y);
    const Point4 a{t.q2(1), p.x.b0, p.y.b0, y2.b0};
    const Point4 b{ff::Fq2{}, p.x.b1, p.y.b1, y2.b1};
    const auto id = f.s.find_generator(geom::canonical_line(t, a, b));
    REQUIRE(id.has_value());
    CHECK(std::binary_search(f.ct.chords.begin(), f.ct.chords.end(), *id));
  }
}

TEST_CASE("generator classes at p=5") {
  const auto& f = fx();
  CHECK(f.cls.g1 == 360);
  CHECK(f.cls.g2 == 36);
  CHECK(f.cls.chord == 180);
  CHECK(f.cls.outside == 180);
  for (auto l : f.cls.of(GenClass::g2)) {
    const auto on = f.s.points_on(l);
    const auto hits = std::count_if(on.begin(), on.end(), [&](auto p) {
      return std::binary_search(f.ct.omega.begin(), f.ct.omega.end(), p);
    });
    CHECK(hits == 1);
  }
  for (auto l : f.cls.of(GenClass::g1)) {
    const auto on = f.s.points_on(l);
    auto hits = [&](const std::vector<geom::PointId>& set) {
      return std::count_if(on.begin(), on.end(), [&](auto p) { return std::binary_search(set.begin(), set.end(), p); });
    };
    CHECK(hits(f.ct.delta_plus) == 1);
    CHECK(hits(f.ct.delta_minus) == 1);
  }
}

TEST_CASE("G1 witness scan recovers G1 at p=5") {
  const auto& f = fx();
  const auto& t = f.t;
  const auto pts_p = affine_points(t, 1);
  const auto pts_m = affine_points(t, -1);
  std::set<LineId> found;
  for (const auto& a : pts_p) {
    for (const auto& b : pts_m) {
      if (auto l = g1_witness(f.s, a.y, b.y, a.x, b.x)) found.insert(*l);
    }
  }
  const auto g1 = f.cls.of(GenClass::g1);
  CHECK(found == std::set<LineId>(g1.begin(), g1.end()));
  CHECK_FALSE(g1_witness(f.s, ff::Fq2{}, ff::Fq2{}, t.q2(1), ff::Fq2{}).has_value());
  CHECK_FALSE(g1_witness(f.s, ff::Fq2{}, ff::Fq2{}, ff::Fq2{}, ff::Fq2{}).has_value());
}

TEST_CASE("curve tables at p=37") {
  const ff::Tower t = ff::Tower::make(37);
  const geom::Surface s = geom::Surface::build(t);
  const auto ct = build_tables(s);
  CHECK(ct.x_plus.size() == 37u * 37 + 1 + 2 * 37 * 324);
  CHECK(ct.omega.size() == 38);
  CHECK(ct.chords.size() == 480852);
  const auto cls = classify_generators(s, ct);
  CHECK(cls.g1 == (37u * 37 * 37 - 37) * 38 / 2);
  CHECK(cls.g2 == 38 * 38);
  CHECK(cls.outside > 0);
  // φ maps rational points onto U₃ (sampled).
  for (std::size_t i = 0; i < ct.x_plus.size(); i += 101) CHECK(geom::on_surface(t, s.point(ct.x_plus[i])));
}
