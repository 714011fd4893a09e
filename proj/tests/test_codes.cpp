// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "hemi/codes.hpp"
#include "hemi/hemisystem.hpp"

using namespace hemi;
using namespace hemi::codes;

namespace {

struct P5 {
  hs::Model m{5, hs::ModelOptions{}};
  hs::Certificate c = hs::assemble(m);
  KleinImages k = klein_images(m.surface);
  QuadricFit fit = fit_quadric(m.tower, k.points);
  std::vector<Point6> set = select(k, c.lines);
};

const P5& p5() {
  static const P5 f;
  return f;
}

Quadric form_from(const Tower& t, std::initializer_list<std::tuple<int, int, std::int64_t>> terms) {
  Quadric q;
  for (auto [i, j, c] : terms) {
    std::size_t idx = 0;
    for (int a = 0; a < 6; ++a) {
      for (int b = a; b < 6; ++b, ++idx) {
        if (a == i && b == j) q.coeffs[idx] = t.fp(c);
      }
    }
  }
  return q;
}

bool share_point(const geom::Surface& s, LineId a, LineId b) {
  std::vector<geom::PointId> pa, pb;
  s.for_each_point(a, [&](geom::PointId x) { pa.push_back(x); });
  s.for_each_point(b, [&](geom::PointId x) { pb.push_back(x); });
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  std::vector<geom::PointId> both;
  std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(both));
  return !both.empty();
}

}  // namespace

TEST_CASE("quadric point counts") {
  const auto t = Tower::make(5);
  CHECK(elliptic_count(5) == 756);
  CHECK(hyperbolic_count(5) == 806);
  CHECK(elliptic_count(5) != hyperbolic_count(5));
  const auto hyp = form_from(t, {{0, 1, 1}, {2, 3, 1}, {4, 5, 1}});
  CHECK(zero_count(t, hyp) == 806);
  CHECK_FALSE(t.is_zero(hyp.discriminant(t)));
  // x4² − n x5² is anisotropic for a non-square n.
  const auto ell = form_from(t, {{0, 1, 1}, {2, 3, 1}, {4, 4, 1}, {5, 5, -2}});
  CHECK(zero_count(t, ell) == 756);
  const auto deg = form_from(t, {{0, 1, 1}, {2, 3, 1}});
  CHECK(t.is_zero(deg.discriminant(t)));
}

TEST_CASE("polar form is bilinear and symmetric") {
  const auto t = Tower::make(5);
  const auto q = form_from(t, {{0, 1, 1}, {2, 3, 1}, {4, 4, 1}, {5, 5, -2}, {0, 4, 3}});
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint32_t> d(0, 4);
  auto rnd = [&] {
    Point6 x;
    for (auto& c : x) c = Fp{d(rng)};
    return x;
  };
  for (int i = 0; i < 1000; ++i) {
    const auto x = rnd(), y = rnd(), z = rnd();
    Point6 yz;
    for (int j = 0; j < 6; ++j) yz[j] = t.add(y[j], z[j]);
    CHECK(q.polar(t, x, y) == q.polar(t, y, x));
    CHECK(q.polar(t, x, yz) == t.add(q.polar(t, x, y), q.polar(t, x, z)));
    CHECK(q.polar(t, x, x) == t.mul(t.fp(2), q.eval(t, x)));
  }
}

TEST_CASE("Klein images lie on an elliptic quadric") {
  const auto& f = p5();
  const auto& t = f.m.tower;
  CHECK(f.k.points.size() == 756);
  CHECK(f.fit.solution_dim == 1);
  CHECK(f.fit.zeros == 756);
  std::vector<Point6> sorted = f.k.points;
  std::sort(sorted.begin(), sorted.end(), [](const Point6& a, const Point6& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](Fp x, Fp y) { return x.v < y.v; });
  });
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  for (const auto& x : f.k.points) CHECK(t.is_zero(f.fit.form.eval(t, x)));
  std::vector<Point6> few(f.k.points.begin(), f.k.points.begin() + 20);
  CHECK_THROWS_AS(fit_quadric(t, few), ConstructionError);
}

TEST_CASE("concurrent generators are perpendicular images") {
  const auto& f = p5();
  const auto& t = f.m.tower;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<LineId> pick(0, 755);
  std::uint32_t meeting = 0;
  for (int i = 0; i < 3000; ++i) {
    const LineId a = pick(rng), b = pick(rng);
    if (a == b) continue;
    const bool meet = share_point(f.m.surface, a, b);
    meeting += meet;
    CHECK(meet == t.is_zero(f.fit.form.polar(t, f.k.points[a], f.k.points[b])));
  }
  CHECK(meeting > 0);
}

TEST_CASE("two-intersection set at p=5") {
  const auto& f = p5();
  const auto& t = f.m.tower;
  const auto ic = two_intersection(t, f.set, 2);
  CHECK(ic.n == 378);
  CHECK(ic.hyperplanes == 3906);
  CHECK(ic.two_valued(78, 53));
  CHECK(ic.histogram == std::map<std::uint64_t, std::uint64_t>{{53, 378}, {78, 3528}});
  CHECK_FALSE(ic.witness.has_value());
  // Each point lies on (q⁵−1)/(q−1) hyperplanes.
  std::uint64_t sum = 0;
  for (auto [size, count] : ic.histogram) sum += size * count;
  CHECK(sum == 378u * 781u);
  CHECK(78u * 3528u + 53u * 378u == 378u * 781u);

  CHECK_THROWS_AS(two_intersection(t, f.set, 1, 1000), ResourceLimitError);
}

TEST_CASE("frame independence") {
  const auto& f = p5();
  const auto& t = f.m.tower;
  const auto k2 = klein_images(f.m.surface, 400);
  CHECK(k2.frame.lines[0] == 400);
  CHECK(fit_quadric(t, k2.points).zeros == 756);
  const auto ic = two_intersection(t, select(k2, f.c.lines));
  CHECK(ic.histogram == two_intersection(t, f.set).histogram);
}

TEST_CASE("two-weight code at p=5") {
  const auto& f = p5();
  const auto& t = f.m.tower;
  const auto wd = weight_distribution(t, f.set, 3);
  CHECK(wd.n == 378);
  CHECK(wd.nonzero_weights() == std::vector<std::uint64_t>{300, 325});
  CHECK(wd.counts == std::map<std::uint64_t, std::uint64_t>{{0, 1}, {300, 14112}, {325, 1512}});
  CHECK(pless_moment0(wd));
  CHECK(pless_moment1(wd));
  CHECK(pless_moment2(wd));
  CHECK_FALSE(wd.witness.has_value());

  // Weights from the hyperplane histogram: w = n − |Σ ∩ H|, q − 1 words per hyperplane.
  const auto ic = two_intersection(t, f.set);
  std::map<std::uint64_t, std::uint64_t> from_h{{0, 1}};
  for (auto [size, count] : ic.histogram) from_h[378 - size] += count * 4;
  CHECK(from_h == wd.counts);

  CHECK_THROWS_AS(weight_distribution(t, f.set, 1, 1000), ResourceLimitError);

  auto broken = wd;
  broken.counts[300] -= 1;
  CHECK_FALSE(pless_moment0(broken));

  const auto csv = generator_matrix_csv(f.set);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(std::count(csv.begin(), csv.end(), ',') == 6 * 377);
  CHECK(weights_json(wd).find("\"325\"") != std::string::npos);
  CHECK(points_csv(f.set).rfind("x0,x1,x2,x3,x4,x5\n", 0) == 0);
}

TEST_CASE("omega from a set") {
  const auto& f = p5();
  const auto om = omega_from_set(f.m.tower, f.set);
  CHECK(om.size() == 378 * 4);
}
