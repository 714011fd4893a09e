// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hemi/codes.hpp"
#include "hemi/graphs.hpp"

using namespace hemi;
using namespace hemi::graphs;

namespace {

BitGraph petersen() {
  // Vertices are 2-subsets of {0..4}, adjacent when disjoint.
  std::vector<std::pair<int, int>> v;
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) v.emplace_back(a, b);
  }
  BitGraph g(10);
  for (std::uint32_t i = 0; i < 10; ++i) {
    for (std::uint32_t j = i + 1; j < 10; ++j) {
      const auto [a, b] = v[i];
      const auto [c, d] = v[j];
      if (a != c && a != d && b != c && b != d) g.add_edge(i, j);
    }
  }
  return g;
}

BitGraph paley(std::uint32_t p) {
  std::set<std::uint32_t> sq;
  for (std::uint32_t x = 1; x < p; ++x) sq.insert(x * x % p);
  BitGraph g(p);
  for (std::uint32_t i = 0; i < p; ++i) {
    for (std::uint32_t j = i + 1; j < p; ++j) {
      if (sq.count((j - i) % p)) g.add_edge(i, j);
    }
  }
  return g;
}

struct P5 {
  hs::Model m{5, hs::ModelOptions{}};
  hs::Certificate c = hs::assemble(m);
};

const P5& p5() {
  static const P5 f;
  return f;
}

}  // namespace

TEST_CASE("spectrum and feasibility formulas") {
  const SrgParams pet{10, 3, 0, 1};
  CHECK(feasible(pet));
  const auto s = spectrum(pet);
  REQUIRE(s.has_value());
  CHECK(*s == Spectrum{1, -2, 5, 4});
  CHECK(trace_identities(pet, *s));

  CHECK_FALSE(feasible(SrgParams{10, 3, 1, 1}));
  CHECK_FALSE(spectrum(SrgParams{10, 4, 0, 1}).has_value());

  const auto thas = thas_params(5, 3);
  CHECK(thas == SrgParams{378, 52, 1, 8});
  CHECK(feasible(thas));
  const auto ts = spectrum(thas);
  REQUIRE(ts.has_value());
  CHECK(*ts == thas_spectrum_closed_form(5));
  CHECK(*ts == Spectrum{4, -11, 273, 104});
  CHECK(trace_identities(thas, *ts));
}

TEST_CASE("closed-form spectrum across q") {
  for (std::int64_t q = 3; q <= 61; q += 2) {
    const auto p = thas_params(q, (q + 1) / 2);
    CAPTURE(q);
    CHECK(feasible(p));
    const auto s = spectrum(p);
    REQUIRE(s.has_value());
    CHECK(*s == thas_spectrum_closed_form(q));
    CHECK(trace_identities(p, *s));
  }
}

TEST_CASE("regular system candidates") {
  CHECK(regular_system_candidates(5) == std::vector<std::int64_t>{3});
  for (std::int64_t q = 3; q <= 41; q += 2) {
    const auto c = regular_system_candidates(q);
    CAPTURE(q);
    CHECK(std::find(c.begin(), c.end(), (q + 1) / 2) != c.end());
    for (auto m : c) {
      const auto p = thas_params(q, m);
      CHECK(counting_rhs(q, m, p.mu, false) == m * (q * q * q + 1));
    }
  }
  // The variant ending in −q²+1−μ does not balance.
  const auto p = thas_params(5, 3);
  CHECK(counting_rhs(5, 3, p.mu, true) != 3 * 126);
}

TEST_CASE("bit graph") {
  BitGraph g(130);
  g.add_edge(0, 129);
  g.add_edge(0, 64);
  g.add_edge(64, 129);
  CHECK(g.adjacent(129, 0));
  CHECK(g.adjacent(0, 64));
  CHECK_FALSE(g.adjacent(1, 64));
  CHECK(g.degree(0) == 2);
  CHECK(g.common(0, 129) == 1);
  CHECK(g.words() == 3);
}

TEST_CASE("verify_srg on known graphs") {
  const auto pet = verify_srg(petersen());
  CHECK(pet.ok());
  CHECK(pet.params == SrgParams{10, 3, 0, 1});

  // Conference graph: strongly regular with irrational eigenvalues.
  const auto pal = verify_srg(paley(13), 3);
  CHECK(pal.strongly_regular);
  CHECK(pal.params == SrgParams{13, 6, 2, 3});
  CHECK_FALSE(pal.spec.has_value());
  CHECK_FALSE(pal.ok());

  BitGraph k4(4);
  for (std::uint32_t i = 0; i < 4; ++i) {
    for (std::uint32_t j = i + 1; j < 4; ++j) k4.add_edge(i, j);
  }
  const auto complete = verify_srg(k4);
  CHECK(complete.regular);
  CHECK(complete.degenerate);
  CHECK_FALSE(complete.ok());

  BitGraph path(4);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  path.add_edge(2, 3);
  CHECK_FALSE(verify_srg(path).regular);

  // Two disjoint triangles.
  BitGraph tt(6);
  for (std::uint32_t b : {0u, 3u}) {
    tt.add_edge(b, b + 1);
    tt.add_edge(b + 1, b + 2);
    tt.add_edge(b, b + 2);
  }
  const auto r = verify_srg(tt);
  CHECK(r.regular);
  CHECK(r.params.mu == 0);

  // C6 is regular but not strongly regular.
  BitGraph c6(6);
  for (std::uint32_t i = 0; i < 6; ++i) c6.add_edge(i, (i + 1) % 6);
  const auto c = verify_srg(c6);
  CHECK(c.regular);
  CHECK_FALSE(c.strongly_regular);
  CHECK(c.witness.has_value());
}

TEST_CASE("graph on the generators off the hemisystem at p=5") {
  const auto& f = p5();
  REQUIRE(f.c.verified);
  const auto g = build_thas_graph(f.c, f.m.surface);
  CHECK(g.vertices.size() == 378);
  for (auto v : g.vertices) CHECK_FALSE(std::binary_search(f.c.lines.begin(), f.c.lines.end(), v));
  const auto rep = verify_srg(g.graph, 2);
  CHECK(rep.ok());
  CHECK(rep.params == thas_params(5, 3));
  REQUIRE(rep.spec.has_value());
  CHECK(*rep.spec == thas_spectrum_closed_form(5));

  // Adjacency against a direct point-set intersection.
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint32_t> pick(0, 377);
  for (int i = 0; i < 2000; ++i) {
    const auto a = pick(rng), b = pick(rng);
    if (a == b) continue;
    std::vector<geom::PointId> pa, pb;
    f.m.surface.for_each_point(g.vertices[a], [&](geom::PointId x) { pa.push_back(x); });
    f.m.surface.for_each_point(g.vertices[b], [&](geom::PointId x) { pb.push_back(x); });
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    std::vector<geom::PointId> both;
    std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(both));
    CHECK(g.graph.adjacent(a, b) == !both.empty());
  }

  auto unverified = f.c;
  unverified.verified = false;
  CHECK_THROWS_AS(build_thas_graph(unverified, f.m.surface), PreconditionError);
  CHECK_THROWS_AS(build_thas_graph(f.c, f.m.surface, 100), ResourceLimitError);

  const auto csv = edges_csv(g);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 378 * 52 / 2);
  CHECK(params_json(rep).find("\"lambda\"") != std::string::npos);
}

TEST_CASE("Cayley graph construction") {
  std::vector<geom::Point6> bad{{ff::Fp{0}, ff::Fp{0}, ff::Fp{0}, ff::Fp{0}, ff::Fp{0}, ff::Fp{0}}};
  CHECK_THROWS_AS(CayleyGraph(5, bad), DomainError);
  std::vector<geom::Point6> asym{{ff::Fp{1}, ff::Fp{0}, ff::Fp{0}, ff::Fp{0}, ff::Fp{0}, ff::Fp{0}}};
  CHECK_THROWS_AS(CayleyGraph(5, asym), DomainError);
  asym.push_back({ff::Fp{4}, ff::Fp{0}, ff::Fp{0}, ff::Fp{0}, ff::Fp{0}, ff::Fp{0}});
  const CayleyGraph g(5, asym);
  CHECK(g.size() == 15625);
  CHECK(g.degree() == 2);
  for (std::uint64_t x : {0ull, 1ull, 777ull, 15624ull}) CHECK(g.encode(g.decode(x)) == x);
}

TEST_CASE("Cayley graph of the two-intersection set at p=5") {
  const auto& f = p5();
  const auto& t = f.m.tower;
  const auto k = codes::klein_images(f.m.surface);
  const auto set = codes::select(k, f.c.lines);
  const CayleyGraph g(5, codes::omega_from_set(t, set));
  CHECK(g.degree() == 1512);
  const auto rep = verify_cayley(g, 2);
  CHECK(rep.ok());

  // λ and μ from the two nonzero weights: θ_i = k − q·w_i.
  const auto wd = codes::weight_distribution(t, set);
  const auto w = wd.nonzero_weights();
  REQUIRE(w.size() == 2);
  const std::int64_t kk = 1512, th1 = kk - 5 * static_cast<std::int64_t>(w[0]),
                     th2 = kk - 5 * static_cast<std::int64_t>(w[1]);
  CHECK(rep.params == SrgParams{15625, kk, kk + th1 + th2 + th1 * th2, kk + th1 * th2});
  CHECK(rep.params.lambda == 55);
  CHECK(rep.params.mu == 156);

  const auto stated = cayley_params(5, 3);
  CHECK(stated.v == rep.params.v);
  CHECK(stated.k == rep.params.k);
  CHECK(stated.mu == rep.params.mu);

  std::mt19937_64 rng(11);
  CHECK(cayley_pair_oracle(g, rep.params, rng, 400) == 0);
  SrgParams wrong = rep.params;
  wrong.lambda += 1;
  wrong.mu += 1;
  CHECK(cayley_pair_oracle(g, wrong, rng, 400) > 0);
}
