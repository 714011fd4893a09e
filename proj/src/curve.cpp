// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hemi/curve.hpp"

#include <algorithm>
#include <string>

#include "hemi/linalg.hpp"

namespace hemi::curve {

using ff::Fp;
using ff::Tower;
using geom::Point4;

namespace {

Fq2 signed_power(const Tower& t, const Fq2& x, int sign) {
  const Fq2 r = t.pow(x, (t.p() + 1) / 2);
  return sign < 0 ? t.neg(r) : r;
}

Fq4 signed_power(const Tower& t, const Fq4& x, int sign) {
  const Fq4 r = t.pow(x, (t.p() + 1) / 2);
  return sign < 0 ? t.neg(r) : r;
}

std::vector<Fp> coords(const Fq4& x) { return {x.b0.a0, x.b0.a1, x.b1.a0, x.b1.a1}; }
Fq4 from_coords(const std::vector<Fp>& c) { return {{c[0], c[1]}, {c[2], c[3]}}; }

/// y ↦ y^p − y on GF(p⁴) as a GF(p)-linear map.
linalg::AffineSolver<Fp> artin_schreier(const Tower& t) {
  auto m = linalg::zeros<Fp>(4, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    std::vector<Fp> e(4);
    e[j] = Fp{1};
    const Fq4 y = from_coords(e);
    const auto img = coords(t.sub(t.frob(y), y));
    for (std::size_t i = 0; i < 4; ++i) m[i][j] = img[i];
  }
  linalg::AffineSolver<Fp> solver(t, m);
  if (solver.rank() != 3) throw InternalConsistencyError("y^p - y on GF(p^4) should have a 1-dimensional kernel");
  return solver;
}

/// Calls f(x, y) for every affine GF(q⁴)-point.
template <class F>
void for_each_q4_point(const Tower& t, int sign, F&& f) {
  const auto solver = artin_schreier(t);
  const std::uint32_t n = t.q2_size();
  for (std::uint32_t c0 = 0; c0 < n; ++c0) {
    for (std::uint32_t c1 = 0; c1 < n; ++c1) {
      const Fq4 x{t.from_code(c0), t.from_code(c1)};
      const auto y0 = solver.solve(coords(signed_power(t, x, sign)));
      if (!y0) continue;
      Fq4 y = from_coords(*y0);
      for (std::uint32_t k = 0; k < t.p(); ++k) {
        f(x, y);
        y.b0.a0 = t.add(y.b0.a0, Fp{1});
      }
    }
  }
}

bool rational(const Tower& t, const Fq4& x) { return t.in_q2(x); }

std::uint64_t genus(std::uint64_t q) { return (q - 1) * (q - 1) / 4; }

}  // namespace

std::vector<AffinePoint> affine_points(const Tower& t, int sign) {
  // y^q − y = −2 y1·t, so the right side must lie in t·GF(q).
  std::vector<AffinePoint> out;
  const Fp minus_half = t.neg(t.inv(Fp{2}));
  for (std::uint32_t c = 0; c < t.q2_size(); ++c) {
    const Fq2 x = t.from_code(c);
    const Fq2 rhs = signed_power(t, x, sign);
    if (rhs.a0.v != 0) continue;
    const Fp y1 = t.mul(rhs.a1, minus_half);
    for (std::uint32_t y0 = 0; y0 < t.p(); ++y0) out.push_back({x, Fq2{Fp{y0}, y1}});
  }
  return out;
}

std::vector<PointId> rational_images(const Surface& s, int sign) {
  const Tower& t = s.tower();
  std::vector<PointId> out;
  for (const auto& pt : affine_points(t, sign)) {
    out.push_back(s.point_id({t.q2(1), pt.x, pt.y, t.mul(pt.y, pt.y)}));
  }
  out.push_back(s.vertex_id());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw InternalConsistencyError("curve image is not injective");
  }
  return out;
}

std::vector<QuarticPoint> quartic_points(const Tower& t, int sign) {
  std::vector<QuarticPoint> out;
  for_each_q4_point(t, sign, [&](const Fq4& x, const Fq4& y) {
    if (!(rational(t, x) && rational(t, y))) out.push_back({x, y});
  });
  return out;
}

std::uint64_t quartic_projective_count(const Tower& t, int sign) {
  std::uint64_t n = 1;
  for_each_q4_point(t, sign, [&](const Fq4&, const Fq4&) { ++n; });
  return n;
}

ChordSet imaginary_chords(const Surface& s, int sign) {
  const Tower& t = s.tower();
  ChordSet out;
  for_each_q4_point(t, sign, [&](const Fq4& x, const Fq4& y) {
    if (rational(t, x) && rational(t, y)) return;
    ++out.quartic_points;
    // Q = A + sB with A, B over GF(q²); Q and its conjugate A − sB span ⟨A, B⟩.
    const Fq4 y2 = t.mul(y, y);
    const Point4 a{t.q2(1), x.b0, y.b0, y2.b0};
    const Point4 b{Fq2{}, x.b1, y.b1, y2.b1};
    const auto id = s.find_generator(geom::canonical_line(t, a, b));
    if (!id) throw InternalConsistencyError("imaginary chord through " + geom::to_string(a) + " is not a generator");
    out.lines.push_back(*id);
  });
  std::sort(out.lines.begin(), out.lines.end());
  // Each chord must come from exactly two conjugate points.
  for (std::size_t i = 0; i < out.lines.size(); i += 2) {
    if (i + 1 >= out.lines.size() || out.lines[i] != out.lines[i + 1] ||
        (i + 2 < out.lines.size() && out.lines[i + 2] == out.lines[i])) {
      throw InternalConsistencyError("quartic points do not pair two per chord");
    }
  }
  out.lines.erase(std::unique(out.lines.begin(), out.lines.end()), out.lines.end());
  return out;
}

CurveTables build_tables(const Surface& s) {
  const Tower& t = s.tower();
  const std::uint64_t q = t.p();
  const std::uint64_t g = genus(q);
  CurveTables ct;
  ct.x_plus = rational_images(s, 1);
  ct.x_minus = rational_images(s, -1);
  const std::uint64_t maximal = q * q + 1 + 2 * q * g;
  if (ct.x_plus.size() != maximal || ct.x_minus.size() != maximal) {
    throw InternalConsistencyError("rational point count " + std::to_string(ct.x_plus.size()) + " is not maximal (" +
                                   std::to_string(maximal) + ")");
  }
  std::set_intersection(ct.x_plus.begin(), ct.x_plus.end(), ct.x_minus.begin(), ct.x_minus.end(),
                        std::back_inserter(ct.omega));
  std::set_difference(ct.x_plus.begin(), ct.x_plus.end(), ct.omega.begin(), ct.omega.end(),
                      std::back_inserter(ct.delta_plus));
  std::set_difference(ct.x_minus.begin(), ct.x_minus.end(), ct.omega.begin(), ct.omega.end(),
                      std::back_inserter(ct.delta_minus));
  if (ct.omega.size() != q + 1 || ct.delta_plus.size() != (q * q * q - q) / 2 ||
      ct.delta_minus.size() != ct.delta_plus.size()) {
    throw InternalConsistencyError("Omega / Delta split has wrong sizes");
  }

  auto chords = imaginary_chords(s, 1);
  ct.quartic_plus = chords.quartic_points;
  ct.q4_count_plus = chords.quartic_points + maximal;
  const std::uint64_t q2 = q * q;
  if (ct.q4_count_plus != q2 * q2 + 1 - 2 * q2 * g) {
    throw InternalConsistencyError("GF(q^4) point count " + std::to_string(ct.q4_count_plus) + " is not minimal");
  }
  ct.chords = std::move(chords.lines);
  if (ct.chords.size() != (q2 + q) * (q2 - q - 2 * g) / 2) {
    throw InternalConsistencyError("imaginary chord count " + std::to_string(ct.chords.size()) + " is wrong");
  }
  // No chord meets a rational curve point.
  std::vector<bool> on_curve(s.num_points(), false);
  for (auto p : ct.x_plus) on_curve[p] = true;
  for (auto l : ct.chords) {
    s.for_each_point(l, [&](PointId p) {
      if (on_curve[p]) throw InternalConsistencyError("imaginary chord meets a rational curve point");
    });
  }
  return ct;
}

void classify_omega(const Surface& s, const CurveTables& ct) {
  const Tower& t = s.tower();
  if (ct.omega.size() != t.p() + 1) throw InternalConsistencyError("|Omega| != q+1");
  for (auto id : ct.omega) {
    const Point4 x = s.point(id);
    const Fq2 conic = t.sub(t.mul(x[0], x[3]), t.mul(x[2], x[2]));
    const Fq2 herm = t.sub(t.add(t.mul(t.frob(x[0]), x[3]), t.mul(x[0], t.frob(x[3]))),
                           t.q2(t.add(t.norm(x[2]), t.norm(x[2]))));
    if (!t.is_zero(x[1]) || !t.is_zero(conic) || !t.is_zero(herm)) {
      throw InternalConsistencyError("Omega point " + geom::to_string(x) + " is off the plane section");
    }
  }
}

std::vector<LineId> Classification::of(GenClass c) const {
  std::vector<LineId> out;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (cls[i] == c) out.push_back(static_cast<LineId>(i));
  }
  return out;
}

Classification classify_generators(const Surface& s, const CurveTables& ct) {
  const std::uint64_t q = s.q();
  const std::size_t n = s.num_generators();
  std::vector<std::uint8_t> dp(n, 0), dm(n, 0), om(n, 0);
  auto mark = [&](const std::vector<PointId>& pts, std::vector<std::uint8_t>& hits) {
    for (auto p : pts) {
      for (auto l : s.generators_through(p)) ++hits[l];
    }
  };
  mark(ct.delta_plus, dp);
  mark(ct.delta_minus, dm);
  mark(ct.omega, om);

  Classification c;
  c.cls.assign(n, GenClass::outside);
  for (std::size_t l = 0; l < n; ++l) {
    const bool meets_plus = dp[l] || om[l];
    const bool meets_minus = dm[l] || om[l];
    if (meets_plus != meets_minus) {
      throw InternalConsistencyError("generator " + std::to_string(l) + " meets only one of the two curves");
    }
    if (om[l]) {
      if (om[l] != 1 || dp[l] || dm[l]) throw InternalConsistencyError("G2 line meets the curves off Omega");
      c.cls[l] = GenClass::g2;
      ++c.g2;
    } else if (dp[l] || dm[l]) {
      if (dp[l] != 1 || dm[l] != 1) throw InternalConsistencyError("G1 line does not meet Delta+ and Delta- once each");
      c.cls[l] = GenClass::g1;
      ++c.g1;
    }
  }
  for (auto l : ct.chords) {
    if (c.cls[l] != GenClass::outside) throw InternalConsistencyError("imaginary chord meets the curve");
    c.cls[l] = GenClass::chord;
  }
  c.chord = static_cast<std::uint32_t>(ct.chords.size());
  c.outside = static_cast<std::uint32_t>(n) - c.g1 - c.g2 - c.chord;
  if (c.g1 != (q * q * q - q) * (q + 1) / 2 || c.g2 != (q + 1) * (q + 1) || c.outside == 0) {
    throw InternalConsistencyError("generator class counts are wrong: G1=" + std::to_string(c.g1) +
                                   " G2=" + std::to_string(c.g2));
  }
  return c;
}

std::optional<LineId> g1_witness(const Surface& s, const Fq2& v, const Fq2& tv, const Fq2& u, const Fq2& sv) {
  const Tower& t = s.tower();
  const std::uint64_t q = t.p();
  const Fq2 vt = t.mul(v, tv);
  const Fq2 f = t.sub(t.pow(t.add(v, tv), q + 1), t.mul(t.q2(2), t.add(vt, t.frob(vt))));
  if (!t.is_zero(f)) return std::nullopt;
  if (t.pow(u, (q + 1) / 2) != t.sub(t.frob(v), v)) return std::nullopt;
  if (t.neg(t.pow(sv, (q + 1) / 2)) != t.sub(t.frob(tv), tv)) return std::nullopt;
  const Fq2 d = t.sub(tv, t.frob(v));
  if (t.mul(t.frob(u), sv) != t.mul(d, d)) return std::nullopt;
  const Point4 p{t.q2(1), u, v, t.mul(v, v)};
  const Point4 r{t.q2(1), sv, tv, t.mul(tv, tv)};
  if (p == r) return std::nullopt;
  return s.find_generator(geom::canonical_line(t, p, r));
}

}  // namespace hemi::curve
