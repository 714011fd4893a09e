// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hemi/group.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "hemi/linalg.hpp"

namespace hemi::group {

Fp det(const Tower& t, const Mat2& a) { return t.sub(t.mul(a.a, a.d), t.mul(a.b, a.c)); }

Mat4 lift_matrix(const Tower& t, const Mat2& m, const Fq2& mu) {
  const Fp al = m.a, be = m.b, ga = m.c, de = m.d;
  const Fp two{2 % t.p()};
  Mat4 r{};
  // Rows and columns in the order X0, X1, X2, X3.
  r[0][0] = t.q2(t.mul(de, de));
  r[0][2] = t.q2(t.mul(two, t.mul(ga, de)));
  r[0][3] = t.q2(t.mul(ga, ga));
  r[1][1] = mu;
  r[2][0] = t.q2(t.mul(be, de));
  r[2][2] = t.q2(t.add(t.mul(al, de), t.mul(be, ga)));
  r[2][3] = t.q2(t.mul(al, ga));
  r[3][0] = t.q2(t.mul(be, be));
  r[3][2] = t.q2(t.mul(two, t.mul(al, be)));
  r[3][3] = t.q2(t.mul(al, al));
  return r;
}

GroupElement make_element(const Tower& t, const Mat2& a, const Fq2& mu) {
  const Fp d = det(t, a);
  if (d.v == 0) throw DomainError("singular matrix is not in PGL(2,q)");
  if (t.pow(mu, (t.p() + 1) / 2) != t.q2(d)) throw DomainError("mu^((q+1)/2) != det A");
  const Fp lead = a.a.v ? a.a : (a.b.v ? a.b : a.c);
  // (cA, c²μ) and (A, μ) give proportional matrices.
  const Fp c = t.inv(lead);
  GroupElement g;
  g.A = {t.mul(a.a, c), t.mul(a.b, c), t.mul(a.c, c), t.mul(a.d, c)};
  g.mu = t.mul(mu, t.mul(c, c));
  g.m = lift_matrix(t, g.A, g.mu);
  g.in_h = t.is_square(det(t, g.A));
  return g;
}

GroupElement identity(const Tower& t) { return make_element(t, {Fp{1}, Fp{0}, Fp{0}, Fp{1}}, t.q2(1)); }

GroupElement compose(const Tower& t, const GroupElement& x, const GroupElement& y) {
  const Mat2& a = x.A;
  const Mat2& b = y.A;
  const Mat2 ab{t.add(t.mul(a.a, b.a), t.mul(a.b, b.c)), t.add(t.mul(a.a, b.b), t.mul(a.b, b.d)),
                t.add(t.mul(a.c, b.a), t.mul(a.d, b.c)), t.add(t.mul(a.c, b.b), t.mul(a.d, b.d))};
  return make_element(t, ab, t.mul(x.mu, y.mu));
}

GroupElement inverse(const Tower& t, const GroupElement& x) {
  const Mat2& a = x.A;
  // adj(A) = det(A)·A⁻¹, with μ⁻¹·det² as the matching scalar.
  const Mat2 adj{a.d, t.neg(a.b), t.neg(a.c), a.a};
  const Fp d = det(t, a);
  return make_element(t, adj, t.mul(t.inv(x.mu), t.q2(t.mul(d, d))));
}

Mat4 swap_matrix(const Tower& t) {
  Mat4 r{};
  r[0][0] = t.q2(1);
  r[1][1] = t.q2(-1);
  r[2][2] = t.q2(1);
  r[3][3] = t.q2(1);
  return r;
}

Mat4 multiply(const Tower& t, const Mat4& x, const Mat4& y) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      if (t.is_zero(x[i][k])) continue;
      for (int j = 0; j < 4; ++j) r[i][j] = t.add(r[i][j], t.mul(x[i][k], y[k][j]));
    }
  }
  return r;
}

bool proportional(const Tower& t, const Mat4& x, const Mat4& y) {
  // x = c·y for some nonzero c.
  Fq2 c{};
  bool have = false;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (t.is_zero(x[i][j]) != t.is_zero(y[i][j])) return false;
      if (t.is_zero(y[i][j])) continue;
      const Fq2 r = t.mul(x[i][j], t.inv(y[i][j]));
      if (!have) {
        c = r;
        have = true;
      } else if (r != c) {
        return false;
      }
    }
  }
  return have;
}

Point4 act(const Tower& t, const Mat4& m, const Point4& x) {
  Point4 y{};
  for (int i = 0; i < 4; ++i) {
    Fq2 acc{};
    for (int j = 0; j < 4; ++j) {
      if (!t.is_zero(m[i][j]) && !t.is_zero(x[j])) acc = t.add(acc, t.mul(m[i][j], x[j]));
    }
    y[i] = acc;
  }
  return geom::normalized(t, y);
}

Line act(const Tower& t, const Mat4& m, const Line& l) {
  return geom::canonical_line(t, act(t, m, l.first), act(t, m, l.second));
}

LineId act(const Surface& s, const Mat4& m, LineId l) {
  const auto img = s.find_generator(act(s.tower(), m, s.generator(l)));
  if (!img) throw ConstructionError("collineation maps generator " + std::to_string(l) + " off the surface");
  return *img;
}

PointId act_point(const Surface& s, const Mat4& m, PointId p) {
  const auto img = s.find_point(act(s.tower(), m, s.point(p)));
  if (!img) throw ConstructionError("collineation maps a surface point off the surface");
  return *img;
}

bool preserves_form(const Tower& t, const GroupElement& g) {
  Mat4 gram{};
  gram[0][3] = t.q2(-1);
  gram[3][0] = t.q2(-1);
  gram[1][1] = t.q2(1);
  gram[2][2] = t.q2(2);
  Mat4 mt{}, mq{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      mt[i][j] = g.m[j][i];
      mq[i][j] = t.frob(g.m[i][j]);
    }
  }
  const Mat4 lhs = multiply(t, multiply(t, mt, gram), mq);
  const Fp d = det(t, g.A);
  const Fq2 d2 = t.q2(t.mul(d, d));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (lhs[i][j] != t.mul(d2, gram[i][j])) return false;
    }
  }
  return true;
}

std::vector<Mat4> GroupTable::h_matrices() const {
  std::vector<Mat4> out;
  for (const auto& g : h_generators) out.push_back(g.m);
  return out;
}

std::vector<Mat4> GroupTable::full_matrices() const {
  auto out = h_matrices();
  out.push_back(outer.m);
  return out;
}

namespace {

Fq2 primitive_center_root(const Tower& t) {
  const std::uint32_t half = (t.p() + 1) / 2;
  for (std::uint32_t c = 1; c < t.q2_size(); ++c) {
    const Fq2 z = t.from_code(c);
    if (!t.is_one(t.pow(z, half))) continue;
    bool primitive = true;
    for (std::uint32_t k = 1; k < half && primitive; ++k) {
      if (half % k == 0 && t.is_one(t.pow(z, k))) primitive = false;
    }
    if (primitive) return z;
  }
  throw InternalConsistencyError("no primitive root of unity of order (q+1)/2");
}

Fq2 some_mu(const Tower& t, Fp d) {
  const std::uint32_t half = (t.p() + 1) / 2;
  for (std::uint32_t c = 1; c < t.q2_size(); ++c) {
    const Fq2 mu = t.from_code(c);
    if (t.pow(mu, half) == t.q2(d)) return mu;
  }
  throw InternalConsistencyError("det has no (q+1)/2-th root");
}

void check_preserves(const Surface& s, const Mat4& m, const std::vector<PointId>& pts, const std::vector<bool>& in_set,
                     const char* what) {
  for (auto p : pts) {
    if (!in_set[act_point(s, m, p)]) throw ConstructionError(std::string("group element does not preserve ") + what);
  }
}

}  // namespace

GroupTable build_group(const Surface& s, const curve::CurveTables& ct, const curve::Classification& cls,
                       BuildOptions opt) {
  const Tower& t = s.tower();
  const std::uint64_t q = t.p();
  GroupTable g;
  g.order = (q * q * q - q) * (q + 1) / 2;
  g.h_order = g.order / 2;
  g.w = swap_matrix(t);
  g.h_generators = {make_element(t, {Fp{1}, Fp{1}, Fp{0}, Fp{1}}, t.q2(1)),
                    make_element(t, {Fp{1}, Fp{0}, Fp{1}, Fp{1}}, t.q2(1)),
                    make_element(t, {Fp{1}, Fp{0}, Fp{0}, Fp{1}}, primitive_center_root(t))};
  const Mat2 outer_a{Fp{1}, Fp{0}, Fp{0}, t.nonresidue()};
  g.outer = make_element(t, outer_a, some_mu(t, t.nonresidue()));

  if (q <= opt.materialize_up_to) {
    g.materialized = true;
    const std::uint32_t half = static_cast<std::uint32_t>((q + 1) / 2);
    // Roots of μ^half = d for each d ∈ GF(q)*.
    std::vector<std::vector<Fq2>> roots(q);
    for (std::uint32_t c = 1; c < t.q2_size(); ++c) {
      const Fq2 mu = t.from_code(c);
      const Fq2 r = t.pow(mu, half);
      if (t.in_base(r)) roots[r.a0.v].push_back(mu);
    }
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t c = 0; c < q; ++c)
          for (std::uint32_t d = 0; d < q; ++d) {
            const Mat2 m{Fp{a}, Fp{b}, Fp{c}, Fp{d}};
            const std::uint32_t lead = a ? a : (b ? b : c);
            if (lead != 1) continue;
            const Fp dt = det(t, m);
            if (dt.v == 0) continue;
            std::vector<Fq2> mus = roots[dt.v];
            std::sort(mus.begin(), mus.end());
            for (const auto& mu : mus) g.elements.push_back(make_element(t, m, mu));
          }
    if (g.elements.size() != g.order) throw ConstructionError("enumerated group has the wrong order");
  }

  std::vector<bool> in_dp(s.num_points(), false), in_dm(s.num_points(), false), in_om(s.num_points(), false);
  for (auto p : ct.delta_plus) in_dp[p] = true;
  for (auto p : ct.delta_minus) in_dm[p] = true;
  for (auto p : ct.omega) in_om[p] = true;
  const auto g1 = cls.of(curve::GenClass::g1);
  auto check = [&](const GroupElement& e) {
    if (!preserves_form(t, e)) throw ConstructionError("group element does not preserve the Hermitian form");
    check_preserves(s, e.m, ct.delta_plus, in_dp, "Delta+");
    check_preserves(s, e.m, ct.delta_minus, in_dm, "Delta-");
    check_preserves(s, e.m, ct.omega, in_om, "Omega");
    for (auto l : g1) {
      if (cls.cls[act(s, e.m, l)] != curve::GenClass::g1) throw ConstructionError("group element does not preserve G1");
    }
  };
  if (g.materialized) {
    for (const auto& e : g.elements) check(e);
  } else {
    for (const auto& e : g.h_generators) check(e);
    check(g.outer);
  }
  return g;
}

std::vector<std::size_t> Orbits::sizes() const {
  std::vector<std::size_t> out;
  for (const auto& o : orbits) out.push_back(o.size());
  return out;
}

std::size_t Orbits::index_of(LineId l) const {
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    if (std::binary_search(orbits[i].begin(), orbits[i].end(), l)) return i;
  }
  throw DomainError("line " + std::to_string(l) + " is in no orbit");
}

Orbits orbits(const Surface& s, const std::vector<Mat4>& gens, const std::vector<LineId>& lines) {
  constexpr std::int32_t kOutside = -2;
  constexpr std::int32_t kUnseen = -1;
  std::vector<std::int32_t> label(s.num_generators(), kOutside);
  for (auto l : lines) label[l] = kUnseen;
  std::vector<LineId> sorted = lines;
  std::sort(sorted.begin(), sorted.end());
  Orbits out;
  std::vector<LineId> frontier;
  for (auto start : sorted) {
    if (label[start] != kUnseen) continue;
    const auto id = static_cast<std::int32_t>(out.orbits.size());
    std::vector<LineId> orb{start};
    label[start] = id;
    frontier.assign(1, start);
    while (!frontier.empty()) {
      const LineId l = frontier.back();
      frontier.pop_back();
      for (const auto& m : gens) {
        const LineId img = act(s, m, l);
        if (label[img] == kOutside) throw TheoremViolation("line set is not invariant under the group");
        if (label[img] == kUnseen) {
          label[img] = id;
          orb.push_back(img);
          frontier.push_back(img);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
    out.orbits.push_back(std::move(orb));
  }
  return out;
}

void require_two_orbits(const Orbits& o, const char* what) {
  if (o.orbits.size() != 2 || o.orbits[0].size() != o.orbits[1].size()) {
    std::string sz;
    for (auto n : o.sizes()) sz += std::to_string(n) + " ";
    throw TheoremViolation(std::string("expected two equal orbits on ") + what + ", got sizes " + sz);
  }
}

bool sharply_transitive(const Surface& s, const std::vector<GroupElement>& elements, const std::vector<LineId>& lines) {
  if (lines.empty() || elements.size() != lines.size()) return false;
  std::vector<LineId> images;
  for (const auto& e : elements) images.push_back(act(s, e.m, lines.front()));
  std::sort(images.begin(), images.end());
  std::vector<LineId> sorted = lines;
  std::sort(sorted.begin(), sorted.end());
  return images == sorted;
}

InvolutionType involution_type(const Tower& t, const Mat4& m) {
  const Mat4 sq = multiply(t, m, m);
  Fq2 s{};
  for (int i = 0; i < 4 && t.is_zero(s); ++i) s = sq[i][i];
  const auto k = t.sqrt(s);
  if (!k) return InvolutionType::other;
  auto eigen_dim = [&](const Fq2& kappa) {
    auto a = linalg::zeros<Fq2>(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) a[i][j] = m[i][j];
      a[i][i] = t.sub(a[i][i], kappa);
    }
    return 4 - linalg::rank(t, a);
  };
  const std::size_t d1 = eigen_dim(*k);
  const std::size_t d2 = eigen_dim(t.neg(*k));
  if (d1 + d2 != 4) return InvolutionType::other;
  if (d1 == 2 && d2 == 2) return InvolutionType::skew;
  if ((d1 == 3 && d2 == 1) || (d1 == 1 && d2 == 3)) return InvolutionType::homology;
  return InvolutionType::other;
}

InvolutionReport order2_classification(const Tower& t, const std::vector<GroupElement>& elements) {
  InvolutionReport r;
  const GroupElement id = identity(t);
  for (const auto& g : elements) {
    if (g == id || !(compose(t, g, g) == id)) continue;
    const auto type = involution_type(t, g.m);
    if (type == InvolutionType::other) {
      ++r.other;
    } else if (g.in_h) {
      ++(type == InvolutionType::skew ? r.skew_in_h : r.homology_in_h);
    } else {
      ++(type == InvolutionType::skew ? r.skew_outside : r.homology_outside);
    }
  }
  if (r.homology_in_h || r.skew_outside || r.other) {
    throw TheoremViolation("involution types do not match h-membership: " + std::to_string(r.homology_in_h) +
                           " homologies in h, " + std::to_string(r.skew_outside) + " skew outside h");
  }
  return r;
}

HStructure h_structure(const Tower& t, const std::vector<GroupElement>& elements) {
  HStructure hs;
  std::vector<GroupElement> psl, center, h;
  const GroupElement id = identity(t);
  for (const auto& g : elements) {
    if (!g.in_h) continue;
    h.push_back(g);
    if (g.mu == t.q2(det(t, g.A))) psl.push_back(g);
    if (g.A == id.A) center.push_back(g);
  }
  hs.psl = psl.size();
  hs.center = center.size();
  hs.h = h.size();
  auto key = [](const GroupElement& g) { return std::make_pair(g.A, g.mu); };
  std::set<std::pair<Mat2, Fq2>> psl_set, h_set;
  for (const auto& g : psl) psl_set.insert(key(g));
  for (const auto& g : h) h_set.insert(key(g));
  hs.psl_closed = true;
  for (const auto& x : psl) {
    for (const auto& y : psl) {
      if (!psl_set.count(key(compose(t, x, y)))) hs.psl_closed = false;
    }
  }
  hs.commute = true;
  for (const auto& x : h) {
    for (const auto& z : center) {
      if (!(compose(t, x, z) == compose(t, z, x))) hs.commute = false;
    }
  }
  hs.trivial_meet = true;
  for (const auto& z : center) {
    if (psl_set.count(key(z)) && !(z == id)) hs.trivial_meet = false;
  }
  std::set<std::pair<Mat2, Fq2>> products;
  for (const auto& x : psl) {
    for (const auto& z : center) products.insert(key(compose(t, x, z)));
  }
  hs.generate = products == h_set;
  return hs;
}

}  // namespace hemi::group
