// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hemi/surface.hpp"

#include <string>

namespace hemi::geom {

namespace {
constexpr std::uint32_t kNoCone = 0xffffffffu;
}

Surface Surface::build(const Tower& t, Limits limits) {
  const std::uint32_t q = t.p();
  if (q > limits.max_p) {
    throw ResourceLimitError("surface model for p = " + std::to_string(q) + " exceeds the configured bound p <= " +
                             std::to_string(limits.max_p));
  }
  Surface s;
  s.t_ = &t;
  s.q_ = q;
  s.q2_ = q * q;
  s.half_ = t.inv(Fp{2});
  s.cone_of_code_.assign(s.q2_, kNoCone);
  const Fp target = t.neg(s.half_);
  for (std::uint32_t a0 = 0; a0 < q; ++a0) {
    for (std::uint32_t a1 = 0; a1 < q; ++a1) {
      const Fq2 x{{a0}, {a1}};
      if (t.norm(x) == target) {
        s.cone_of_code_[t.code(x)] = static_cast<std::uint32_t>(s.cone_.size());
        s.cone_.push_back(x);
        s.inv_two_conj_.push_back(t.inv(t.add(t.frob(x), t.frob(x))));
      }
    }
  }
  if (s.cone_.size() != q + 1) throw InternalConsistencyError("cone N(x) = -1/2 does not have q+1 elements");
  const std::uint64_t q64 = q;
  s.affine_points_ = static_cast<std::uint32_t>(q64 * q64 * q64 * q64 * q64);
  s.num_points_ = s.affine_points_ + (q64 + 1) * q64 * q64 + 1;
  s.type_a_lines_ = static_cast<std::uint32_t>((q64 + 1) * q64 * q64 * q64);
  s.num_generators_ = s.type_a_lines_ + q + 1;
  return s;
}

Point4 Surface::point(PointId id) const {
  const Tower& t = *t_;
  if (id >= num_points_) throw DomainError("point id out of range");
  if (id < affine_points_) {
    const Fp c1{id % q_};
    const Fq2 b = t.from_code((id / q_) % q2_);
    const Fq2 a = t.from_code(id / (q_ * q2_));
    const Fp c0 = t.mul(half_, t.add(t.norm(a), t.add(t.norm(b), t.norm(b))));
    return {t.q2(1), a, b, Fq2{c0, c1}};
  }
  if (id == vertex_id()) return {Fq2{}, Fq2{}, Fq2{}, t.q2(1)};
  const std::uint32_t r = id - affine_points_;
  return {Fq2{}, t.q2(1), cone_[r / q2_], t.from_code(r % q2_)};
}

std::optional<PointId> Surface::find_point(Point4 x) const {
  const Tower& t = *t_;
  if (!normalize(t, x) || !on_surface(t, x)) return std::nullopt;
  if (t.is_one(x[0])) return affine_rank(x[1], x[2], x[3].a1);
  if (t.is_one(x[1])) {
    const std::uint32_t k = cone_index(x[2]);
    if (k == kNoCone) throw InternalConsistencyError("surface point at X0=0 off the cone");
    return affine_points_ + k * q2_ + t.code(x[3]);
  }
  return vertex_id();
}

PointId Surface::point_id(const Point4& x) const {
  auto id = find_point(x);
  if (!id) throw DomainError("point " + to_string(x) + " is not on the Hermitian surface");
  return *id;
}

Line Surface::generator(LineId id) const {
  const Tower& t = *t_;
  if (id >= num_generators_) throw DomainError("generator id out of range");
  if (id >= type_a_lines_) {
    return {{Fq2{}, t.q2(1), cone_[id - type_a_lines_], Fq2{}}, {Fq2{}, Fq2{}, Fq2{}, t.q2(1)}};
  }
  const std::uint32_t k = id / (q_ * q2_);
  const Fq2 x3 = t.from_code((id / q_) % q2_);
  const Fq2 b = t.mul(t.frob(x3), inv_two_conj_[k]);
  return {{t.q2(1), Fq2{}, b, Fq2{t.norm(b), Fp{id % q_}}}, {Fq2{}, t.q2(1), cone_[k], x3}};
}

std::optional<LineId> Surface::find_generator(const Line& l) const {
  const Tower& t = *t_;
  const Point4& r0 = l.first;
  const Point4& r1 = l.second;
  if (t.is_one(r0[0]) && t.is_zero(r0[1]) && t.is_zero(r1[0]) && t.is_one(r1[1])) {
    const std::uint32_t k = cone_index(r1[2]);
    if (k == kNoCone) return std::nullopt;
    const Fq2 b = t.mul(t.frob(r1[3]), inv_two_conj_[k]);
    if (r0[2] != b || r0[3].a0 != t.norm(b)) return std::nullopt;
    return type_a_id(k, r1[3], r0[3].a1);
  }
  const Point4 v{Fq2{}, Fq2{}, Fq2{}, t.q2(1)};
  if (r1 == v && t.is_zero(r0[0]) && t.is_one(r0[1]) && t.is_zero(r0[3])) {
    const std::uint32_t k = cone_index(r0[2]);
    if (k == kNoCone) return std::nullopt;
    return type_a_lines_ + k;
  }
  return std::nullopt;
}

LineId Surface::generator_id(const Point4& a, const Point4& b) const {
  auto id = find_generator(canonical_line(*t_, a, b));
  if (!id) throw DomainError("line " + to_string(a) + " " + to_string(b) + " is not a generator");
  return *id;
}

std::vector<LineId> Surface::generators_through(PointId id) const {
  const Tower& t = *t_;
  std::vector<LineId> out;
  out.reserve(q_ + 1);
  if (id == vertex_id()) {
    for (std::uint32_t k = 0; k <= q_; ++k) out.push_back(type_a_lines_ + k);
    return out;
  }
  if (id >= affine_points_) {
    const std::uint32_t r = id - affine_points_;
    const std::uint32_t k = r / q2_;
    const Fq2 x3 = t.from_code(r % q2_);
    out.push_back(type_a_lines_ + k);
    for (std::uint32_t c1 = 0; c1 < q_; ++c1) out.push_back(type_a_id(k, x3, Fp{c1}));
    return out;
  }
  const Point4 p = point(id);
  const Fq2 aq = t.frob(p[1]);
  const Fq2 two_bq = t.add(t.frob(p[2]), t.frob(p[2]));
  for (std::uint32_t k = 0; k <= q_; ++k) {
    // H(P, Q) = 0 fixes x3; R0 = P − aQ.
    const Fq2 x3 = t.add(aq, t.mul(two_bq, cone_[k]));
    const Fq2 c = t.sub(p[3], t.mul(p[1], x3));
    out.push_back(type_a_id(k, x3, c.a1));
  }
  return out;
}

std::vector<Line> Surface::tangent_generators(const Point4& p) const {
  std::vector<Line> out;
  for (LineId g : generators_through(point_id(p))) out.push_back(generator(g));
  return out;
}

std::vector<PointId> Surface::points_on(LineId id) const {
  if (id >= num_generators_) throw DomainError("generator id out of range");
  std::vector<PointId> out;
  out.reserve(q2_ + 1);
  for_each_point(id, [&](PointId p) { out.push_back(p); });
  return out;
}

}  // namespace hemi::geom
