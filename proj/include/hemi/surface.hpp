// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hemi/geom.hpp"

namespace hemi::geom {

using PointId = std::uint32_t;
using LineId = std::uint32_t;

struct Limits {
  std::uint32_t max_p = 41;
};

/// Implicitly indexed model of the Hermitian surface U₃ over GF(q²), q = p.
///
/// Points are ranked in three blocks: affine points (1,a,b,c) by (a, b, c.a1)
/// since c.a0 is forced, then (0,1,x2,x3) with x2 on the cone N(x2) = −1/2,
/// then V = (0,0,0,1). A generator either meets X0 = 0 in a point (0,1,x2,x3)
/// and has canonical basis (1,0,b,c), (0,1,x2,x3) with b = x3^q / (2 x2^q),
/// or it is one of the q+1 lines through V inside X0 = 0.
class Surface {
 public:
  static Surface build(const Tower& t, Limits limits = {});

  const Tower& tower() const noexcept { return *t_; }
  std::uint32_t q() const noexcept { return q_; }
  std::uint64_t num_points() const noexcept { return num_points_; }
  std::uint32_t num_generators() const noexcept { return num_generators_; }

  /// Elements x2 with N(x2) = −1/2, ascending.
  const std::vector<Fq2>& cone() const noexcept { return cone_; }

  Point4 point(PointId id) const;
  /// Normalizes; nullopt when the point is off the surface.
  std::optional<PointId> find_point(Point4 x) const;
  /// Throws DomainError when the point is off the surface.
  PointId point_id(const Point4& x) const;

  Line generator(LineId id) const;
  std::optional<LineId> find_generator(const Line& canonical) const;
  /// Throws DomainError unless a, b span a generator.
  LineId generator_id(const Point4& a, const Point4& b) const;

  std::vector<LineId> generators_through(PointId id) const;
  /// Throws DomainError when P is not on U₃.
  std::vector<Line> tangent_generators(const Point4& p) const;

  /// Calls f(PointId) for the q²+1 points of a generator.
  template <class F>
  void for_each_point(LineId id, F&& f) const;
  std::vector<PointId> points_on(LineId id) const;

  PointId vertex_id() const noexcept { return static_cast<PointId>(num_points_ - 1); }

 private:
  Surface() = default;
  std::uint32_t cone_index(const Fq2& x2) const noexcept { return cone_of_code_[t_->code(x2)]; }
  LineId type_a_id(std::uint32_t k, const Fq2& x3, Fp c1) const noexcept {
    return static_cast<LineId>((static_cast<std::uint64_t>(k) * q2_ + t_->code(x3)) * q_ + c1.v);
  }
  PointId affine_rank(const Fq2& a, const Fq2& b, Fp c1) const noexcept {
    return static_cast<PointId>((static_cast<std::uint64_t>(t_->code(a)) * q2_ + t_->code(b)) * q_ + c1.v);
  }

  const Tower* t_ = nullptr;
  std::uint32_t q_ = 0;
  std::uint32_t q2_ = 0;
  std::uint64_t num_points_ = 0;
  std::uint32_t num_generators_ = 0;
  std::uint32_t affine_points_ = 0;
  std::uint32_t type_a_lines_ = 0;
  Fp half_{};
  std::vector<Fq2> cone_;
  std::vector<Fq2> inv_two_conj_;  // 1 / (2 x2^q) per cone element
  std::vector<std::uint32_t> cone_of_code_;
};

template <class F>
void Surface::for_each_point(LineId id, F&& f) const {
  const Tower& t = *t_;
  if (id >= type_a_lines_) {
    const std::uint32_t k = id - type_a_lines_;
    const PointId base = affine_points_ + k * q2_;
    for (std::uint32_t c = 0; c < q2_; ++c) f(static_cast<PointId>(base + c));
    f(vertex_id());
    return;
  }
  const std::uint32_t c1 = id % q_;
  const std::uint32_t x3c = (id / q_) % q2_;
  const std::uint32_t k = id / (q_ * q2_);
  const Fq2 x2 = cone_[k];
  const Fq2 x3 = t.from_code(x3c);
  const Fq2 b = t.mul(t.frob(x3), inv_two_conj_[k]);
  const Fq2 c{t.norm(b), Fp{c1}};
  // Q itself.
  f(static_cast<PointId>(affine_points_ + k * q2_ + x3c));
  // R0 + λQ = (1, λ, b + λ x2, c + λ x3), λ in code order.
  const Fq2 tx2 = t.mul(t.t(), x2);
  const Fq2 tx3 = t.mul(t.t(), x3);
  Fq2 row2 = b;
  Fq2 row3 = c;
  std::uint32_t lam = 0;
  for (std::uint32_t a1 = 0; a1 < q_; ++a1) {
    Fq2 y2 = row2;
    Fq2 y3 = row3;
    for (std::uint32_t a0 = 0; a0 < q_; ++a0, ++lam) {
      f(static_cast<PointId>((static_cast<std::uint64_t>(lam) * q2_ + t.code(y2)) * q_ + y3.a1.v));
      y2 = t.add(y2, x2);
      y3 = t.add(y3, x3);
    }
    row2 = t.add(row2, tx2);
    row3 = t.add(row3, tx3);
  }
}

}  // namespace hemi::geom
