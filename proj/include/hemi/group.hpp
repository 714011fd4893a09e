// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hemi/curve.hpp"
#include "hemi/surface.hpp"

/// The group 𝔊 of pairs (A, μ), A ∈ PGL(2,q), μ^((q+1)/2) = det A, acting on
/// PG(3,q²) by X1 ↦ μX1 and the symmetric square of A on (X0, X2, X3).
namespace hemi::group {

using ff::Fp;
using ff::Fq2;
using ff::Tower;
using geom::Line;
using geom::LineId;
using geom::Point4;
using geom::PointId;
using geom::Surface;

struct Mat2 {
  Fp a, b, c, d;
  friend bool operator==(const Mat2&, const Mat2&) = default;
  friend auto operator<=>(const Mat2&, const Mat2&) = default;
};

using Mat4 = std::array<std::array<Fq2, 4>, 4>;

struct GroupElement {
  Mat2 A;
  Fq2 mu;
  Mat4 m;
  bool in_h = false;
  friend bool operator==(const GroupElement& x, const GroupElement& y) { return x.A == y.A && x.mu == y.mu; }
};

Fp det(const Tower& t, const Mat2& a);
Mat4 lift_matrix(const Tower& t, const Mat2& a, const Fq2& mu);

/// Normalizes A (first nonzero entry 1) with the matching μ.
/// Throws DomainError if A is singular or μ^((q+1)/2) ≠ det A.
GroupElement make_element(const Tower& t, const Mat2& a, const Fq2& mu);
GroupElement identity(const Tower& t);
/// x·y acts as y first, then x.
GroupElement compose(const Tower& t, const GroupElement& x, const GroupElement& y);
GroupElement inverse(const Tower& t, const GroupElement& x);

/// diag(1, −1, 1, 1).
Mat4 swap_matrix(const Tower& t);
Mat4 multiply(const Tower& t, const Mat4& x, const Mat4& y);
bool proportional(const Tower& t, const Mat4& x, const Mat4& y);

Point4 act(const Tower& t, const Mat4& m, const Point4& x);
Line act(const Tower& t, const Mat4& m, const Line& l);
/// Throws ConstructionError if the image is not a generator.
LineId act(const Surface& s, const Mat4& m, LineId l);
PointId act_point(const Surface& s, const Mat4& m, PointId p);

/// M^T G M^(q) = det(A)² G for the Gram matrix G of the Hermitian form.
bool preserves_form(const Tower& t, const GroupElement& g);

struct GroupTable {
  std::uint64_t order = 0;
  std::uint64_t h_order = 0;
  bool materialized = false;
  std::vector<GroupElement> elements;      // all of 𝔊 when materialized
  std::vector<GroupElement> h_generators;  // U, L, Z
  GroupElement outer;                      // det A a non-square
  Mat4 w{};

  std::vector<Mat4> h_matrices() const;
  std::vector<Mat4> full_matrices() const;  // generators of 𝔊
};

struct BuildOptions {
  std::uint32_t materialize_up_to = 5;
};

/// Builds 𝔊 and verifies that it preserves Δ⁺, Δ⁻, Ω and G1 (elementwise when
/// materialized, on generators otherwise). Throws ConstructionError on failure.
GroupTable build_group(const Surface& s, const curve::CurveTables& ct, const curve::Classification& cls,
                       BuildOptions opt = {});

struct Orbits {
  std::vector<std::vector<LineId>> orbits;  // each sorted; ordered by least element
  std::vector<std::size_t> sizes() const;
  /// Index of the orbit containing l; throws DomainError if absent.
  std::size_t index_of(LineId l) const;
};

/// Orbits of the group generated by gens on a set of generator ids.
Orbits orbits(const Surface& s, const std::vector<Mat4>& gens, const std::vector<LineId>& lines);
/// Throws TheoremViolation unless there are two orbits of equal size.
void require_two_orbits(const Orbits& o, const char* what);

/// True when the images of one line under all elements are distinct and cover lines.
bool sharply_transitive(const Surface& s, const std::vector<GroupElement>& elements, const std::vector<LineId>& lines);

enum class InvolutionType { skew, homology, other };

struct InvolutionReport {
  std::uint32_t skew_in_h = 0, homology_in_h = 0, skew_outside = 0, homology_outside = 0, other = 0;
};

InvolutionType involution_type(const Tower& t, const Mat4& m);
/// Throws TheoremViolation unless every involution of 𝔥 is a skew perspectivity
/// and every involution outside 𝔥 is a homology.
InvolutionReport order2_classification(const Tower& t, const std::vector<GroupElement>& elements);

struct HStructure {
  std::uint64_t psl = 0, center = 0, h = 0;
  bool psl_closed = false, commute = false, trivial_meet = false, generate = false;
  bool ok() const { return psl_closed && commute && trivial_meet && generate; }
};

/// 𝔥 = PSL(2,q) × C_((q+1)/2) with PSL = {μ = det A} and center {(I, ζ)}.
HStructure h_structure(const Tower& t, const std::vector<GroupElement>& elements);

}  // namespace hemi::group
