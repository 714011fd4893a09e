// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hemi/surface.hpp"

/// The curves X± : v^q − v = ±u^((q+1)/2) embedded in U₃ by (u, v) ↦ (1, u, v, v²),
/// closed by V = (0,0,0,1).
namespace hemi::curve {

using ff::Fq2;
using ff::Fq4;
using geom::LineId;
using geom::PointId;
using geom::Surface;

/// Affine points (x, y) of the plane model over GF(q²).
struct AffinePoint {
  Fq2 x, y;
};

/// Affine points over GF(q⁴).
struct QuarticPoint {
  Fq4 x, y;
};

/// All affine GF(q²)-points of y^q − y = sign · x^((q+1)/2).
std::vector<AffinePoint> affine_points(const ff::Tower& t, int sign);
/// Ids of the images of the GF(q²)-points, V included; sorted.
std::vector<PointId> rational_images(const Surface& s, int sign);

/// Affine GF(q⁴)-points of the same curve that are not GF(q²)-rational.
std::vector<QuarticPoint> quartic_points(const ff::Tower& t, int sign);
/// Projective GF(q⁴)-point count (one point at infinity).
std::uint64_t quartic_projective_count(const ff::Tower& t, int sign);

struct ChordSet {
  std::vector<LineId> lines;  // sorted
  std::uint64_t quartic_points = 0;
};

/// Lines joining each quartic point to its GF(q²)-conjugate.
/// Throws InternalConsistencyError when a chord is not a generator or the
/// points do not pair up two per chord.
ChordSet imaginary_chords(const Surface& s, int sign);

struct CurveTables {
  std::vector<PointId> x_plus, x_minus;  // rational images, sorted
  std::vector<PointId> omega, delta_plus, delta_minus;
  std::uint64_t q4_count_plus = 0;
  std::uint64_t quartic_plus = 0;
  std::vector<LineId> chords;
};

/// Builds both curves, the Ω/Δ± split and ℋ; all count identities are asserted
/// (InternalConsistencyError on mismatch).
CurveTables build_tables(const Surface& s);

/// Checks Ω against the plane section X1 = 0: the conic X0X3 = X2² and the
/// Hermitian curve X0^qX3 + X0X3^q = 2X2^(q+1). Throws InternalConsistencyError.
void classify_omega(const Surface& s, const CurveTables& tables);

enum class GenClass : std::uint8_t { outside = 0, g1 = 1, g2 = 2, chord = 3 };

struct Classification {
  std::vector<GenClass> cls;  // per generator id
  std::uint32_t g1 = 0, g2 = 0, chord = 0, outside = 0;
  std::vector<LineId> of(GenClass c) const;
};

/// G1 meets Δ⁺ and Δ⁻, G2 meets Ω, CHORD is ℋ. Throws InternalConsistencyError
/// on any count or disjointness failure.
Classification classify_generators(const Surface& s, const CurveTables& tables);

/// The generator P_{u,v} Q_{s,t} when F(v,t) = 0, u^((q+1)/2) = v^q − v,
/// −s^((q+1)/2) = t^q − t and u^q s = (t − v^q)²; nullopt otherwise.
std::optional<LineId> g1_witness(const Surface& s, const Fq2& v, const Fq2& t, const Fq2& u, const Fq2& sv);

}  // namespace hemi::curve
