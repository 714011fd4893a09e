// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hemi/geom.hpp"
#include "hemi/linalg.hpp"
#include "hemi/surface.hpp"

/// Klein images of the generators, the elliptic quadric through them, the
/// (q+1)/2-ovoid of a hemisystem and the associated two-weight code.
namespace hemi::codes {

using ff::Fp;
using ff::Fq2;
using ff::Tower;
using geom::LineId;
using geom::Point6;
using geom::Surface;

/// Upper bound on elementary operations for the exhaustive scans.
inline constexpr std::uint64_t kDefaultWorkLimit = 4'000'000'000ull;

struct Frame {
  std::array<LineId, 7> lines{};      // six spanning images, then the unit point
  linalg::Matrix<Fq2> to_subgeometry;  // applied to Plücker vectors
};

struct KleinImages {
  std::vector<Point6> points;  // normalized, indexed by generator id
  Frame frame;
};

/// Plücker images moved by a 7-point frame so that every image has GF(q)
/// coordinates. The frame search starts at generator `start`.
/// Throws ConstructionError if no frame exists or an image does not land in GF(q).
KleinImages klein_images(const Surface& s, LineId start = 0);

struct Quadric {
  std::array<Fp, 21> coeffs{};  // x_i x_j, i ≤ j, lexicographic
  Fp eval(const Tower& t, const Point6& x) const;
  /// Q(x+y) − Q(x) − Q(y).
  Fp polar(const Tower& t, const Point6& x, const Point6& y) const;
  /// det of the Gram matrix of the polar form.
  Fp discriminant(const Tower& t) const;
};

std::uint64_t elliptic_count(std::uint64_t q);
std::uint64_t hyperbolic_count(std::uint64_t q);
/// Projective zeros in PG(5,q).
std::uint64_t zero_count(const Tower& t, const Quadric& Q);

struct QuadricFit {
  Quadric form;
  std::size_t solution_dim = 0;
  std::uint64_t zeros = 0;
};

/// Fits the quadratic forms vanishing on pts. Throws ConstructionError unless the
/// solution space is 1-dimensional, the form is non-degenerate and elliptic.
QuadricFit fit_quadric(const Tower& t, const std::vector<Point6>& pts);

/// Images of the given lines.
std::vector<Point6> select(const KleinImages& k, const std::vector<LineId>& lines);

struct IntersectionCertificate {
  std::uint64_t n = 0;
  std::uint32_t k = 6;
  std::uint64_t hyperplanes = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;  // |Σ ∩ H| → number of H
  std::optional<std::uint64_t> witness;             // hyperplane index with a third size
  bool two_valued(std::uint64_t h1, std::uint64_t h2) const;
};

/// Scans all (q⁶−1)/(q−1) hyperplanes. Throws ResourceLimitError above the work limit.
IntersectionCertificate two_intersection(const Tower& t, const std::vector<Point6>& pts, unsigned workers = 1,
                                         std::uint64_t work_limit = kDefaultWorkLimit);

struct WeightDistribution {
  std::uint64_t n = 0;
  std::uint32_t k = 6;
  std::uint32_t q = 0;
  std::map<std::uint64_t, std::uint64_t> counts;  // weight → multiplicity, zero word included
  std::optional<std::uint64_t> witness;          // message index with a third nonzero weight
  std::vector<std::uint64_t> nonzero_weights() const;
};

/// Weights of all q⁶ codewords (x·v_1, …, x·v_n). Throws ResourceLimitError above the work limit.
WeightDistribution weight_distribution(const Tower& t, const std::vector<Point6>& columns, unsigned workers = 1,
                                       std::uint64_t work_limit = kDefaultWorkLimit);

/// Σ A_w = q^k.
bool pless_moment0(const WeightDistribution& w);
/// Σ w A_w = n q^(k−1) (q−1).
bool pless_moment1(const WeightDistribution& w);
/// Σ w² A_w = q^(k−2) (q−1) n ((q−1) n + 1), valid for projective codes.
bool pless_moment2(const WeightDistribution& w);

/// All nonzero scalar multiples of the given projective points.
std::vector<Point6> omega_from_set(const Tower& t, const std::vector<Point6>& pts);

std::string points_csv(const std::vector<Point6>& pts);
/// Six rows, one column per point.
std::string generator_matrix_csv(const std::vector<Point6>& pts);
std::string weights_json(const WeightDistribution& w);

}  // namespace hemi::codes
