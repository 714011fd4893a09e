// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hemi/geom.hpp"
#include "hemi/hemisystem.hpp"

/// Strongly regular graphs from a hemisystem: the graph on the generators off
/// the hemisystem, and the Cayley graph of a two-intersection set.
namespace hemi::graphs {

using ff::Fp;
using geom::Point6;

struct SrgParams {
  std::int64_t v = 0, k = 0, lambda = 0, mu = 0;
  friend bool operator==(const SrgParams&, const SrgParams&) = default;
};

struct Spectrum {
  std::int64_t theta1 = 0, theta2 = 0, m1 = 0, m2 = 0;
  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

/// Eigenvalues and multiplicities from (v,k,λ,μ) in exact integer arithmetic;
/// none if the discriminant is not a perfect square or a multiplicity is not integral.
std::optional<Spectrum> spectrum(const SrgParams& p);
/// k(k − λ − 1) = μ(v − k − 1).
bool feasible(const SrgParams& p);
/// k + m1θ1 + m2θ2 = 0 and k² + m1θ1² + m2θ2² = vk, with 1 + m1 + m2 = v.
bool trace_identities(const SrgParams& p, const Spectrum& s);

/// Parameters of the graph from an m-regular system of H(3,q²).
SrgParams thas_params(std::int64_t q, std::int64_t m);
/// θ1 = q−1, θ2 = (−q²+q−2)/2, m1 = (q⁴−q³+2q²−q+1)/2, m2 = (q²+1)(q−1).
Spectrum thas_spectrum_closed_form(std::int64_t q);
/// (q⁶, m(q−1)(q³+1), m(q−1)(3+m(q−1))−q², m(q−1)(m(q−1)+1)).
SrgParams cayley_params(std::int64_t q, std::int64_t m);

/// Right-hand side of the hyperplane count m(q³+1) = (q+1)(m(q²+1) − (q²+1−μ)) ± (q²+1−μ).
/// The printed variant ends in −q²+1−μ.
std::int64_t counting_rhs(std::int64_t q, std::int64_t m, std::int64_t mu, bool printed);
/// m ∈ {1..q} for which the counting identity (μ = q²+1−m(q+1)) and the
/// feasibility condition on thas_params(q, m) both hold.
std::vector<std::int64_t> regular_system_candidates(std::int64_t q);

class BitGraph {
 public:
  explicit BitGraph(std::uint32_t n);
  std::uint32_t size() const noexcept { return n_; }
  void add_edge(std::uint32_t u, std::uint32_t v);
  bool adjacent(std::uint32_t u, std::uint32_t v) const noexcept {
    return (bits_[static_cast<std::size_t>(u) * words_ + v / 64] >> (v % 64)) & 1u;
  }
  const std::uint64_t* row(std::uint32_t u) const noexcept { return bits_.data() + static_cast<std::size_t>(u) * words_; }
  std::uint32_t words() const noexcept { return words_; }
  std::uint32_t degree(std::uint32_t u) const noexcept;
  std::uint32_t common(std::uint32_t u, std::uint32_t v) const noexcept;

 private:
  std::uint32_t n_, words_;
  std::vector<std::uint64_t> bits_;
};

struct ThasGraph {
  std::vector<geom::LineId> vertices;  // generator ids, ascending
  BitGraph graph{0};
};

/// Vertices are the generators outside S, adjacent when they share a point.
/// Throws PreconditionError for an unverified certificate and ResourceLimitError
/// above max_vertices.
ThasGraph build_thas_graph(const hs::Certificate& c, const geom::Surface& s, std::uint32_t max_vertices = 20000);

struct SrgReport {
  bool regular = false;
  bool strongly_regular = false;
  bool degenerate = false;  // no non-adjacent pairs, μ undefined
  SrgParams params;
  std::optional<Spectrum> spec;
  bool feasible = false;
  bool traces = false;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;
  bool ok() const { return regular && strongly_regular && !degenerate && feasible && spec && traces; }
};

/// Full A² = kI + λA + μ(J−I−A) check by row intersections.
SrgReport verify_srg(const BitGraph& g, unsigned workers = 1);

class CayleyGraph {
 public:
  /// Throws DomainError if 0 ∈ Ω or Ω ≠ −Ω.
  CayleyGraph(std::uint32_t q, const std::vector<Point6>& omega);
  std::uint32_t q() const noexcept { return q_; }
  std::uint64_t size() const noexcept { return in_omega_.size(); }
  std::size_t degree() const noexcept { return omega_.size(); }
  std::uint64_t encode(const Point6& x) const;
  Point6 decode(std::uint64_t code) const;
  bool adjacent(std::uint64_t u, std::uint64_t v) const;
  /// |Ω ∩ (x + Ω)|: common neighbours of 0 and x.
  std::uint64_t common_with_zero(std::uint64_t x) const;

 private:
  std::uint32_t q_;
  std::vector<std::uint8_t> in_omega_;
  std::vector<std::uint64_t> omega_;
};

/// λ and μ from translates of Ω by every nonzero vector.
SrgReport verify_cayley(const CayleyGraph& g, unsigned workers = 1);
/// Common neighbours of random vertex pairs by direct scan, compared with
/// the translation counts. Returns the number of disagreements.
std::uint32_t cayley_pair_oracle(const CayleyGraph& g, const SrgParams& params, std::mt19937_64& rng,
                                 std::uint32_t pairs);

std::string edges_csv(const ThasGraph& g);
std::string params_json(const SrgReport& r);

}  // namespace hemi::graphs
