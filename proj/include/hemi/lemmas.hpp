// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hemi/curve.hpp"
#include "hemi/surface.hpp"

/// Computational checks for the point P = (1, 2ε, h, 0) with p ≡ 5 (mod 8),
/// and the point counts that decide whether a prime qualifies.
namespace hemi::lemmas {

using ff::Fp;
using ff::Fq2;
using ff::Tower;
using geom::LineId;
using geom::Point4;
using geom::PointId;
using geom::Surface;

/// Throws PreconditionError unless p ≡ 5 (mod 8).
void require_case_iii(std::uint32_t p);

struct NamedCheck {
  std::string name;
  bool ok = false;
};

struct CaseIIIContext {
  int epsilon = 1;
  Fq2 h, alpha;
  int chi = 0;
  int chi_tilde = 0;
  Point4 P;
  PointId p_id = 0;
  Fq2 v0, u0, t0, s0;
  LineId g0 = 0;
  LineId ell = 0;
  std::vector<NamedCheck> identities;  // relations the fixture relies on
  std::vector<NamedCheck> printed;     // the same relations in their printed form
  bool all_identities() const;
};

/// Builds the fixture for one ε and evaluates its defining identities.
/// Throws TheoremViolation if (2+h)^((q+1)/2) is not ±h or if g0 is not a
/// generator through P.
CaseIIIContext make_context(const Surface& s, int epsilon);

/// v ∉ GF(q) with (v² + 2hv)^((q+1)/2) = 2ε(v^q − v), as printed.
/// Throws TheoremViolation unless there are (q+1)/2 solutions.
std::vector<Fq2> solve_eq_v(const Tower& t, int epsilon);
/// v ∉ GF(q) such that P_{u,v} with u = (v² + 2hv)/(2ε) lies on X⁺; these are
/// the solutions of the same equation with −2ε on the right.
std::vector<Fq2> tangent_solutions(const Tower& t, int epsilon);

struct ConicCount {
  std::uint64_t affine = 0;
  std::uint64_t at_infinity = 0;
  std::uint64_t projective() const { return affine + at_infinity; }
  Fp det;  // determinant of the 3×3 matrix of the homogenized form
};

/// Points of αλ1² − 2αλ2² − 4ελ1λ2 + c = 0 over GF(q); c = 4ε is the printed form.
ConicCount conic_count(const Tower& t, int epsilon, Fp constant);
/// The v = h·2/(hλ² − 1) images of λ = λ1 + hλ2 over the affine conic points.
std::vector<Fq2> conic_chain(const Tower& t, int epsilon, Fp constant);

/// Legendre symbol of ε v2 + (α/2)(v1 v2 + v1) for v = v1 + h v2.
/// Throws DomainError if v does not solve the printed equation.
int nonsquare_symbol(const Tower& t, const Fq2& v, int epsilon);
/// The expression is not a nonzero square.
bool nonsquare_condition(const Tower& t, const Fq2& v, int epsilon);

/// ξ ∈ GF(q), nullopt for ∞.
using Xi = std::optional<Fp>;

/// The fractional-linear map ξ ↦ v_ξ applied to base (v0 or t0).
/// Throws DomainError where the map degenerates.
Fq2 xi_map(const Tower& t, const Xi& xi, const Fq2& base);
/// Determinant of the coefficient matrix, computed from its entries.
Fp xi_det(const Tower& t, const Xi& xi);
/// (ξ²+8)(ξ⁴−48ξ²+64)/8, or 1/8 at ∞.
Fp xi_det_formula(const Tower& t, const Xi& xi);

struct SigmaPartition {
  std::vector<Fp> sigma1;  // ξ² + 8 a nonzero square; ∞ belongs here too
  std::vector<Fp> sigma2;
};
SigmaPartition sigma_partition(const Tower& t);

struct GeneratorsThroughP {
  std::vector<LineId> g1_meeting_curve;  // G1 lines through P meeting X⁺
  std::vector<LineId> g2_meeting_curve;
  std::vector<Xi> realized_xi;           // ξ with v_ξ a tangent solution
  int side = 0;                          // +1 all in Σ1 ∪ {∞}, −1 all in Σ2, 0 mixed
  bool matches_chi_tilde = false;        // side == χ̃
  bool same_generators = false;          // {g_ξ} equals g1_meeting_curve
  bool t_map_consistent = false;         // t_ξ is the Δ⁻ point of g_ξ
  bool collinearity = false;             // vt − h(v+t) = 0 on every such line
};

GeneratorsThroughP generators_through_p(const Surface& s, const curve::CurveTables& ct,
                                        const curve::Classification& cls, const CaseIIIContext& ctx);

struct RCounts {
  std::uint32_t r = 0;
  std::uint32_t rprime = 0;
};

/// r (resp. r′): generators of M1 (resp. M1′) through P⁺ meeting Δ⁺.
RCounts count_r_rprime(const Surface& s, const curve::CurveTables& ct, const CaseIIIContext& plus,
                       const std::vector<LineId>& m1, const std::vector<LineId>& m1_prime);

std::uint64_t elliptic_count(std::uint32_t p);
std::uint64_t quartic_square_count(std::uint32_t p);
std::uint64_t quartic_curve_count(std::uint32_t p);

/// a with p = 1 + 4a², if any.
std::optional<std::uint64_t> landau_a(std::uint64_t p);

struct LandauRecord {
  std::uint32_t p = 0;
  std::optional<std::uint64_t> a;
  std::uint32_t p_mod_8 = 0;
  std::uint64_t n_p = 0;
  std::uint64_t n_q = 0;
  std::uint64_t quartic_curve = 0;
  bool condition_b = false;
  bool chain_consistent = false;  // N_p and n_q tests agree
};

LandauRecord landau_record(std::uint32_t p);
/// Records for every prime p ≤ bound with p ≡ 5 (mod 8).
std::vector<LandauRecord> landau_scan(std::uint32_t bound, unsigned workers = 1);
std::string landau_csv(const std::vector<LandauRecord>& records);

}  // namespace hemi::lemmas
