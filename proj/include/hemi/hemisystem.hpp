// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hemi/curve.hpp"
#include "hemi/group.hpp"
#include "hemi/lemmas.hpp"
#include "hemi/surface.hpp"

/// Assembly and certification of the hemisystem M1 ∪ M2 ∪ ℋ.
namespace hemi::hs {

using geom::LineId;
using geom::PointId;
using geom::Surface;

inline constexpr int kFormatVersion = 1;

/// Raised by the Landau gate; carries the record that explains the rejection.
class LandauGateError : public PreconditionError {
 public:
  LandauGateError(const std::string& what, lemmas::LandauRecord record)
      : PreconditionError(what), record_(std::move(record)) {}
  const lemmas::LandauRecord& record() const noexcept { return record_; }

 private:
  lemmas::LandauRecord record_;
};

/// Accepts p prime with p = 1 + 4a² and p ≡ 5 (mod 8). With `experimental`,
/// any odd prime p ≥ 5 within the surface limits passes.
void require_landau(std::uint32_t p, bool experimental = false);

struct ModelOptions {
  unsigned workers = 1;
  std::optional<std::filesystem::path> cache_dir;
  geom::Limits limits{};
};

/// Surface, curves, generator classes, group and the 𝔥-orbits on G1 and G2.
/// Not movable: the surface refers to the tower.
class Model {
 public:
  Model(std::uint32_t p, const ModelOptions& opt);
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  ff::Tower tower;
  Surface surface;
  curve::CurveTables tables;
  curve::Classification cls;
  group::GroupTable group;
  group::Orbits g1_orbits;
  group::Orbits g2_orbits;
  bool from_cache = false;
  unsigned workers = 1;
};

struct Histogram {
  std::vector<std::uint64_t> counts;  // counts[k] = points on exactly k lines
  std::uint32_t min = 0, max = 0, mode = 0;
  std::uint64_t incidences = 0;
  bool constant(std::uint32_t m) const { return min == m && max == m; }
};

/// Incidence histogram of a line set over all surface points.
Histogram incidence_histogram(const Surface& s, const std::vector<LineId>& lines, unsigned workers = 1);
/// Constant (q+1)/2 histogram.
bool is_hemisystem(const Surface& s, const Histogram& h);

std::vector<LineId> complement(const Surface& s, const std::vector<LineId>& lines);

struct Pairing {
  std::size_t m1_orbit = 0;  // index into g1_orbits
  std::size_t m2_orbit = 0;  // index into g2_orbits
  std::string label;
  bool hemisystem = false;
  Histogram histogram;
};

struct HalfConditions {
  std::uint64_t a_points = 0, a_failures = 0;
  std::uint64_t b_points = 0, b_failures = 0;
  std::optional<PointId> witness;
  std::optional<std::uint32_t> p_plus_np, p_plus_m;
  bool ok() const { return a_failures == 0 && b_failures == 0; }
};

/// (A) on the points of X⁺ and (B) on every other surface point, for M = M1 ∪ M2.
HalfConditions verify_half_conditions(const Model& m, const std::vector<LineId>& m_lines,
                                      std::optional<PointId> p_plus = std::nullopt);

struct Invariance {
  std::uint64_t elements_checked = 0;
  bool exhaustive = false;        // every element of 𝔥, not only generators
  bool fixed = false;
  bool w_m1_to_m1prime = false;
  bool w_to_complement = false;
  bool w_fixes = false;
};

/// Throws TheoremViolation if an element of 𝔥 moves S.
Invariance verify_invariance(const Model& m, const std::vector<LineId>& lines, std::size_t m1_orbit);

struct Certificate {
  std::uint32_t p = 0;
  int format_version = kFormatVersion;
  std::vector<LineId> lines;
  std::size_t m1_orbit = 0, m2_orbit = 0;
  std::size_t m1_size = 0, m2_size = 0, chord_size = 0;
  std::optional<std::uint32_t> r, rprime;
  std::string ell_choice;  // "plus", "minus" or "search"
  bool rule_hemisystem = false;
  std::vector<Pairing> pairings;
  Histogram histogram;
  std::uint64_t group_order = 0;
  HalfConditions half;
  Invariance invariance;
  bool complement_hemisystem = false;
  bool verified = false;
  std::string digest;
  std::string failure;
};

struct AssembleOptions {
  bool all_pairings = true;
};

/// Applies the choice rule, verifies the result, and records the other pairings.
/// For p ≢ 5 (mod 8) the first passing pairing is taken.
Certificate assemble(const Model& m, AssembleOptions opt = {});

/// Hex FNV-1a over the sorted line ids.
std::string digest(const std::vector<LineId>& lines);

std::string to_json(const Certificate& c);
/// Throws ConfigError on a malformed document or another format_version.
Certificate from_json(const std::string& text);

struct FileCheck {
  bool size_ok = false, digest_ok = false, hemisystem = false;
  Histogram histogram;
  bool ok() const { return size_ok && digest_ok && hemisystem; }
};

/// Re-verifies a certificate's line set against a freshly built surface.
FileCheck recheck(const Certificate& c, unsigned workers = 1);

struct SuiteCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// Computational checks at P = (1, 2ε, h, 0) together with r, r′ and n_q.
struct LemmaSuite {
  std::uint32_t p = 0;
  std::vector<SuiteCheck> checks;
  std::uint32_t r = 0, rprime = 0;
  std::uint64_t n_q = 0;
  lemmas::LandauRecord landau;
  bool all_ok() const;
  const SuiteCheck& check(const std::string& name) const;
};

/// Throws PreconditionError unless p ≡ 5 (mod 8).
LemmaSuite lemma_suite(const Model& m);
std::string to_json(const LemmaSuite& s);

/// One row per line: id and the two spanning points as Fq2 codes.
std::string lines_csv(const Surface& s, const std::vector<LineId>& lines);

}  // namespace hemi::hs
