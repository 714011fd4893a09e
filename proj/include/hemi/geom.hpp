// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "hemi/ff.hpp"

namespace hemi::geom {

using ff::Fp;
using ff::Fq2;
using ff::Fq4;
using ff::Tower;

template <class T, std::size_t N>
using Vec = std::array<T, N>;

using Point4 = Vec<Fq2, 4>;
using Point4Q4 = Vec<Fq4, 4>;
using Pluecker = Vec<Fq2, 6>;
using Point6 = Vec<Fp, 6>;

/// Scales v so its first nonzero coordinate is 1. Returns false for the zero vector.
template <class T, std::size_t N>
bool normalize(const Tower& t, Vec<T, N>& v) {
  std::size_t lead = 0;
  while (lead < N && t.is_zero(v[lead])) ++lead;
  if (lead == N) return false;
  if (t.is_one(v[lead])) return true;
  const T inv = t.inv(v[lead]);
  v[lead] = t.mul(v[lead], inv);
  for (std::size_t i = lead + 1; i < N; ++i) v[i] = t.mul(v[i], inv);
  return true;
}

/// Throws DomainError on the zero vector.
template <class T, std::size_t N>
Vec<T, N> normalized(const Tower& t, Vec<T, N> v) {
  if (!normalize(t, v)) throw DomainError("zero vector is not a projective point");
  return v;
}

/// Affine shorthand (a, b, c) ↦ (1, a, b, c).
inline Point4 affine_lift(const Fq2& a, const Fq2& b, const Fq2& c) { return {Fq2{{1}, {}}, a, b, c}; }

/// A line of PG(3,q²) in canonical form: the reduced row echelon basis.
/// `first` carries the smaller pivot; the pair is also the lexicographically
/// least pair of normalized points on the line.
struct Line {
  Point4 first;
  Point4 second;
  friend bool operator==(const Line&, const Line&) = default;
  friend auto operator<=>(const Line&, const Line&) = default;
};

/// Throws DomainError when a and b are dependent.
Line canonical_line(const Tower& t, const Point4& a, const Point4& b);

/// The Hermitian form X1^(q+1) + 2X2^(q+1) − X3^q X0 − X3 X0^q.
Fq2 hermitian_eval(const Tower& t, const Point4& x);
/// Sesquilinear polar form H(x, y); hermitian_eval(x) = H(x, x).
Fq2 hermitian_pair(const Tower& t, const Point4& x, const Point4& y);
inline bool on_surface(const Tower& t, const Point4& x) { return t.is_zero(hermitian_eval(t, x)); }

/// Plücker coordinates in the order p01, p02, p03, p12, p13, p23, normalized.
Pluecker pluecker(const Tower& t, const Line& line);
Pluecker pluecker(const Tower& t, const Point4& a, const Point4& b);
Fq2 pluecker_relation(const Tower& t, const Pluecker& c);

/// Dense indexing of PG(5,q) points (and, dually, hyperplane covectors):
/// rows grouped by the position of the leading 1, remaining coordinates in base q.
class ProjectiveSpace5 {
 public:
  explicit ProjectiveSpace5(std::uint32_t q);
  std::uint32_t q() const noexcept { return q_; }
  std::uint64_t size() const noexcept { return size_; }
  Point6 point(std::uint64_t index) const;
  /// v must be normalized.
  std::uint64_t index(const Point6& v) const;

 private:
  std::uint32_t q_;
  std::uint64_t size_;
  std::array<std::uint64_t, 7> offset_{};
};

inline std::uint64_t hyperplane_count(std::uint32_t q) { return ProjectiveSpace5(q).size(); }

std::string to_string(const Fq2& x);
std::string to_string(const Point4& x);

}  // namespace hemi::geom
