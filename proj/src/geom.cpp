// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hemi/geom.hpp"

#include <sstream>
#include <utility>

namespace hemi::geom {

Line canonical_line(const Tower& t, const Point4& a, const Point4& b) {
  std::array<Point4, 2> rows{a, b};
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 4 && rank < 2; ++col) {
    std::size_t pick = rank;
    while (pick < 2 && t.is_zero(rows[pick][col])) ++pick;
    if (pick == 2) continue;
    std::swap(rows[rank], rows[pick]);
    const Fq2 inv = t.inv(rows[rank][col]);
    for (auto& x : rows[rank]) x = t.mul(x, inv);
    for (std::size_t r = 0; r < 2; ++r) {
      if (r == rank || t.is_zero(rows[r][col])) continue;
      const Fq2 f = rows[r][col];
      for (std::size_t j = 0; j < 4; ++j) rows[r][j] = t.sub(rows[r][j], t.mul(f, rows[rank][j]));
    }
    ++rank;
  }
  if (rank < 2) throw DomainError("points do not span a line");
  return {rows[0], rows[1]};
}

Fq2 hermitian_pair(const Tower& t, const Point4& x, const Point4& y) {
  // x1 y1^q + 2 x2 y2^q − x0 y3^q − x3 y0^q
  Fq2 r = t.mul(x[1], t.frob(y[1]));
  const Fq2 two_x2 = t.add(x[2], x[2]);
  r = t.add(r, t.mul(two_x2, t.frob(y[2])));
  r = t.sub(r, t.mul(x[0], t.frob(y[3])));
  r = t.sub(r, t.mul(x[3], t.frob(y[0])));
  return r;
}

Fq2 hermitian_eval(const Tower& t, const Point4& x) { return hermitian_pair(t, x, x); }

Pluecker pluecker(const Tower& t, const Point4& a, const Point4& b) {
  static constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  Pluecker c;
  for (std::size_t k = 0; k < 6; ++k) {
    const auto [i, j] = kPairs[k];
    c[k] = t.sub(t.mul(a[i], b[j]), t.mul(a[j], b[i]));
  }
  if (!normalize(t, c)) throw DomainError("degenerate span has no Pluecker image");
  return c;
}

Pluecker pluecker(const Tower& t, const Line& line) { return pluecker(t, line.first, line.second); }

Fq2 pluecker_relation(const Tower& t, const Pluecker& c) {
  // p01 p23 − p02 p13 + p03 p12
  return t.add(t.sub(t.mul(c[0], c[5]), t.mul(c[1], c[4])), t.mul(c[2], c[3]));
}

ProjectiveSpace5::ProjectiveSpace5(std::uint32_t q) : q_(q) {
  std::uint64_t acc = 0;
  for (int lead = 0; lead < 6; ++lead) {
    offset_[lead] = acc;
    std::uint64_t block = 1;
    for (int j = lead + 1; j < 6; ++j) block *= q;
    acc += block;
  }
  offset_[6] = acc;
  size_ = acc;
}

Point6 ProjectiveSpace5::point(std::uint64_t index) const {
  int lead = 0;
  while (index >= offset_[lead + 1]) ++lead;
  std::uint64_t rest = index - offset_[lead];
  Point6 v{};
  v[lead] = Fp{1};
  for (int j = 5; j > lead; --j) {
    v[j] = Fp{static_cast<std::uint32_t>(rest % q_)};
    rest /= q_;
  }
  return v;
}

std::uint64_t ProjectiveSpace5::index(const Point6& v) const {
  int lead = 0;
  while (lead < 6 && v[lead].v == 0) ++lead;
  if (lead == 6 || v[lead].v != 1) throw DomainError("PG(5,q) index needs a normalized nonzero vector");
  std::uint64_t rest = 0;
  for (int j = lead + 1; j < 6; ++j) rest = rest * q_ + v[j].v;
  return offset_[lead] + rest;
}

std::string to_string(const Fq2& x) {
  std::ostringstream os;
  if (x.a1.v == 0) {
    os << x.a0.v;
  } else {
    os << x.a0.v << "+" << x.a1.v << "t";
  }
  return os.str();
}

std::string to_string(const Point4& x) {
  std::ostringstream os;
  os << '(' << to_string(x[0]) << ',' << to_string(x[1]) << ',' << to_string(x[2]) << ',' << to_string(x[3]) << ')';
  return os.str();
}

}  // namespace hemi::geom
