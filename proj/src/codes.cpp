// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hemi/codes.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

#include "hemi/parallel.hpp"

namespace hemi::codes {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Fp dot(const Tower& t, const Point6& a, const Point6& b) {
  std::uint64_t acc = 0;
  for (int i = 0; i < 6; ++i) acc += static_cast<std::uint64_t>(a[i].v) * b[i].v;
  return Fp{static_cast<std::uint32_t>(acc % t.p())};
}

std::vector<Fq2> as_vector(const geom::Pluecker& p) { return {p.begin(), p.end()}; }

}  // namespace

KleinImages klein_images(const Surface& s, LineId start) {
  const Tower& t = s.tower();
  const std::uint32_t n = s.num_generators();
  std::vector<geom::Pluecker> raw(n);
  for (LineId l = 0; l < n; ++l) raw[l] = geom::pluecker(t, s.generator(l));

  // Six independent images, scanning cyclically from `start`.
  KleinImages out;
  linalg::Matrix<Fq2> rows;
  std::size_t found = 0;
  for (std::uint32_t i = 0; i < n && found < 6; ++i) {
    const LineId l = (start + i) % n;
    auto trial = rows;
    trial.push_back(as_vector(raw[l]));
    if (linalg::rank(t, trial) == trial.size()) {
      rows = std::move(trial);
      out.frame.lines[found++] = l;
    }
  }
  if (found < 6) throw ConstructionError("Plücker images do not span PG(5,q^2)");
  // Columns are the basis vectors; B c = P gives the unit-point coefficients.
  linalg::Matrix<Fq2> basis = linalg::zeros<Fq2>(6, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) basis[j][i] = rows[i][j];
  }
  const auto binv = linalg::inverse(t, basis);
  if (!binv) throw InternalConsistencyError("frame basis is singular");
  std::optional<std::vector<Fq2>> coeffs;
  for (std::uint32_t i = 0; i < n && !coeffs; ++i) {
    const LineId l = (start + i) % n;
    auto c = linalg::apply(t, *binv, as_vector(raw[l]));
    if (std::all_of(c.begin(), c.end(), [&](const Fq2& x) { return !t.is_zero(x); })) {
      coeffs = std::move(c);
      out.frame.lines[6] = l;
    }
  }
  if (!coeffs) throw ConstructionError("no unit point in general position among the Plücker images");
  linalg::Matrix<Fq2> m = basis;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) m[j][i] = t.mul(basis[j][i], (*coeffs)[i]);
  }
  const auto minv = linalg::inverse(t, m);
  if (!minv) throw InternalConsistencyError("frame matrix is singular");
  out.frame.to_subgeometry = *minv;

  out.points.resize(n);
  for (LineId l = 0; l < n; ++l) {
    const auto y = linalg::apply(t, *minv, as_vector(raw[l]));
    geom::Pluecker v{};
    std::copy(y.begin(), y.end(), v.begin());
    geom::normalize(t, v);
    for (int i = 0; i < 6; ++i) {
      if (!t.in_base(v[i])) {
        throw ConstructionError("image of generator " + std::to_string(l) + " does not lie in the subgeometry PG(5,q)");
      }
      out.points[l][i] = v[i].a0;
    }
  }
  return out;
}

Fp Quadric::eval(const Tower& t, const Point6& x) const {
  std::uint64_t acc = 0;
  std::size_t c = 0;
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j, ++c) acc += static_cast<std::uint64_t>(coeffs[c].v) * t.mul(x[i], x[j]).v;
  }
  return Fp{static_cast<std::uint32_t>(acc % t.p())};
}

Fp Quadric::polar(const Tower& t, const Point6& x, const Point6& y) const {
  Point6 s{};
  for (int i = 0; i < 6; ++i) s[i] = t.add(x[i], y[i]);
  return t.sub(t.sub(eval(t, s), eval(t, x)), eval(t, y));
}

Fp Quadric::discriminant(const Tower& t) const {
  linalg::Matrix<Fp> g = linalg::zeros<Fp>(6, 6);
  std::size_t c = 0;
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j, ++c) {
      if (i == j) {
        g[i][i] = t.add(coeffs[c], coeffs[c]);
      } else {
        g[i][j] = coeffs[c];
        g[j][i] = coeffs[c];
      }
    }
  }
  // Determinant by elimination.
  Fp det{1};
  for (std::size_t col = 0; col < 6; ++col) {
    std::size_t piv = col;
    while (piv < 6 && t.is_zero(g[piv][col])) ++piv;
    if (piv == 6) return Fp{0};
    if (piv != col) {
      std::swap(g[piv], g[col]);
      det = t.neg(det);
    }
    det = t.mul(det, g[col][col]);
    const Fp inv = t.inv(g[col][col]);
    for (std::size_t r = col + 1; r < 6; ++r) {
      const Fp f = t.mul(g[r][col], inv);
      for (std::size_t k = col; k < 6; ++k) g[r][k] = t.sub(g[r][k], t.mul(f, g[col][k]));
    }
  }
  return det;
}

std::uint64_t elliptic_count(std::uint64_t q) { return (q + 1) * (q * q * q + 1); }
std::uint64_t hyperbolic_count(std::uint64_t q) { return (q * q + 1) * (q * q + q + 1); }

std::uint64_t zero_count(const Tower& t, const Quadric& Q) {
  const geom::ProjectiveSpace5 ps(t.p());
  std::uint64_t n = 0;
  for (std::uint64_t i = 0; i < ps.size(); ++i) n += t.is_zero(Q.eval(t, ps.point(i)));
  return n;
}

QuadricFit fit_quadric(const Tower& t, const std::vector<Point6>& pts) {
  if (pts.size() < 21) throw ConstructionError("at least 21 points are needed to fit a quadric");
  linalg::Matrix<Fp> m;
  m.reserve(pts.size());
  for (const auto& x : pts) {
    std::vector<Fp> row;
    row.reserve(21);
    for (int i = 0; i < 6; ++i) {
      for (int j = i; j < 6; ++j) row.push_back(t.mul(x[i], x[j]));
    }
    m.push_back(std::move(row));
  }
  const auto ns = linalg::nullspace(t, m);
  QuadricFit fit;
  fit.solution_dim = ns.size();
  if (ns.size() != 1) {
    throw ConstructionError("quadrics through the points form a space of dimension " + std::to_string(ns.size()));
  }
  std::copy(ns[0].begin(), ns[0].end(), fit.form.coeffs.begin());
  if (t.is_zero(fit.form.discriminant(t))) throw ConstructionError("fitted quadric is degenerate");
  fit.zeros = zero_count(t, fit.form);
  if (fit.zeros != elliptic_count(t.p())) {
    throw ConstructionError("fitted quadric has " + std::to_string(fit.zeros) + " points, not elliptic");
  }
  return fit;
}

std::vector<Point6> select(const KleinImages& k, const std::vector<LineId>& lines) {
  std::vector<Point6> out;
  out.reserve(lines.size());
  for (auto l : lines) out.push_back(k.points.at(l));
  return out;
}

bool IntersectionCertificate::two_valued(std::uint64_t h1, std::uint64_t h2) const {
  if (histogram.size() != 2) return false;
  return histogram.count(h1) == 1 && histogram.count(h2) == 1;
}

IntersectionCertificate two_intersection(const Tower& t, const std::vector<Point6>& pts, unsigned workers,
                                         std::uint64_t work_limit) {
  const geom::ProjectiveSpace5 ps(t.p());
  if (ps.size() * pts.size() > work_limit) throw ResourceLimitError("hyperplane scan exceeds the work limit");
  IntersectionCertificate c;
  c.n = pts.size();
  c.hyperplanes = ps.size();
  std::vector<std::map<std::uint64_t, std::uint64_t>> parts(std::max(1u, workers));
  parallel_blocks(ps.size(), workers, [&](std::size_t b, std::size_t e, unsigned w) {
    for (std::size_t h = b; h < e; ++h) {
      const Point6 u = ps.point(h);
      std::uint64_t meet = 0;
      for (const auto& x : pts) meet += t.is_zero(dot(t, u, x));
      ++parts[w][meet];
    }
  });
  for (const auto& m : parts) {
    for (auto [k, v] : m) c.histogram[k] += v;
  }
  if (c.histogram.size() > 2) {
    // Locate a hyperplane with the third size for the report.
    const auto third = std::next(c.histogram.begin(), 2)->first;
    for (std::uint64_t h = 0; h < ps.size() && !c.witness; ++h) {
      std::uint64_t meet = 0;
      for (const auto& x : pts) meet += t.is_zero(dot(t, ps.point(h), x));
      if (meet == third) c.witness = h;
    }
  }
  return c;
}

std::vector<std::uint64_t> WeightDistribution::nonzero_weights() const {
  std::vector<std::uint64_t> w;
  for (auto [k, v] : counts) {
    if (k != 0) w.push_back(k);
  }
  return w;
}

WeightDistribution weight_distribution(const Tower& t, const std::vector<Point6>& columns, unsigned workers,
                                       std::uint64_t work_limit) {
  const std::uint32_t q = t.p();
  const std::uint64_t words = ipow(q, 6);
  if (words * columns.size() > work_limit) throw ResourceLimitError("codeword enumeration exceeds the work limit");
  WeightDistribution wd;
  wd.n = columns.size();
  wd.q = q;
  std::vector<std::map<std::uint64_t, std::uint64_t>> parts(std::max(1u, workers));
  parallel_blocks(words, workers, [&](std::size_t b, std::size_t e, unsigned w) {
    for (std::size_t m = b; m < e; ++m) {
      Point6 x{};
      std::uint64_t r = m;
      for (int i = 0; i < 6; ++i) {
        x[i] = Fp{static_cast<std::uint32_t>(r % q)};
        r /= q;
      }
      std::uint64_t weight = 0;
      for (const auto& v : columns) weight += !t.is_zero(dot(t, x, v));
      ++parts[w][weight];
    }
  });
  for (const auto& m : parts) {
    for (auto [k, v] : m) wd.counts[k] += v;
  }
  const auto nz = wd.nonzero_weights();
  if (nz.size() > 2) {
    for (std::uint64_t m = 1; m < words && !wd.witness; ++m) {
      Point6 x{};
      std::uint64_t r = m;
      for (int i = 0; i < 6; ++i) {
        x[i] = Fp{static_cast<std::uint32_t>(r % q)};
        r /= q;
      }
      std::uint64_t weight = 0;
      for (const auto& v : columns) weight += !t.is_zero(dot(t, x, v));
      if (weight == nz[2]) wd.witness = m;
    }
  }
  return wd;
}

bool pless_moment0(const WeightDistribution& w) {
  std::uint64_t s = 0;
  for (auto [k, v] : w.counts) s += v;
  return s == ipow(w.q, w.k);
}

bool pless_moment1(const WeightDistribution& w) {
  std::uint64_t s = 0;
  for (auto [k, v] : w.counts) s += k * v;
  return s == w.n * ipow(w.q, w.k - 1) * (w.q - 1);
}

bool pless_moment2(const WeightDistribution& w) {
  std::uint64_t s = 0;
  for (auto [k, v] : w.counts) s += k * k * v;
  return s == ipow(w.q, w.k - 2) * (w.q - 1) * w.n * ((w.q - 1) * w.n + 1);
}

std::vector<Point6> omega_from_set(const Tower& t, const std::vector<Point6>& pts) {
  std::vector<Point6> out;
  out.reserve(pts.size() * (t.p() - 1));
  for (const auto& x : pts) {
    for (std::uint32_t c = 1; c < t.p(); ++c) {
      Point6 y{};
      for (int i = 0; i < 6; ++i) y[i] = t.mul(x[i], Fp{c});
      out.push_back(y);
    }
  }
  return out;
}

std::string points_csv(const std::vector<Point6>& pts) {
  std::ostringstream os;
  os << "x0,x1,x2,x3,x4,x5\n";
  for (const auto& x : pts) {
    for (int i = 0; i < 6; ++i) os << (i ? "," : "") << x[i].v;
    os << '\n';
  }
  return os.str();
}

std::string generator_matrix_csv(const std::vector<Point6>& pts) {
  std::ostringstream os;
  for (int i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) os << (j ? "," : "") << pts[j][i].v;
    os << '\n';
  }
  return os.str();
}

std::string weights_json(const WeightDistribution& w) {
  nlohmann::json j = nlohmann::json::object();
  for (auto [k, v] : w.counts) j[std::to_string(k)] = v;
  return j.dump(1);
}

}  // namespace hemi::codes
