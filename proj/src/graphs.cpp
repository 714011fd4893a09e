// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hemi/graphs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "hemi/parallel.hpp"

namespace hemi::graphs {

namespace {

std::optional<std::int64_t> exact_sqrt(std::int64_t d) {
  if (d < 0) return std::nullopt;
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(d)));
  while (s * s > d) --s;
  while ((s + 1) * (s + 1) <= d) ++s;
  if (s * s != d) return std::nullopt;
  return s;
}

/// First value seen per class plus the first pair that disagrees with it.
struct PairStats {
  std::optional<std::int64_t> lambda, mu;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;
  bool consistent = true;

  void see(bool adjacent, std::int64_t c, std::uint64_t u, std::uint64_t v) {
    auto& slot = adjacent ? lambda : mu;
    if (!slot) {
      slot = c;
    } else if (*slot != c && consistent) {
      consistent = false;
      witness = {u, v};
    }
  }
  void merge(const PairStats& o) {
    if (!o.consistent && consistent) {
      consistent = false;
      witness = o.witness;
    }
    for (auto [mine, theirs] : {std::pair{&lambda, &o.lambda}, std::pair{&mu, &o.mu}}) {
      if (!*theirs) continue;
      if (!*mine) {
        *mine = *theirs;
      } else if (**mine != **theirs && consistent) {
        consistent = false;
      }
    }
  }
};

void finish(SrgReport& r, const PairStats& st) {
  r.strongly_regular = st.consistent && st.lambda.has_value() && st.mu.has_value();
  r.degenerate = !st.mu.has_value();
  r.witness = st.witness;
  if (st.lambda) r.params.lambda = *st.lambda;
  if (st.mu) r.params.mu = *st.mu;
  if (!r.strongly_regular) return;
  r.feasible = feasible(r.params);
  r.spec = spectrum(r.params);
  r.traces = r.spec && trace_identities(r.params, *r.spec);
}

}  // namespace

std::optional<Spectrum> spectrum(const SrgParams& p) {
  const std::int64_t d = (p.lambda - p.mu) * (p.lambda - p.mu) + 4 * (p.k - p.mu);
  const auto s = exact_sqrt(d);
  if (!s || *s == 0) return std::nullopt;
  if (((p.lambda - p.mu) + *s) % 2 != 0) return std::nullopt;
  Spectrum r;
  r.theta1 = ((p.lambda - p.mu) + *s) / 2;
  r.theta2 = ((p.lambda - p.mu) - *s) / 2;
  // 1 + m1 + m2 = v and k + m1θ1 + m2θ2 = 0.
  const std::int64_t num = -p.k - (p.v - 1) * r.theta2;
  const std::int64_t den = r.theta1 - r.theta2;
  if (num % den != 0) return std::nullopt;
  r.m1 = num / den;
  r.m2 = p.v - 1 - r.m1;
  if (r.m1 < 0 || r.m2 < 0) return std::nullopt;
  return r;
}

bool feasible(const SrgParams& p) { return p.k * (p.k - p.lambda - 1) == p.mu * (p.v - p.k - 1); }

bool trace_identities(const SrgParams& p, const Spectrum& s) {
  const bool dim = 1 + s.m1 + s.m2 == p.v;
  const bool tr1 = p.k + s.m1 * s.theta1 + s.m2 * s.theta2 == 0;
  const bool tr2 = p.k * p.k + s.m1 * s.theta1 * s.theta1 + s.m2 * s.theta2 * s.theta2 == p.v * p.k;
  return dim && tr1 && tr2;
}

SrgParams thas_params(std::int64_t q, std::int64_t m) {
  return {(q * q * q + 1) * (q + 1 - m), (q * q + 1) * (q - m), q - 1 - m, q * q + 1 - m * (q + 1)};
}

Spectrum thas_spectrum_closed_form(std::int64_t q) {
  const std::int64_t q2 = q * q;
  return {q - 1, (-q2 + q - 2) / 2, (q2 * q2 - q2 * q + 2 * q2 - q + 1) / 2, (q2 + 1) * (q - 1)};
}

SrgParams cayley_params(std::int64_t q, std::int64_t m) {
  const std::int64_t q2 = q * q;
  const std::int64_t a = m * (q - 1);
  return {q2 * q2 * q2, a * (q2 * q + 1), a * (3 + a) - q2, a * (a + 1)};
}

std::int64_t counting_rhs(std::int64_t q, std::int64_t m, std::int64_t mu, bool printed) {
  const std::int64_t q2 = q * q;
  const std::int64_t base = (q + 1) * (m * (q2 + 1) - (q2 + 1 - mu));
  return printed ? base - q2 + 1 - mu : base + (q2 + 1 - mu);
}

std::vector<std::int64_t> regular_system_candidates(std::int64_t q) {
  std::vector<std::int64_t> out;
  for (std::int64_t m = 1; m <= q; ++m) {
    const SrgParams p = thas_params(q, m);
    const bool counting = counting_rhs(q, m, p.mu, false) == m * (q * q * q + 1);
    if (counting && feasible(p)) out.push_back(m);
  }
  return out;
}

BitGraph::BitGraph(std::uint32_t n) : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {}

void BitGraph::add_edge(std::uint32_t u, std::uint32_t v) {
  bits_[static_cast<std::size_t>(u) * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  bits_[static_cast<std::size_t>(v) * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
}

std::uint32_t BitGraph::degree(std::uint32_t u) const noexcept {
  std::uint32_t d = 0;
  const auto* r = row(u);
  for (std::uint32_t w = 0; w < words_; ++w) d += std::popcount(r[w]);
  return d;
}

std::uint32_t BitGraph::common(std::uint32_t u, std::uint32_t v) const noexcept {
  std::uint32_t d = 0;
  const auto* a = row(u);
  const auto* b = row(v);
  for (std::uint32_t w = 0; w < words_; ++w) d += std::popcount(a[w] & b[w]);
  return d;
}

ThasGraph build_thas_graph(const hs::Certificate& c, const geom::Surface& s, std::uint32_t max_vertices) {
  if (!c.verified) throw PreconditionError("the graph needs a verified hemisystem certificate");
  if (c.p != s.q()) throw PreconditionError("certificate and surface are for different primes");
  ThasGraph g;
  g.vertices = hs::complement(s, c.lines);
  if (g.vertices.size() > max_vertices) {
    throw ResourceLimitError("graph has " + std::to_string(g.vertices.size()) + " vertices, limit " +
                             std::to_string(max_vertices));
  }
  std::vector<std::int64_t> index(s.num_generators(), -1);
  for (std::uint32_t i = 0; i < g.vertices.size(); ++i) index[g.vertices[i]] = i;
  g.graph = BitGraph(static_cast<std::uint32_t>(g.vertices.size()));
  std::vector<std::uint32_t> local;
  for (geom::PointId p = 0; p < s.num_points(); ++p) {
    local.clear();
    for (auto l : s.generators_through(p)) {
      if (index[l] >= 0) local.push_back(static_cast<std::uint32_t>(index[l]));
    }
    for (std::size_t i = 0; i < local.size(); ++i) {
      for (std::size_t j = i + 1; j < local.size(); ++j) g.graph.add_edge(local[i], local[j]);
    }
  }
  return g;
}

SrgReport verify_srg(const BitGraph& g, unsigned workers) {
  SrgReport r;
  const std::uint32_t n = g.size();
  r.params.v = n;
  if (n == 0) return r;
  r.params.k = g.degree(0);
  r.regular = true;
  for (std::uint32_t u = 0; u < n; ++u) {
    if (g.adjacent(u, u) || g.degree(u) != r.params.k) {
      r.regular = false;
      r.witness = {u, u};
      return r;
    }
  }
  std::vector<PairStats> parts(std::max(1u, workers));
  parallel_blocks(n, workers, [&](std::size_t b, std::size_t e, unsigned w) {
    auto& st = parts[w];
    for (std::size_t u = b; u < e; ++u) {
      for (std::uint32_t v = static_cast<std::uint32_t>(u) + 1; v < n; ++v) {
        st.see(g.adjacent(static_cast<std::uint32_t>(u), v), g.common(static_cast<std::uint32_t>(u), v), u, v);
      }
    }
  });
  PairStats all;
  for (const auto& p : parts) all.merge(p);
  finish(r, all);
  return r;
}

CayleyGraph::CayleyGraph(std::uint32_t q, const std::vector<Point6>& omega) : q_(q) {
  std::uint64_t n = 1;
  for (int i = 0; i < 6; ++i) n *= q;
  in_omega_.assign(n, 0);
  for (const auto& x : omega) {
    const auto c = encode(x);
    if (c == 0) throw DomainError("0 lies in the connection set");
    if (!in_omega_[c]) omega_.push_back(c);
    in_omega_[c] = 1;
  }
  for (auto c : omega_) {
    Point6 x = decode(c);
    for (auto& a : x) a = Fp{a.v == 0 ? 0 : q_ - a.v};
    if (!in_omega_[encode(x)]) throw DomainError("the connection set is not closed under negation");
  }
  std::sort(omega_.begin(), omega_.end());
}

std::uint64_t CayleyGraph::encode(const Point6& x) const {
  std::uint64_t c = 0;
  for (int i = 5; i >= 0; --i) c = c * q_ + x[i].v;
  return c;
}

Point6 CayleyGraph::decode(std::uint64_t code) const {
  Point6 x{};
  for (int i = 0; i < 6; ++i) {
    x[i] = Fp{static_cast<std::uint32_t>(code % q_)};
    code /= q_;
  }
  return x;
}

namespace {

std::uint64_t sub_codes(std::uint64_t a, std::uint64_t b, std::uint32_t q) {
  std::uint64_t out = 0, scale = 1;
  for (int i = 0; i < 6; ++i) {
    const std::uint32_t da = a % q, db = b % q;
    out += scale * ((da + q - db) % q);
    a /= q;
    b /= q;
    scale *= q;
  }
  return out;
}

}  // namespace

bool CayleyGraph::adjacent(std::uint64_t u, std::uint64_t v) const { return u != v && in_omega_[sub_codes(u, v, q_)]; }

std::uint64_t CayleyGraph::common_with_zero(std::uint64_t x) const {
  std::uint64_t c = 0;
  for (auto w : omega_) c += in_omega_[sub_codes(w, x, q_)];
  return c;
}

SrgReport verify_cayley(const CayleyGraph& g, unsigned workers) {
  SrgReport r;
  r.params.v = static_cast<std::int64_t>(g.size());
  r.params.k = static_cast<std::int64_t>(g.degree());
  r.regular = true;
  std::vector<PairStats> parts(std::max(1u, workers));
  parallel_blocks(g.size() - 1, workers, [&](std::size_t b, std::size_t e, unsigned w) {
    for (std::size_t i = b; i < e; ++i) {
      const std::uint64_t x = i + 1;
      parts[w].see(g.adjacent(0, x), static_cast<std::int64_t>(g.common_with_zero(x)), 0, x);
    }
  });
  PairStats all;
  for (const auto& p : parts) all.merge(p);
  finish(r, all);
  return r;
}

std::uint32_t cayley_pair_oracle(const CayleyGraph& g, const SrgParams& params, std::mt19937_64& rng,
                                 std::uint32_t pairs) {
  std::uint32_t bad = 0;
  std::uniform_int_distribution<std::uint64_t> pick(0, g.size() - 1);
  for (std::uint32_t i = 0; i < pairs; ++i) {
    const std::uint64_t u = pick(rng);
    std::uint64_t v = pick(rng);
    while (v == u) v = pick(rng);
    std::int64_t c = 0;
    for (std::uint64_t z = 0; z < g.size(); ++z) c += g.adjacent(u, z) && g.adjacent(v, z);
    bad += c != (g.adjacent(u, v) ? params.lambda : params.mu);
  }
  return bad;
}

std::string edges_csv(const ThasGraph& g) {
  std::ostringstream os;
  os << "u,v\n";
  const std::uint32_t n = g.graph.size();
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (g.graph.adjacent(u, v)) os << g.vertices[u] << ',' << g.vertices[v] << '\n';
    }
  }
  return os.str();
}

std::string params_json(const SrgReport& r) {
  nlohmann::json j{{"v", r.params.v}, {"k", r.params.k}, {"lambda", r.params.lambda}, {"mu", r.params.mu}};
  if (r.spec) {
    j["theta1"] = r.spec->theta1;
    j["theta2"] = r.spec->theta2;
    j["m1"] = r.spec->m1;
    j["m2"] = r.spec->m2;
  }
  j["verified"] = r.ok();
  return j.dump(1);
}

}  // namespace hemi::graphs
