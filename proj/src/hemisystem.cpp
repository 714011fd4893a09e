// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hemi/hemisystem.hpp"

#include <algorithm>
#include <cstdio>
#include <iterator>
#include <nlohmann/json.hpp>
#include <sstream>

#include "hemi/cache.hpp"
#include "hemi/parallel.hpp"

namespace hemi::hs {

using nlohmann::json;

void require_landau(std::uint32_t p, bool experimental) {
  if (p < 5 || !ff::is_prime(p)) {
    throw PreconditionError("p = " + std::to_string(p) + " is not an odd prime >= 5");
  }
  if (experimental) return;
  const auto rec = lemmas::landau_record(p);
  if (!rec.a) {
    throw LandauGateError("p = " + std::to_string(p) + " is not of the form 1 + 4a^2", rec);
  }
  if (p % 8 != 5) {
    throw LandauGateError("p = " + std::to_string(p) + " is not 5 (mod 8); pass --experimental to construct anyway",
                          rec);
  }
}

namespace {

std::uint64_t expected_size(std::uint32_t q) {
  const std::uint64_t q64 = q;
  return (q64 * q64 * q64 + 1) * (q64 + 1) / 2;
}

group::Orbits orbits_from_labels(const std::vector<std::uint8_t>& labels, const std::vector<std::uint8_t>& cls,
                                 curve::GenClass which) {
  group::Orbits o;
  o.orbits.resize(2);
  for (LineId l = 0; l < labels.size(); ++l) {
    if (cls[l] == static_cast<std::uint8_t>(which)) o.orbits.at(labels[l]).push_back(l);
  }
  if (o.orbits[0].empty() || o.orbits[1].empty()) throw InternalConsistencyError("cached orbit labels are incomplete");
  if (o.orbits[1].front() < o.orbits[0].front()) std::swap(o.orbits[0], o.orbits[1]);
  return o;
}

std::vector<std::uint8_t> incidence_counts(const Surface& s, const std::vector<LineId>& lines, unsigned workers) {
  const std::size_t n = s.num_points();
  const unsigned shards = std::max(1u, std::min<unsigned>(workers, 8));
  std::vector<std::vector<std::uint8_t>> parts(shards);
  parallel_blocks(lines.size(), shards, [&](std::size_t b, std::size_t e, unsigned w) {
    auto& c = parts[w];
    c.assign(n, 0);
    for (std::size_t i = b; i < e; ++i) s.for_each_point(lines[i], [&c](PointId p) { ++c[p]; });
  });
  std::vector<std::uint8_t> out = std::move(parts[0]);
  if (out.empty()) out.assign(n, 0);
  for (unsigned w = 1; w < shards; ++w) {
    if (parts[w].empty()) continue;
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>(out[i] + parts[w][i]);
  }
  return out;
}

std::vector<LineId> merge_sorted(std::initializer_list<const std::vector<LineId>*> parts) {
  std::vector<LineId> out;
  for (const auto* v : parts) out.insert(out.end(), v->begin(), v->end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint8_t> membership(const Surface& s, const std::vector<LineId>& lines) {
  std::vector<std::uint8_t> in(s.num_generators(), 0);
  for (auto l : lines) in[l] = 1;
  return in;
}

json histogram_json(const Histogram& h, bool with_counts) {
  json j{{"min", h.min}, {"max", h.max}, {"mode", h.mode}, {"incidences", h.incidences}};
  if (with_counts) {
    json counts = json::object();
    for (std::size_t k = 0; k < h.counts.size(); ++k) {
      if (h.counts[k] != 0) counts[std::to_string(k)] = h.counts[k];
    }
    j["counts"] = counts;
  }
  return j;
}

Histogram histogram_from_json(const json& j) {
  Histogram h;
  h.min = j.at("min").get<std::uint32_t>();
  h.max = j.at("max").get<std::uint32_t>();
  h.mode = j.at("mode").get<std::uint32_t>();
  h.incidences = j.value("incidences", std::uint64_t{0});
  if (j.contains("counts")) {
    for (const auto& [k, v] : j.at("counts").items()) {
      const std::size_t idx = std::stoul(k);
      if (h.counts.size() <= idx) h.counts.resize(idx + 1, 0);
      h.counts[idx] = v.get<std::uint64_t>();
    }
  }
  return h;
}

}  // namespace

Model::Model(std::uint32_t p, const ModelOptions& opt)
    : tower(ff::Tower::make(p)),
      surface(Surface::build(tower, opt.limits)),
      tables(curve::build_tables(surface)),
      workers(std::max(1u, opt.workers)) {
  std::optional<cache::Labels> cached;
  if (opt.cache_dir) cached = cache::load(*opt.cache_dir, p, surface.num_generators());
  if (cached) {
    cls.cls.resize(cached->cls.size());
    for (LineId l = 0; l < cls.cls.size(); ++l) {
      const auto c = static_cast<curve::GenClass>(cached->cls[l]);
      cls.cls[l] = c;
      cls.g1 += c == curve::GenClass::g1;
      cls.g2 += c == curve::GenClass::g2;
      cls.chord += c == curve::GenClass::chord;
      cls.outside += c == curve::GenClass::outside;
    }
    if (cls.chord != tables.chords.size()) throw InternalConsistencyError("cached classes disagree with the chord set");
    from_cache = true;
  } else {
    cls = curve::classify_generators(surface, tables);
  }
  group = group::build_group(surface, tables, cls);
  if (cached) {
    g1_orbits = orbits_from_labels(cached->orbit, cached->cls, curve::GenClass::g1);
    g2_orbits = orbits_from_labels(cached->orbit, cached->cls, curve::GenClass::g2);
  } else {
    g1_orbits = group::orbits(surface, group.h_matrices(), cls.of(curve::GenClass::g1));
    g2_orbits = group::orbits(surface, group.h_matrices(), cls.of(curve::GenClass::g2));
  }
  group::require_two_orbits(g1_orbits, "G1");
  group::require_two_orbits(g2_orbits, "G2");
  if (opt.cache_dir && !cached) {
    cache::Labels labels;
    labels.p = p;
    labels.cls.resize(cls.cls.size());
    labels.orbit.assign(cls.cls.size(), 255);
    for (LineId l = 0; l < cls.cls.size(); ++l) labels.cls[l] = static_cast<std::uint8_t>(cls.cls[l]);
    for (const auto* o : {&g1_orbits, &g2_orbits}) {
      for (std::size_t i = 0; i < 2; ++i) {
        for (auto l : o->orbits[i]) labels.orbit[l] = static_cast<std::uint8_t>(i);
      }
    }
    cache::store(*opt.cache_dir, labels);
  }
}

Histogram incidence_histogram(const Surface& s, const std::vector<LineId>& lines, unsigned workers) {
  const auto c = incidence_counts(s, lines, workers);
  Histogram h;
  h.counts.assign(s.q() + 2, 0);
  for (auto v : c) {
    if (v >= h.counts.size()) h.counts.resize(v + 1, 0);
    ++h.counts[v];
    h.incidences += v;
  }
  h.min = static_cast<std::uint32_t>(
      std::distance(h.counts.begin(), std::find_if(h.counts.begin(), h.counts.end(), [](auto x) { return x != 0; })));
  h.max = static_cast<std::uint32_t>(h.counts.size() - 1);
  while (h.max > 0 && h.counts[h.max] == 0) --h.max;
  h.mode = static_cast<std::uint32_t>(std::distance(h.counts.begin(), std::max_element(h.counts.begin(), h.counts.end())));
  return h;
}

bool is_hemisystem(const Surface& s, const Histogram& h) { return h.constant((s.q() + 1) / 2); }

std::vector<LineId> complement(const Surface& s, const std::vector<LineId>& lines) {
  const auto in = membership(s, lines);
  std::vector<LineId> out;
  out.reserve(s.num_generators() - std::min<std::size_t>(lines.size(), s.num_generators()));
  for (LineId l = 0; l < s.num_generators(); ++l) {
    if (!in[l]) out.push_back(l);
  }
  return out;
}

HalfConditions verify_half_conditions(const Model& m, const std::vector<LineId>& m_lines, std::optional<PointId> p_plus) {
  const Surface& s = m.surface;
  auto meeting = m.cls.of(curve::GenClass::g1);
  const auto g2 = m.cls.of(curve::GenClass::g2);
  meeting.insert(meeting.end(), g2.begin(), g2.end());
  const auto np = incidence_counts(s, meeting, m.workers);
  const auto mc = incidence_counts(s, m_lines, m.workers);
  std::vector<bool> on_curve(s.num_points(), false);
  for (auto p : m.tables.x_plus) on_curve[p] = true;
  const std::uint32_t half = (s.q() + 1) / 2;
  HalfConditions r;
  for (PointId p = 0; p < s.num_points(); ++p) {
    bool fail;
    if (on_curve[p]) {
      ++r.a_points;
      fail = mc[p] != half;
      r.a_failures += fail;
    } else {
      ++r.b_points;
      fail = 2u * mc[p] != np[p];
      r.b_failures += fail;
    }
    if (fail && !r.witness) r.witness = p;
  }
  if (p_plus) {
    r.p_plus_np = np[*p_plus];
    r.p_plus_m = mc[*p_plus];
  }
  return r;
}

Invariance verify_invariance(const Model& m, const std::vector<LineId>& lines, std::size_t m1_orbit) {
  const Surface& s = m.surface;
  const auto in = membership(s, lines);
  Invariance r;
  std::vector<group::Mat4> mats;
  if (m.group.materialized) {
    for (const auto& e : m.group.elements) {
      if (e.in_h) mats.push_back(e.m);
    }
    r.exhaustive = true;
  } else {
    for (const auto& e : m.group.h_generators) mats.push_back(e.m);
  }
  for (const auto& mat : mats) {
    for (auto l : lines) {
      if (!in[group::act(s, mat, l)]) {
        throw TheoremViolation("an element of h moves generator " + std::to_string(l) + " out of the hemisystem");
      }
    }
    ++r.elements_checked;
  }
  r.fixed = true;
  const auto& m1 = m.g1_orbits.orbits.at(m1_orbit);
  r.w_m1_to_m1prime = std::all_of(m1.begin(), m1.end(), [&](LineId l) {
    return m.g1_orbits.index_of(group::act(s, m.group.w, l)) != m1_orbit;
  });
  std::size_t inside = 0;
  for (auto l : lines) inside += in[group::act(s, m.group.w, l)];
  r.w_fixes = inside == lines.size();
  r.w_to_complement = inside == 0 && 2 * lines.size() == s.num_generators();
  return r;
}

Certificate assemble(const Model& m, AssembleOptions opt) {
  const Surface& s = m.surface;
  const std::uint32_t q = s.q();
  Certificate c;
  c.p = q;
  c.group_order = m.group.h_order;
  const auto& o1 = m.g1_orbits.orbits;
  const auto& o2 = m.g2_orbits.orbits;
  const auto& chords = m.tables.chords;

  std::vector<std::string> g1_names{"G1[0]", "G1[1]"}, g2_names{"G2[0]", "G2[1]"};
  std::optional<Pairing> rule;
  std::optional<PointId> p_plus;
  auto evaluate = [&](std::size_t i, std::size_t j) {
    Pairing pr;
    pr.m1_orbit = i;
    pr.m2_orbit = j;
    pr.label = g1_names[i] + " + " + g2_names[j] + " + H";
    pr.histogram = incidence_histogram(s, merge_sorted({&o1[i], &o2[j], &chords}), m.workers);
    pr.hemisystem = is_hemisystem(s, pr.histogram);
    return pr;
  };

  if (q % 8 == 5) {
    const auto plus = lemmas::make_context(s, 1);
    const auto minus = lemmas::make_context(s, -1);
    const std::size_t i = m.g1_orbits.index_of(plus.g0);
    g1_names[i] = "M1";
    g1_names[1 - i] = "M1'";
    const std::size_t jp = m.g2_orbits.index_of(plus.ell);
    const std::size_t jm = m.g2_orbits.index_of(minus.ell);
    if (jp != jm) {
      g2_names[jp] = "orbit(l+)";
      g2_names[jm] = "orbit(l-)";
    }
    const auto rr = lemmas::count_r_rprime(s, m.tables, plus, o1[i], o1[1 - i]);
    c.r = rr.r;
    c.rprime = rr.rprime;
    p_plus = plus.p_id;
    if (rr.r != rr.rprime) {
      c.ell_choice = rr.r < rr.rprime ? "plus" : "minus";
      rule = evaluate(i, rr.r < rr.rprime ? jp : jm);
    }
  }
  if (rule) c.pairings.push_back(*rule);
  if (opt.all_pairings || !rule) {
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        if (rule && rule->m1_orbit == i && rule->m2_orbit == j) continue;
        c.pairings.push_back(evaluate(i, j));
      }
    }
  }

  const Pairing* chosen = nullptr;
  if (rule) {
    c.rule_hemisystem = rule->hemisystem;
    chosen = &c.pairings.front();
    if (!rule->hemisystem) {
      c.failure = "choice rule gives a non-hemisystem";
      for (const auto& pr : c.pairings) {
        if (pr.hemisystem) c.failure += "; " + pr.label + " is one";
      }
    }
  } else {
    c.ell_choice = "search";
    for (const auto& pr : c.pairings) {
      if (pr.hemisystem) {
        chosen = &pr;
        break;
      }
    }
    c.rule_hemisystem = chosen != nullptr;
    if (!chosen) {
      c.failure = "no pairing gives a hemisystem";
      chosen = &c.pairings.front();
    }
  }

  c.m1_orbit = chosen->m1_orbit;
  c.m2_orbit = chosen->m2_orbit;
  c.m1_size = o1[c.m1_orbit].size();
  c.m2_size = o2[c.m2_orbit].size();
  c.chord_size = chords.size();
  c.histogram = chosen->histogram;
  c.lines = merge_sorted({&o1[c.m1_orbit], &o2[c.m2_orbit], &chords});
  c.digest = digest(c.lines);

  c.half = verify_half_conditions(m, merge_sorted({&o1[c.m1_orbit], &o2[c.m2_orbit]}), p_plus);
  c.invariance = verify_invariance(m, c.lines, c.m1_orbit);
  c.complement_hemisystem = is_hemisystem(s, incidence_histogram(s, complement(s, c.lines), m.workers));
  c.verified = c.rule_hemisystem && c.lines.size() == expected_size(q) && c.half.ok() && c.invariance.fixed &&
               c.complement_hemisystem;
  if (c.verified) c.failure.clear();
  if (!c.verified && c.failure.empty()) c.failure = "certificate checks failed";
  return c;
}

std::string digest(const std::vector<LineId>& lines) {
  std::vector<LineId> sorted = lines;
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t h = 1469598103934665603ull;
  for (auto l : sorted) {
    for (int k = 0; k < 4; ++k) {
      h ^= (l >> (8 * k)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string to_json(const Certificate& c) {
  json j;
  j["format_version"] = c.format_version;
  j["p"] = c.p;
  j["sizes"] = {{"M1", c.m1_size}, {"M2", c.m2_size}, {"H", c.chord_size}, {"total", c.lines.size()}};
  j["components"] = {{"M1_orbit", c.m1_orbit}, {"M2_orbit", c.m2_orbit}};
  j["r"] = c.r ? json(*c.r) : json(nullptr);
  j["rprime"] = c.rprime ? json(*c.rprime) : json(nullptr);
  j["ell_choice"] = c.ell_choice;
  j["rule_hemisystem"] = c.rule_hemisystem;
  json pairings = json::array();
  for (const auto& pr : c.pairings) {
    pairings.push_back({{"label", pr.label},
                        {"M1_orbit", pr.m1_orbit},
                        {"M2_orbit", pr.m2_orbit},
                        {"hemisystem", pr.hemisystem},
                        {"histogram_digest", histogram_json(pr.histogram, false)}});
  }
  j["pairings"] = pairings;
  j["histogram_digest"] = histogram_json(c.histogram, true);
  j["group_order"] = c.group_order;
  json half{{"A_points", c.half.a_points},
            {"A_failures", c.half.a_failures},
            {"B_points", c.half.b_points},
            {"B_failures", c.half.b_failures}};
  if (c.half.p_plus_np) half["P_plus_nP"] = *c.half.p_plus_np;
  if (c.half.p_plus_m) half["P_plus_M"] = *c.half.p_plus_m;
  if (c.half.witness) half["witness"] = *c.half.witness;
  j["half_conditions"] = half;
  j["invariance"] = {{"elements_checked", c.invariance.elements_checked},
                     {"exhaustive", c.invariance.exhaustive},
                     {"fixed", c.invariance.fixed},
                     {"w_maps_M1_to_M1prime", c.invariance.w_m1_to_m1prime},
                     {"w_maps_S_to_complement", c.invariance.w_to_complement},
                     {"w_fixes_S", c.invariance.w_fixes}};
  j["complement_hemisystem"] = c.complement_hemisystem;
  j["verified"] = c.verified;
  j["failure"] = c.failure;
  j["digest"] = c.digest;
  j["lines"] = c.lines;
  return j.dump(1);
}

Certificate from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("certificate is not valid JSON: ") + e.what());
  }
  try {
    Certificate c;
    c.format_version = j.at("format_version").get<int>();
    if (c.format_version != kFormatVersion) {
      throw ConfigError("certificate format_version " + std::to_string(c.format_version) + " is not " +
                        std::to_string(kFormatVersion));
    }
    c.p = j.at("p").get<std::uint32_t>();
    c.lines = j.at("lines").get<std::vector<LineId>>();
    c.digest = j.at("digest").get<std::string>();
    c.verified = j.at("verified").get<bool>();
    const auto& sz = j.at("sizes");
    c.m1_size = sz.at("M1").get<std::size_t>();
    c.m2_size = sz.at("M2").get<std::size_t>();
    c.chord_size = sz.at("H").get<std::size_t>();
    c.m1_orbit = j.at("components").at("M1_orbit").get<std::size_t>();
    c.m2_orbit = j.at("components").at("M2_orbit").get<std::size_t>();
    if (!j.at("r").is_null()) c.r = j["r"].get<std::uint32_t>();
    if (!j.at("rprime").is_null()) c.rprime = j["rprime"].get<std::uint32_t>();
    c.ell_choice = j.at("ell_choice").get<std::string>();
    c.rule_hemisystem = j.at("rule_hemisystem").get<bool>();
    c.histogram = histogram_from_json(j.at("histogram_digest"));
    c.group_order = j.at("group_order").get<std::uint64_t>();
    c.complement_hemisystem = j.at("complement_hemisystem").get<bool>();
    c.failure = j.value("failure", std::string{});
    for (const auto& pj : j.at("pairings")) {
      Pairing pr;
      pr.label = pj.at("label").get<std::string>();
      pr.m1_orbit = pj.at("M1_orbit").get<std::size_t>();
      pr.m2_orbit = pj.at("M2_orbit").get<std::size_t>();
      pr.hemisystem = pj.at("hemisystem").get<bool>();
      pr.histogram = histogram_from_json(pj.at("histogram_digest"));
      c.pairings.push_back(pr);
    }
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed certificate: ") + e.what());
  }
}

FileCheck recheck(const Certificate& c, unsigned workers) {
  const auto t = ff::Tower::make(c.p);
  const auto s = Surface::build(t);
  FileCheck r;
  std::vector<LineId> sorted = c.lines;
  std::sort(sorted.begin(), sorted.end());
  const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  const bool in_range = sorted.empty() || sorted.back() < s.num_generators();
  r.size_ok = distinct && in_range && sorted.size() == expected_size(c.p);
  r.digest_ok = digest(sorted) == c.digest;
  if (in_range) {
    r.histogram = incidence_histogram(s, sorted, workers);
    r.hemisystem = is_hemisystem(s, r.histogram);
  }
  return r;
}

std::string lines_csv(const Surface& s, const std::vector<LineId>& lines) {
  const ff::Tower& t = s.tower();
  std::ostringstream os;
  os << "line,x0,x1,x2,x3,y0,y1,y2,y3\n";
  for (auto l : lines) {
    const auto g = s.generator(l);
    os << l;
    for (const auto* pt : {&g.first, &g.second}) {
      for (const auto& x : *pt) os << ',' << t.code(x);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace hemi::hs

namespace hemi::hs {

bool LemmaSuite::all_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.ok; });
}

const SuiteCheck& LemmaSuite::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw DomainError("no check named " + name);
}

LemmaSuite lemma_suite(const Model& m) {
  const Surface& s = m.surface;
  const ff::Tower& t = m.tower;
  const std::uint32_t q = t.p();
  lemmas::require_case_iii(q);
  LemmaSuite out;
  out.p = q;
  out.landau = lemmas::landau_record(q);
  out.n_q = out.landau.n_q;
  auto add = [&](std::string name, bool ok, std::string detail) {
    out.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const std::uint32_t half = (q + 1) / 2;
  std::optional<lemmas::CaseIIIContext> plus;
  for (int eps : {1, -1}) {
    const std::string tag = eps == 1 ? " (e=+1)" : " (e=-1)";
    const auto ctx = lemmas::make_context(s, eps);
    if (eps == 1) plus = ctx;

    std::vector<ff::Fq2> sols;
    try {
      sols = lemmas::solve_eq_v(t, eps);
      add("solutions of the equation in v" + tag, true, std::to_string(sols.size()));
    } catch (const TheoremViolation& e) {
      add("solutions of the equation in v" + tag, false, e.what());
    }
    std::uint32_t nonsq = 0, zeros = 0;
    for (const auto& v : sols) {
      const int sym = lemmas::nonsquare_symbol(t, v, eps);
      nonsq += sym != 1;
      zeros += sym == 0;
    }
    add("non-square condition on every solution" + tag, nonsq == sols.size(),
        std::to_string(nonsq) + "/" + std::to_string(sols.size()) + ", zero values " + std::to_string(zeros));

    const auto cc = lemmas::conic_count(t, eps, t.fp(4 * eps));
    add("conic has q+1 points" + tag, cc.projective() == q + 1, std::to_string(cc.projective()));
    add("conic determinant is -8e" + tag, cc.det == t.fp(-8 * eps), std::to_string(cc.det.v));
    const auto chain = lemmas::conic_chain(t, eps, t.fp(eps));
    add("conic parametrization gives the solutions" + tag, chain == sols, std::to_string(chain.size()));

    std::string failed;
    for (const auto& c : ctx.identities) {
      if (!c.ok) failed += (failed.empty() ? "" : "; ") + c.name;
    }
    add("fixture identities" + tag, ctx.all_identities(), failed.empty() ? "all hold" : failed);
    std::string printed;
    for (const auto& c : ctx.printed) printed += (printed.empty() ? "" : "; ") + c.name + (c.ok ? " holds" : " fails");
    add("fixture identities as printed" + tag,
        std::all_of(ctx.printed.begin(), ctx.printed.end(), [](const auto& c) { return c.ok; }), printed);

    const auto gp = lemmas::generators_through_p(s, m.tables, m.cls, ctx);
    add("G1 lines through P meeting the curve" + tag, gp.g1_meeting_curve.size() == half,
        std::to_string(gp.g1_meeting_curve.size()));
    add("realized xi give exactly those lines" + tag, gp.same_generators && gp.realized_xi.size() == half,
        std::to_string(gp.realized_xi.size()) + " realized");
    add("t follows the same fractional-linear map" + tag, gp.t_map_consistent, "");
    add("vt = h(v+t) on every such line" + tag, gp.collinearity, "");
    add("square class of xi^2+8 is constant" + tag, gp.side != 0, "side " + std::to_string(gp.side));
    add("square class of xi^2+8 matches chi~" + tag, gp.matches_chi_tilde,
        "chi=" + std::to_string(ctx.chi) + " chi~=" + std::to_string(ctx.chi_tilde) + " side=" +
            std::to_string(gp.side));
    add("unique G2 line through P meeting the curve is PO" + tag,
        gp.g2_meeting_curve.size() == 1 && gp.g2_meeting_curve[0] == ctx.ell,
        std::to_string(gp.g2_meeting_curve.size()));
    bool det_ok = lemmas::xi_det(t, std::nullopt) == lemmas::xi_det_formula(t, std::nullopt);
    for (std::uint32_t x = 0; x < q; ++x) {
      det_ok = det_ok && lemmas::xi_det(t, ff::Fp{x}) == lemmas::xi_det_formula(t, ff::Fp{x});
    }
    if (eps == 1) add("determinant of the xi map", det_ok, "");
  }

  const std::size_t i = m.g1_orbits.index_of(plus->g0);
  const auto rr = lemmas::count_r_rprime(s, m.tables, *plus, m.g1_orbits.orbits[i], m.g1_orbits.orbits[1 - i]);
  out.r = rr.r;
  out.rprime = rr.rprime;
  const std::uint32_t lo = (q - 1) / 4, hi = (q + 3) / 4;
  add("r + r' = (q+1)/2", rr.r + rr.rprime == half, std::to_string(rr.r) + " + " + std::to_string(rr.rprime));
  add("{r, r'} = {(q-1)/4, (q+3)/4}", (rr.r == lo && rr.rprime == hi) || (rr.r == hi && rr.rprime == lo),
      "r=" + std::to_string(rr.r) + " r'=" + std::to_string(rr.rprime));
  add("n_q = 2r' - 1", out.n_q == 2ull * rr.rprime - 1,
      "n_q=" + std::to_string(out.n_q) + " 2r'-1=" + std::to_string(2 * rr.rprime - 1));
  add("n_q = 2r - 1", out.n_q == 2ull * rr.r - 1,
      "n_q=" + std::to_string(out.n_q) + " 2r-1=" + std::to_string(2 * rr.r - 1));
  add("point counts agree with the condition", out.landau.chain_consistent,
      "N_p=" + std::to_string(out.landau.n_p) + " n_q=" + std::to_string(out.n_q));
  return out;
}

std::string to_json(const LemmaSuite& s) {
  json checks = json::array();
  for (const auto& c : s.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  json j{{"format_version", kFormatVersion},
         {"p", s.p},
         {"r", s.r},
         {"rprime", s.rprime},
         {"n_q", s.n_q},
         {"N_p", s.landau.n_p},
         {"conditionB", s.landau.condition_b},
         {"checks", checks},
         {"all_ok", s.all_ok()}};
  return j.dump(1);
}

}  // namespace hemi::hs
