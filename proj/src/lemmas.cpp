// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hemi/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

namespace hemi::lemmas {

using ff::E2;

void require_case_iii(std::uint32_t p) {
  if (p % 8 != 5) {
    throw PreconditionError("the P = (2e, h, 0) lemma suite needs p = 5 (mod 8); got p = " + std::to_string(p));
  }
}

bool CaseIIIContext::all_identities() const {
  return std::all_of(identities.begin(), identities.end(), [](const NamedCheck& c) { return c.ok; });
}

namespace {

std::uint32_t half(const Tower& t) { return (t.p() + 1) / 2; }

bool solves(const Tower& t, const Fq2& v, int rhs_sign) {
  const Fq2 lhs = t.pow(t.add(t.mul(v, v), t.mul(t.add(t.h(), t.h()), v)), half(t));
  const Fq2 rhs = t.mul(t.q2(2 * rhs_sign), t.sub(t.frob(v), v));
  return lhs == rhs;
}

std::vector<Fq2> solutions(const Tower& t, int rhs_sign) {
  std::vector<Fq2> out;
  for (std::uint32_t c = 0; c < t.q2_size(); ++c) {
    const Fq2 v = t.from_code(c);
    if (!t.in_base(v) && solves(t, v, rhs_sign)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Point on the generator with the given membership list, if any.
std::optional<PointId> meet(const Surface& s, LineId l, const std::vector<PointId>& sorted) {
  std::optional<PointId> hit;
  s.for_each_point(l, [&](PointId p) {
    if (std::binary_search(sorted.begin(), sorted.end(), p)) hit = p;
  });
  return hit;
}

}  // namespace

CaseIIIContext make_context(const Surface& s, int epsilon) {
  const Tower& t = s.tower();
  require_case_iii(t.p());
  CaseIIIContext c;
  c.epsilon = epsilon;
  c.h = t.h();
  c.alpha = t.alpha();
  const E2 h(t, c.h);
  const E2 w = (2 + h).pow(half(t));
  if (w == h) {
    c.chi = epsilon == 1 ? -1 : 1;
  } else if (w == -h) {
    c.chi = epsilon == 1 ? 1 : -1;
  } else {
    throw TheoremViolation("(2+h)^((q+1)/2) is neither h nor -h");
  }
  const bool even = ((t.p() + 3) / 8) % 2 == 0;
  const int ce = c.chi * epsilon;
  c.chi_tilde = ((ce == 1 && !even) || (ce == -1 && even)) ? 1 : -1;

  const int chi = c.chi;
  const E2 v0 = -2 * (h - 2 * chi);
  const E2 u0 = 4 * epsilon * (2 - h * chi);
  const E2 t0 = -2 * (h + 2 * chi);
  const E2 s0 = 4 * epsilon * (2 + h * chi);
  c.v0 = v0.value();
  c.u0 = u0.value();
  c.t0 = t0.value();
  c.s0 = s0.value();
  const std::uint32_t hq = half(t);
  const std::uint64_t q = t.p();
  auto add = [&](std::string name, bool ok) { c.identities.push_back({std::move(name), ok}); };
  add("h = -e(2+chi h)^((q+1)/2)", h == -epsilon * (2 + chi * h).pow(hq));
  add("v0^q - v0 = 4h", (v0.frob() - v0) == 4 * h);
  add("u0^((q+1)/2) = 4h", u0.pow(hq) == 4 * h);
  add("u0^q s0 = 16(2 + h chi)^2", (u0.frob() * s0) == 16 * (2 + h * chi).pow(2));
  add("(t0 - v0^q)^2 = u0^q s0", (t0 - v0.frob()).pow(2) == u0.frob() * s0);
  add("(v0+t0)^(q+1) = -32", (v0 + t0).pow(q + 1) == -32);
  add("2(t0 v0 + (t0 v0)^q) = -32", 2 * (t0 * v0 + (t0 * v0).frob()) == -32);
  add("-s0^((q+1)/2) = t0^q - t0", -s0.pow(hq) == t0.frob() - t0);
  add("u0 = (v0^2 + 2h v0)/(2e)", u0 == (v0 * v0 + 2 * h * v0) / (2 * epsilon));
  add("s0 = (t0^2 + 2h t0)/(2e)", s0 == (t0 * t0 + 2 * h * t0) / (2 * epsilon));

  c.printed.push_back({"h = e(2+chi h)^((q+1)/2)", h == epsilon * (2 + chi * h).pow(hq)});
  c.printed.push_back({"u0^q s0 = 16(2 - h chi)^2", (u0.frob() * s0) == 16 * (2 - h * chi).pow(2)});

  c.P = geom::affine_lift(t.q2(2 * epsilon), c.h, Fq2{});
  c.p_id = s.point_id(c.P);
  const auto g0 = curve::g1_witness(s, c.v0, c.t0, c.u0, c.s0);
  if (!g0) throw TheoremViolation("(v0, t0, u0, s0) does not give a generator");
  c.g0 = *g0;
  const auto thr = s.generators_through(c.p_id);
  add("g0 passes through P", std::find(thr.begin(), thr.end(), c.g0) != thr.end());
  c.ell = s.generator_id(c.P, {t.q2(1), Fq2{}, Fq2{}, Fq2{}});
  return c;
}

std::vector<Fq2> solve_eq_v(const Tower& t, int epsilon) {
  require_case_iii(t.p());
  auto out = solutions(t, epsilon);
  if (out.size() != half(t)) {
    throw TheoremViolation("equation in v has " + std::to_string(out.size()) + " solutions, expected (q+1)/2");
  }
  return out;
}

std::vector<Fq2> tangent_solutions(const Tower& t, int epsilon) {
  require_case_iii(t.p());
  return solutions(t, -epsilon);
}

ConicCount conic_count(const Tower& t, int epsilon, Fp constant) {
  require_case_iii(t.p());
  const Fp al = t.alpha().a0;
  const Fp e = t.fp(epsilon);
  auto form = [&](Fp l1, Fp l2, Fp z) {
    Fp r = t.mul(al, t.mul(l1, l1));
    r = t.sub(r, t.mul(t.fp(2), t.mul(al, t.mul(l2, l2))));
    r = t.sub(r, t.mul(t.fp(4), t.mul(e, t.mul(l1, l2))));
    return t.add(r, t.mul(constant, t.mul(z, z)));
  };
  ConicCount c;
  for (std::uint32_t a = 0; a < t.p(); ++a)
    for (std::uint32_t b = 0; b < t.p(); ++b) c.affine += form(Fp{a}, Fp{b}, Fp{1}).v == 0;
  // Z = 0: (λ1 : 1) or (1 : 0).
  for (std::uint32_t a = 0; a < t.p(); ++a) c.at_infinity += form(Fp{a}, Fp{1}, Fp{0}).v == 0;
  c.at_infinity += form(Fp{1}, Fp{0}, Fp{0}).v == 0;
  // det [[α, −2ε, 0], [−2ε, −2α, 0], [0, 0, c]]
  const Fp m = t.sub(t.mul(al, t.mul(t.fp(-2), al)), t.mul(t.fp(-2 * epsilon), t.fp(-2 * epsilon)));
  c.det = t.mul(m, constant);
  return c;
}

std::vector<Fq2> conic_chain(const Tower& t, int epsilon, Fp constant) {
  require_case_iii(t.p());
  const Fp al = t.alpha().a0;
  const Fp e = t.fp(epsilon);
  const E2 h(t, t.h());
  std::set<Fq2> vs;
  for (std::uint32_t a = 0; a < t.p(); ++a) {
    for (std::uint32_t b = 0; b < t.p(); ++b) {
      const Fp l1{a}, l2{b};
      Fp r = t.sub(t.mul(al, t.mul(l1, l1)), t.mul(t.fp(2), t.mul(al, t.mul(l2, l2))));
      r = t.add(t.sub(r, t.mul(t.fp(4), t.mul(e, t.mul(l1, l2)))), constant);
      if (r.v != 0) continue;
      const E2 lam = E2(t, t.q2(l1)) + h * E2(t, t.q2(l2));
      const E2 d = h * lam * lam - 1;
      if (d.is_zero()) continue;
      vs.insert((h * 2 / d).value());
    }
  }
  return {vs.begin(), vs.end()};
}

int nonsquare_symbol(const Tower& t, const Fq2& v, int epsilon) {
  require_case_iii(t.p());
  if (t.in_base(v) || !solves(t, v, epsilon)) throw DomainError("v is not a solution of the equation in v");
  // v = v1 + h v2 with h = c·t.
  const Fp v1 = v.a0;
  const Fp v2 = t.mul(v.a1, t.inv(t.h().a1));
  const Fp al = t.alpha().a0;
  const Fp x = t.add(t.mul(t.fp(epsilon), v2), t.mul(t.mul(al, t.inv(Fp{2})), t.add(t.mul(v1, v2), v1)));
  return t.legendre(x);
}

bool nonsquare_condition(const Tower& t, const Fq2& v, int epsilon) { return nonsquare_symbol(t, v, epsilon) != 1; }

Fq2 xi_map(const Tower& t, const Xi& xi, const Fq2& base) {
  if (t.is_zero(xi_det(t, xi))) throw DomainError("fractional-linear map degenerates at this xi");
  const E2 b(t, base);
  if (!xi) return (-8 / b).value();
  const E2 x(t, t.q2(*xi));
  const E2 x2 = x * x;
  const E2 den = (x / 8) * (24 - x2) * b + 8 - 3 * x2;
  if (den.is_zero()) throw DomainError("v_xi is at infinity");
  return (((x2 + 8) * b + (x2 + 8) * x) / den).value();
}

Fp xi_det(const Tower& t, const Xi& xi) {
  if (!xi) return t.sub(t.mul(Fp{0}, Fp{0}), t.mul(Fp{1}, t.neg(t.inv(t.fp(8)))));
  const Fp x = *xi;
  const Fp x2 = t.mul(x, x);
  const Fp a = t.add(x2, t.fp(8));
  const Fp b = t.mul(a, x);
  const Fp c = t.mul(t.mul(x, t.inv(t.fp(8))), t.sub(t.fp(24), x2));
  const Fp d = t.sub(t.fp(8), t.mul(t.fp(3), x2));
  return t.sub(t.mul(a, d), t.mul(b, c));
}

Fp xi_det_formula(const Tower& t, const Xi& xi) {
  if (!xi) return t.inv(t.fp(8));
  const Fp x2 = t.mul(*xi, *xi);
  const Fp f = t.add(t.sub(t.mul(x2, x2), t.mul(t.fp(48), x2)), t.fp(64));
  return t.mul(t.mul(t.add(x2, t.fp(8)), f), t.inv(t.fp(8)));
}

SigmaPartition sigma_partition(const Tower& t) {
  SigmaPartition sp;
  for (std::uint32_t x = 0; x < t.p(); ++x) {
    const Fp v = t.add(t.mul(Fp{x}, Fp{x}), t.fp(8));
    (t.legendre(v) == 1 ? sp.sigma1 : sp.sigma2).push_back(Fp{x});
  }
  return sp;
}

GeneratorsThroughP generators_through_p(const Surface& s, const curve::CurveTables& ct,
                                        const curve::Classification& cls, const CaseIIIContext& ctx) {
  const Tower& t = s.tower();
  GeneratorsThroughP out;
  for (auto l : s.generators_through(ctx.p_id)) {
    if (cls.cls[l] == curve::GenClass::g1) out.g1_meeting_curve.push_back(l);
    if (cls.cls[l] == curve::GenClass::g2) out.g2_meeting_curve.push_back(l);
  }
  std::sort(out.g1_meeting_curve.begin(), out.g1_meeting_curve.end());

  const auto tangent = tangent_solutions(t, ctx.epsilon);
  const auto sp = sigma_partition(t);
  std::vector<Xi> all{std::nullopt};
  for (std::uint32_t x = 0; x < t.p(); ++x) all.push_back(Fp{x});
  std::vector<LineId> gxi;
  bool in1 = false, in2 = false;
  out.t_map_consistent = true;
  const E2 h(t, ctx.h);
  for (const auto& xi : all) {
    const Fq2 v = xi_map(t, xi, ctx.v0);
    if (!std::binary_search(tangent.begin(), tangent.end(), v)) continue;
    out.realized_xi.push_back(xi);
    const bool side1 = !xi || std::binary_search(sp.sigma1.begin(), sp.sigma1.end(), *xi);
    (side1 ? in1 : in2) = true;
    const E2 ve(t, v);
    const Fq2 u = ((ve * ve + 2 * h * ve) / (2 * ctx.epsilon)).value();
    const LineId g = s.generator_id(ctx.P, {t.q2(1), u, v, t.mul(v, v)});
    gxi.push_back(g);
    const auto q = meet(s, g, ct.delta_minus);
    if (!q || s.point(*q)[2] != xi_map(t, xi, ctx.t0)) out.t_map_consistent = false;
  }
  out.side = in1 && !in2 ? 1 : (in2 && !in1 ? -1 : 0);
  out.matches_chi_tilde = out.side == ctx.chi_tilde;
  std::sort(gxi.begin(), gxi.end());
  out.same_generators = gxi == out.g1_meeting_curve;

  out.collinearity = true;
  for (auto l : out.g1_meeting_curve) {
    const auto a = meet(s, l, ct.delta_plus);
    const auto b = meet(s, l, ct.delta_minus);
    if (!a || !b) {
      out.collinearity = false;
      continue;
    }
    const E2 v(t, s.point(*a)[2]);
    const E2 tt(t, s.point(*b)[2]);
    if (!(v * tt - h * (v + tt)).is_zero()) out.collinearity = false;
  }
  return out;
}

RCounts count_r_rprime(const Surface& s, const curve::CurveTables& ct, const CaseIIIContext& plus,
                       const std::vector<LineId>& m1, const std::vector<LineId>& m1_prime) {
  RCounts r;
  for (auto l : s.generators_through(plus.p_id)) {
    if (!meet(s, l, ct.delta_plus)) continue;
    if (std::binary_search(m1.begin(), m1.end(), l)) ++r.r;
    if (std::binary_search(m1_prime.begin(), m1_prime.end(), l)) ++r.rprime;
  }
  return r;
}

namespace {

std::vector<int> legendre_table(std::uint32_t p) {
  std::vector<int> leg(p, -1);
  leg[0] = 0;
  for (std::uint64_t x = 1; x < p; ++x) leg[x * x % p] = 1;
  return leg;
}

std::uint64_t quartic_value(std::uint64_t x, std::uint64_t p) {
  const std::uint64_t x2 = x * x % p;
  return (x2 * x2 % p + 48 * (p - x2) % p + 64) % p;
}

}  // namespace

std::uint64_t elliptic_count(std::uint32_t p) {
  const auto leg = legendre_table(p);
  std::uint64_t n = 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t r = (x * x % p * x % p + p - x) % p;
    n += 1 + leg[r];
  }
  return n;
}

std::uint64_t quartic_square_count(std::uint32_t p) {
  const auto leg = legendre_table(p);
  std::uint64_t n = 0;
  for (std::uint64_t x = 0; x < p; ++x) n += leg[quartic_value(x, p)] >= 0;
  return n;
}

std::uint64_t quartic_curve_count(std::uint32_t p) {
  // Two points at infinity: the leading coefficient 1 is a square.
  const auto leg = legendre_table(p);
  std::uint64_t n = 2;
  for (std::uint64_t x = 0; x < p; ++x) n += 1 + leg[quartic_value(x, p)];
  return n;
}

std::optional<std::uint64_t> landau_a(std::uint64_t p) {
  if (p < 5 || (p - 1) % 4 != 0) return std::nullopt;
  const std::uint64_t m = (p - 1) / 4;
  auto a = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(m)));
  while (a * a > m) --a;
  while ((a + 1) * (a + 1) <= m) ++a;
  if (a * a == m) return a;
  return std::nullopt;
}

LandauRecord landau_record(std::uint32_t p) {
  LandauRecord r;
  r.p = p;
  r.a = landau_a(p);
  r.p_mod_8 = p % 8;
  r.n_p = elliptic_count(p);
  r.n_q = quartic_square_count(p);
  r.quartic_curve = quartic_curve_count(p);
  r.condition_b = r.n_p + 1 == p || r.n_p == p + 3;
  const bool nq_test = 2 * r.n_q == p + 1 || 2 * r.n_q + 3 == p;
  r.chain_consistent = r.condition_b == nq_test;
  return r;
}

std::vector<LandauRecord> landau_scan(std::uint32_t bound, unsigned workers) {
  std::vector<std::uint32_t> primes;
  for (std::uint32_t p = 5; p <= bound; p += 8) {
    if (ff::is_prime(p)) primes.push_back(p);
  }
  std::vector<LandauRecord> out(primes.size());
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(primes.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < primes.size(); i += workers) out[i] = landau_record(primes[i]);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

std::string landau_csv(const std::vector<LandauRecord>& records) {
  std::ostringstream os;
  os << "p,a,p_mod_8,N_p,n_q,conditionB\n";
  for (const auto& r : records) {
    os << r.p << ',';
    if (r.a) os << *r.a;
    os << ',' << r.p_mod_8 << ',' << r.n_p << ',' << r.n_q << ',' << (r.condition_b ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace hemi::lemmas
