// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "hemi/cache.hpp"
#include "hemi/codes.hpp"
#include "hemi/graphs.hpp"
#include "hemi/hemisystem.hpp"
#include "hemi/lemmas.hpp"
#include "hemi/parallel.hpp"

namespace {

namespace fs = std::filesystem;
using namespace hemi;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kPrecondition = 2;

struct Common {
  unsigned workers = default_workers();
  std::string cache_dir;
  std::string out = ".";
  bool experimental = false;
};

void write_file(const fs::path& dir, const std::string& name, const std::string& body) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream f(dir / name, std::ios::trunc);
  f << body;
  if (!f) throw ConfigError("cannot write " + (dir / name).string());
}

std::string record_json(const lemmas::LandauRecord& r) {
  nlohmann::json j{{"p", r.p},
                   {"a", r.a ? nlohmann::json(*r.a) : nlohmann::json(nullptr)},
                   {"p_mod_8", r.p_mod_8},
                   {"N_p", r.n_p},
                   {"n_q", r.n_q},
                   {"conditionB", r.condition_b}};
  return j.dump();
}

hs::ModelOptions model_options(const Common& c) {
  hs::ModelOptions o;
  o.workers = c.workers;
  o.cache_dir = cache::resolve_dir(c.cache_dir);
  return o;
}

int cmd_landau(std::uint32_t max, const std::string& format, const Common& c, bool to_file) {
  const auto recs = lemmas::landau_scan(max, c.workers);
  std::string body;
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : recs) arr.push_back(nlohmann::json::parse(record_json(r)));
    body = arr.dump(1) + "\n";
  } else {
    body = lemmas::landau_csv(recs);
  }
  if (to_file) {
    write_file(c.out, "landau." + format, body);
  } else {
    std::cout << body;
  }
  return kOk;
}

int cmd_construct(std::uint32_t p, const Common& c) {
  hs::require_landau(p, c.experimental);
  const hs::Model m(p, model_options(c));
  const auto cert = hs::assemble(m);
  const std::string stem = "hemisystem-p" + std::to_string(p);
  write_file(c.out, stem + ".json", hs::to_json(cert));
  write_file(c.out, stem + "-lines.csv", hs::lines_csv(m.surface, cert.lines));
  std::cout << "p=" << p << " lines=" << cert.lines.size() << " M1=" << cert.m1_size << " M2=" << cert.m2_size
            << " H=" << cert.chord_size << " histogram=[" << cert.histogram.min << "," << cert.histogram.max
            << "] ell=" << cert.ell_choice;
  if (cert.r) std::cout << " r=" << *cert.r << " r'=" << *cert.rprime;
  std::cout << " digest=" << cert.digest << " verified=" << (cert.verified ? "true" : "false") << "\n";
  if (!cert.verified) std::cerr << "verification failed: " << cert.failure << "\n";
  return cert.verified ? kOk : kFailed;
}

int cmd_verify(const std::string& path, const Common& c) {
  std::ifstream f(path);
  if (!f) throw PreconditionError("cannot read certificate " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  const auto cert = hs::from_json(ss.str());
  const auto check = hs::recheck(cert, c.workers);
  std::cout << "p=" << cert.p << " lines=" << cert.lines.size() << " size=" << (check.size_ok ? "ok" : "bad")
            << " digest=" << (check.digest_ok ? "ok" : "bad") << " histogram=[" << check.histogram.min << ","
            << check.histogram.max << "] verified=" << (check.ok() ? "true" : "false") << "\n";
  return check.ok() ? kOk : kFailed;
}

int cmd_srg(std::uint32_t p, const Common& c) {
  hs::require_landau(p, c.experimental);
  const hs::Model m(p, model_options(c));
  const auto cert = hs::assemble(m);
  if (!cert.verified) {
    std::cerr << "hemisystem not verified: " << cert.failure << "\n";
    return kFailed;
  }
  const auto g = graphs::build_thas_graph(cert, m.surface);
  const auto rep = graphs::verify_srg(g.graph, c.workers);
  const std::string stem = "srg-p" + std::to_string(p);
  write_file(c.out, stem + ".json", graphs::params_json(rep));
  write_file(c.out, stem + "-edges.csv", graphs::edges_csv(g));
  const auto& pr = rep.params;
  std::cout << "srg(" << pr.v << "," << pr.k << "," << pr.lambda << "," << pr.mu << ")";
  if (rep.spec) {
    std::cout << " spectrum " << pr.k << ", " << rep.spec->theta1 << "^" << rep.spec->m1 << ", " << rep.spec->theta2
              << "^" << rep.spec->m2;
  }
  std::cout << " verified=" << (rep.ok() ? "true" : "false") << "\n";
  return rep.ok() ? kOk : kFailed;
}

int cmd_code(std::uint32_t p, const Common& c) {
  hs::require_landau(p, c.experimental);
  const std::uint64_t n = (std::uint64_t{p} + 1) * (std::uint64_t{p} * p * p + 1) / 2;
  if (geom::ProjectiveSpace5(p).size() * n > codes::kDefaultWorkLimit) {
    throw ResourceLimitError("hyperplane scan over " + std::to_string(n) + " points exceeds the work limit");
  }
  const hs::Model m(p, model_options(c));
  const auto cert = hs::assemble(m);
  if (!cert.verified) {
    std::cerr << "hemisystem not verified: " << cert.failure << "\n";
    return kFailed;
  }
  const auto& t = m.tower;
  const std::uint64_t q = p;
  const auto k = codes::klein_images(m.surface);
  const auto fit = codes::fit_quadric(t, k.points);
  const auto ovoid = codes::select(k, cert.lines);
  const auto ic = codes::two_intersection(t, ovoid, c.workers);
  const std::uint64_t h1 = (q * q + 1) * (q + 1) / 2, h2 = (q * q * q - q * q + q + 1) / 2;
  const auto wd = codes::weight_distribution(t, ovoid, c.workers);
  const auto weights = wd.nonzero_weights();
  const graphs::CayleyGraph cg(p, codes::omega_from_set(t, ovoid));
  const auto cr = graphs::verify_cayley(cg, c.workers);

  const std::string stem = "code-p" + std::to_string(p);
  write_file(c.out, stem + "-ovoid.csv", codes::points_csv(ovoid));
  write_file(c.out, stem + "-generator.csv", codes::generator_matrix_csv(ovoid));
  write_file(c.out, stem + "-weights.json", codes::weights_json(wd));
  nlohmann::json hist = nlohmann::json::object();
  for (auto [size, count] : ic.histogram) hist[std::to_string(size)] = count;
  const bool ok = ic.two_valued(h1, h2) && weights.size() == 2 && codes::pless_moment0(wd) &&
                  codes::pless_moment1(wd) && cr.ok();
  nlohmann::json rep{{"format_version", hs::kFormatVersion},
                     {"p", p},
                     {"quadric_zeros", fit.zeros},
                     {"n", ovoid.size()},
                     {"intersection_histogram", hist},
                     {"weights", weights},
                     {"cayley", nlohmann::json::parse(graphs::params_json(cr))},
                     {"verified", ok}};
  write_file(c.out, stem + ".json", rep.dump(1));
  std::cout << "quadric zeros=" << fit.zeros << " set=(" << ovoid.size() << ",6";
  for (auto [size, count] : ic.histogram) std::cout << "," << size;
  std::cout << ") weights={";
  for (std::size_t i = 0; i < weights.size(); ++i) std::cout << (i ? "," : "") << weights[i];
  std::cout << "} cayley=srg(" << cr.params.v << "," << cr.params.k << "," << cr.params.lambda << ","
            << cr.params.mu << ") verified=" << (ok ? "true" : "false") << "\n";
  return ok ? kOk : kFailed;
}

int cmd_lemmas(std::uint32_t p, const Common& c) {
  if (p < 5 || !ff::is_prime(p)) throw PreconditionError("p = " + std::to_string(p) + " is not an odd prime >= 5");
  lemmas::require_case_iii(p);
  const hs::Model m(p, model_options(c));
  const auto suite = hs::lemma_suite(m);
  write_file(c.out, "lemmas-p" + std::to_string(p) + ".json", hs::to_json(suite));
  for (const auto& chk : suite.checks) {
    std::cout << (chk.ok ? "PASS " : "FAIL ") << chk.name;
    if (!chk.detail.empty()) std::cout << " [" << chk.detail << "]";
    std::cout << "\n";
  }
  std::cout << "r=" << suite.r << " r'=" << suite.rprime << " n_q=" << suite.n_q << "\n";
  return suite.all_ok() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and certify hemisystems of the Hermitian surface H(3,p^2)"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("--workers", common.workers, "parallel workers")->check(CLI::PositiveNumber);
    sub->add_option("--cache-dir", common.cache_dir, "label cache directory (default $HEMISYS_CACHE_DIR)");
    sub->add_option("--out", common.out, "output directory");
  };

  std::uint32_t max = 0;
  std::string format = "csv";
  bool landau_file = false;
  auto* landau = app.add_subcommand("landau", "tabulate the point-count condition for p = 5 (mod 8)");
  landau->add_option("--max", max, "largest prime to scan")->required();
  landau->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  landau->add_flag("--to-file", landau_file, "write to --out instead of stdout");
  add_common(landau);

  std::uint32_t p = 0;
  std::string cert_path;
  auto* construct = app.add_subcommand("construct", "build and certify the hemisystem");
  auto* verify = app.add_subcommand("verify", "re-verify a certificate file");
  auto* srg = app.add_subcommand("srg", "strongly regular graph on the generators off the hemisystem");
  auto* code = app.add_subcommand("code", "ovoid, two-intersection set, two-weight code and Cayley graph");
  auto* lem = app.add_subcommand("lemmas", "checks at the point P = (1, 2e, h, 0)");
  for (auto* sub : {construct, srg, code, lem}) {
    sub->add_option("--p", p, "prime")->required();
    add_common(sub);
  }
  for (auto* sub : {construct, srg, code}) sub->add_flag("--experimental", common.experimental, "skip the Landau gate");
  verify->add_option("--cert", cert_path, "certificate JSON")->required();
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kPrecondition;
  }

  try {
    if (*landau) return cmd_landau(max, format, common, landau_file);
    if (*construct) return cmd_construct(p, common);
    if (*verify) return cmd_verify(cert_path, common);
    if (*srg) return cmd_srg(p, common);
    if (*code) return cmd_code(p, common);
    if (*lem) return cmd_lemmas(p, common);
  } catch (const hs::LandauGateError& e) {
    std::cerr << "precondition: " << e.what() << "\n" << record_json(e.record()) << "\n";
    return kPrecondition;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ConfigError& e) {
    std::cerr << "configuration: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kFailed;
  }
  return kPrecondition;
}
