// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(HEMISYS_BIN) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("hemisys-cli-" + std::to_string(std::random_device{}()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("bogus").code == 2);
  CHECK(run("construct").code == 2);
  CHECK(run("construct --p five").code == 2);
  CHECK(run("landau --max 10 --format xml").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("landau") {
  const auto r = run("landau --max 200");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("p,a,p_mod_8,N_p,n_q,conditionB\n", 0) == 0);
  CHECK(r.out.find("5,1,5,8,1,true") != std::string::npos);
  CHECK(r.out.find("197,7,5,200,97,true") != std::string::npos);
  const auto empty = run("landau --max 3");
  CHECK(empty.code == 0);
  CHECK(empty.out == "p,a,p_mod_8,N_p,n_q,conditionB\n");
  const auto js = run("landau --max 40 --format json");
  CHECK(js.code == 0);
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j.size() == 4);
  CHECK(j[3]["p"] == 37);
  CHECK(j[3]["conditionB"] == true);
}

TEST_CASE("construct and verify") {
  const auto out = scratch() / "p5";
  const auto r = run("construct --p 5 --workers 2 --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("lines=378") != std::string::npos);
  CHECK(r.out.find("verified=true") != std::string::npos);
  const auto cert = out / "hemisystem-p5.json";
  REQUIRE(fs::exists(cert));
  REQUIRE(fs::exists(out / "hemisystem-p5-lines.csv"));
  const auto j = nlohmann::json::parse(slurp(cert));
  CHECK(j["lines"].size() == 378);
  CHECK(j["verified"] == true);
  const auto csv = slurp(out / "hemisystem-p5-lines.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 379);

  const auto v = run("verify --cert " + cert.string());
  CHECK(v.code == 0);
  CHECK(v.out.find("verified=true") != std::string::npos);

  auto bad = j;
  bad["lines"][0] = bad["lines"][1];
  std::ofstream(out / "bad.json") << bad.dump();
  CHECK(run("verify --cert " + (out / "bad.json").string()).code == 1);

  auto wrong_version = j;
  wrong_version["format_version"] = 99;
  std::ofstream(out / "v99.json") << wrong_version.dump();
  CHECK(run("verify --cert " + (out / "v99.json").string()).code == 2);
  std::ofstream(out / "junk.json") << "{";
  CHECK(run("verify --cert " + (out / "junk.json").string()).code == 2);
  CHECK(run("verify --cert " + (out / "missing.json").string()).code == 2);
}

TEST_CASE("gate") {
  const auto r = run("construct --p 13");
  CHECK(r.code == 2);
  CHECK(r.out.find("\"p\":13") != std::string::npos);
  CHECK(run("construct --p 17").code == 2);
  CHECK(run("construct --p 9").code == 2);
  CHECK(run("construct --p 13 --experimental --out " + (scratch() / "p13").string()).code == 1);
  CHECK(run("lemmas --p 17").code == 2);
  const auto big = run("code --p 37");
  CHECK(big.code == 2);
  CHECK(big.out.find("work limit") != std::string::npos);
}

TEST_CASE("cache directory from the environment") {
  const auto dir = scratch() / "cache";
  const std::string env = "HEMISYS_CACHE_DIR=" + dir.string() + " ";
  const std::string cmd = env + HEMISYS_BIN + " construct --p 5 --out " + (scratch() / "c").string() + " >/dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "labels-p5-v1.bin"));
  const auto explicit_dir = scratch() / "cache2";
  CHECK(run("construct --p 5 --cache-dir " + explicit_dir.string() + " --out " + (scratch() / "c").string()).code ==
        0);
  CHECK(fs::exists(explicit_dir / "labels-p5-v1.bin"));
}

TEST_CASE("srg, code and lemmas") {
  const auto out = scratch() / "more";
  const auto s = run("srg --p 5 --out " + out.string());
  CHECK(s.code == 0);
  CHECK(s.out.find("srg(378,52,1,8)") != std::string::npos);
  CHECK(fs::exists(out / "srg-p5.json"));
  CHECK(fs::exists(out / "srg-p5-edges.csv"));

  const auto c = run("code --p 5 --workers 2 --out " + out.string());
  CHECK(c.code == 0);
  CHECK(c.out.find("quadric zeros=756") != std::string::npos);
  CHECK(c.out.find("weights={300,325}") != std::string::npos);
  const auto cj = nlohmann::json::parse(slurp(out / "code-p5.json"));
  CHECK(cj["intersection_histogram"]["53"] == 378);
  CHECK(cj["intersection_histogram"]["78"] == 3528);
  CHECK(cj["cayley"]["lambda"] == 55);

  const auto l = run("lemmas --p 5 --out " + out.string());
  CHECK(l.out.find("r=1 r'=2 n_q=1") != std::string::npos);
  CHECK(l.code == (l.out.find("FAIL") == std::string::npos ? 0 : 1));
  CHECK(fs::exists(out / "lemmas-p5.json"));
  fs::remove_all(scratch());
}
