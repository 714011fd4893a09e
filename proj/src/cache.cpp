// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hemi/cache.hpp"

#include <cstdlib>
#include <fstream>

#include "hemi/error.hpp"

namespace hemi::cache {

namespace {

constexpr char kMagic[8] = {'H', 'E', 'M', 'I', 'L', 'B', 'L', '\0'};

std::uint64_t checksum(const Labels& l) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint8_t b) {
    h ^= b;
    h *= 1099511628211ull;
  };
  for (auto b : l.cls) mix(b);
  for (auto b : l.orbit) mix(b);
  return h;
}

}  // namespace

std::optional<std::filesystem::path> resolve_dir(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return std::filesystem::path(explicit_dir);
  if (const char* env = std::getenv(kEnvVar); env != nullptr && *env != '\0') return std::filesystem::path(env);
  return std::nullopt;
}

std::filesystem::path file_for(const std::filesystem::path& dir, std::uint32_t p) {
  return dir / ("labels-p" + std::to_string(p) + "-v" + std::to_string(kVersion) + ".bin");
}

std::optional<Labels> load(const std::filesystem::path& dir, std::uint32_t p, std::uint32_t num_generators) {
  std::ifstream in(file_for(dir, p), std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  std::uint32_t version = 0, fp = 0, n = 0;
  std::uint64_t sum = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&fp), sizeof fp);
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  in.read(reinterpret_cast<char*>(&sum), sizeof sum);
  if (!in || std::string(magic, 8) != std::string(kMagic, 8) || version != kVersion || fp != p || n != num_generators) {
    return std::nullopt;
  }
  Labels l;
  l.p = p;
  l.cls.resize(n);
  l.orbit.resize(n);
  in.read(reinterpret_cast<char*>(l.cls.data()), n);
  in.read(reinterpret_cast<char*>(l.orbit.data()), n);
  if (!in || checksum(l) != sum) return std::nullopt;
  return l;
}

void store(const std::filesystem::path& dir, const Labels& l) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto target = file_for(dir, l.p);
  const auto tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    const std::uint32_t version = kVersion, n = static_cast<std::uint32_t>(l.cls.size());
    const std::uint64_t sum = checksum(l);
    out.write(kMagic, sizeof kMagic);
    out.write(reinterpret_cast<const char*>(&version), sizeof version);
    out.write(reinterpret_cast<const char*>(&l.p), sizeof l.p);
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(&sum), sizeof sum);
    out.write(reinterpret_cast<const char*>(l.cls.data()), n);
    out.write(reinterpret_cast<const char*>(l.orbit.data()), n);
    if (!out) throw ConfigError("cannot write cache file " + tmp);
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw ConfigError("cannot move cache file into place: " + ec.message());
}

}  // namespace hemi::cache
