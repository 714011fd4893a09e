// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

/// Versioned on-disk cache of per-generator labels (class and 𝔥-orbit).
namespace hemi::cache {

inline constexpr std::uint32_t kVersion = 1;
inline constexpr const char* kEnvVar = "HEMISYS_CACHE_DIR";

struct Labels {
  std::uint32_t p = 0;
  std::vector<std::uint8_t> cls;    // curve::GenClass per generator
  std::vector<std::uint8_t> orbit;  // 0 or 1 on G1 and G2, 255 elsewhere
};

/// The explicit directory if non-empty, else $HEMISYS_CACHE_DIR, else none.
std::optional<std::filesystem::path> resolve_dir(const std::string& explicit_dir);
std::filesystem::path file_for(const std::filesystem::path& dir, std::uint32_t p);

/// Returns none if the file is missing, has another version, or is inconsistent.
std::optional<Labels> load(const std::filesystem::path& dir, std::uint32_t p, std::uint32_t num_generators);
/// Writes atomically through a temporary file. Throws ConfigError on I/O failure.
void store(const std::filesystem::path& dir, const Labels& labels);

}  // namespace hemi::cache
