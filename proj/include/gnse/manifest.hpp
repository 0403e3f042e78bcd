// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gnse {

inline constexpr const char* kVersion = "0.1.0";

struct SeedStatus {
  std::uint64_t seed = 0;
  std::string status;  // "ok" or "failed"
  std::string error;
};

struct CommandRecord {
  std::string command;
  double wall_seconds = 0.0;
};

/// manifest.json in the output directory. Each command merges its entries
/// into the existing manifest and rewrites it atomically.
struct RunManifest {
  std::string config_ini;
  std::string version = kVersion;
  std::vector<SeedStatus> seeds;
  /// Paths relative to the manifest directory.
  std::vector<std::string> artifacts;
  std::vector<CommandRecord> commands;

  void add_artifact(const std::string& path);
  void set_seed(const SeedStatus& status);

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);

  /// Loads `dir/manifest.json` or returns an empty manifest.
  static RunManifest load(const std::string& dir);
  /// Throws kIo if a listed artifact is missing, then writes atomically.
  void save(const std::string& dir) const;
};

}  // namespace gnse
