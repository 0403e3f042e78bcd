// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include "gnse/manifest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gnse/checkpoint.hpp"
#include "gnse/error.hpp"
#include "json.hpp"

namespace gnse {

using nlohmann::json;

void RunManifest::add_artifact(const std::string& path) {
  if (std::find(artifacts.begin(), artifacts.end(), path) == artifacts.end()) artifacts.push_back(path);
}

void RunManifest::set_seed(const SeedStatus& status) {
  for (auto& s : seeds) {
    if (s.seed == status.seed) {
      s = status;
      return;
    }
  }
  seeds.push_back(status);
}

std::string RunManifest::to_json() const {
  json j;
  j["version"] = version;
  j["config"] = config_ini;
  j["seeds"] = json::array();
  for (const auto& s : seeds) j["seeds"].push_back({{"seed", s.seed}, {"status", s.status}, {"error", s.error}});
  j["artifacts"] = artifacts;
  j["commands"] = json::array();
  for (const auto& c : commands) j["commands"].push_back({{"command", c.command}, {"wall_seconds", c.wall_seconds}});
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  RunManifest m;
  try {
    const json j = json::parse(text);
    m.version = j.value("version", std::string(kVersion));
    m.config_ini = j.value("config", std::string());
    for (const auto& s : j.value("seeds", json::array()))
      m.seeds.push_back({s.at("seed").get<std::uint64_t>(), s.at("status").get<std::string>(),
                         s.value("error", std::string())});
    m.artifacts = j.value("artifacts", std::vector<std::string>{});
    for (const auto& c : j.value("commands", json::array()))
      m.commands.push_back({c.at("command").get<std::string>(), c.at("wall_seconds").get<double>()});
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kIo, std::string("malformed manifest: ") + e.what());
  }
  return m;
}

RunManifest RunManifest::load(const std::string& dir) {
  const std::filesystem::path path = std::filesystem::path(dir) / "manifest.json";
  if (!std::filesystem::exists(path)) return {};
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return from_json(os.str());
}

void RunManifest::save(const std::string& dir) const {
  for (const auto& a : artifacts)
    if (!std::filesystem::exists(std::filesystem::path(dir) / a))
      throw Error(ErrorKind::kIo, "manifest names missing artifact '" + a + "'");
  write_file_atomic((std::filesystem::path(dir) / "manifest.json").string(), to_json());
}

}  // namespace gnse
