// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gnse/config.hpp"

namespace gnse::cli {

struct Options {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::uint64_t member = 0;
  int jobs = 1;
  std::optional<std::string> out;
  std::optional<std::string> resume;
  std::vector<std::string> inputs;
};

/// --out, then GNSE_WORKDIR, then paths.workdir. Created if missing.
std::string resolve_outdir(const Options& options, const RunConfig& config);

/// Each command returns the process exit code and reports errors on `err`.
int cmd_params(int d, double alpha, double s, std::ostream& out, std::ostream& err);
int cmd_randomize(const Options& options, std::ostream& out, std::ostream& err);
/// inputs[0]: randomized datum checkpoint.
int cmd_picard(const Options& options, std::ostream& out, std::ostream& err);
/// inputs[0]: datum checkpoint, inputs[1] (optional): Picard trajectory. With
/// no inputs, runs the configured seed ensemble end to end.
int cmd_simulate(const Options& options, std::ostream& out, std::ostream& err);
/// inputs: series CSV files (t,u_sq,w_sq,h_sq). A ledger CSV named like the
/// series file with "series" replaced by "ledger" supplies T0 when present.
int cmd_decay_fit(const Options& options, std::ostream& out, std::ostream& err);
int cmd_verify(const Options& options, std::ostream& out, std::ostream& err);

/// Numeric CSV with a header row, keyed by column name.
std::map<std::string, std::vector<double>> read_csv(const std::string& path);

}  // namespace gnse::cli
