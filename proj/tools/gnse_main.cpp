// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "CLI11.hpp"
#include "gnse/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Randomized fractional Navier-Stokes toolkit"};
  app.require_subcommand(1);

  gnse::cli::Options opt;
  std::string config;
  std::uint64_t seed = 0;
  std::string out, resume;
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "INI run configuration")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "master seed (overrides the config)");
    sub->add_option("--member", opt.member, "ensemble member index");
    sub->add_option("--jobs", opt.jobs, "parallel seeds")->check(CLI::PositiveNumber);
    sub->add_option("--out", out, "output directory");
  };

  int d = 0;
  double alpha = 0.0, s = 0.0;
  auto* params = app.add_subcommand("params", "print the exponent table of a regime");
  params->add_option("d", d)->required();
  params->add_option("alpha", alpha)->required();
  params->add_option("s", s)->required()->allow_extra_args(false);

  auto* randomize = app.add_subcommand("randomize", "write a randomized datum checkpoint");
  common(randomize);
  auto* picard = app.add_subcommand("picard", "Picard iteration on [0, tau]");
  common(picard);
  picard->add_option("datum", opt.inputs, "randomized datum checkpoint")->required();
  auto* simulate = app.add_subcommand("simulate", "long-time evolution; no datum runs the ensemble");
  common(simulate);
  simulate->add_option("inputs", opt.inputs, "datum checkpoint [picard trajectory]");
  simulate->add_option("--resume", resume, "checkpoint to continue from")->check(CLI::ExistingFile);
  auto* decay = app.add_subcommand("decay-fit", "fit decay slopes of series CSVs");
  common(decay);
  decay->add_option("series", opt.inputs, "series CSV files")->required();
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  common(verify);

  // Negative numbers such as "-0.5" must reach the positional s.
  app.allow_extras(false);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (!config.empty()) opt.config_path = config;
  if (seed) opt.seed = seed;
  if (!out.empty()) opt.out = out;
  if (!resume.empty()) opt.resume = resume;

  if (*params) return gnse::cli::cmd_params(d, alpha, s, std::cout, std::cerr);
  if (*randomize) return gnse::cli::cmd_randomize(opt, std::cout, std::cerr);
  if (*picard) return gnse::cli::cmd_picard(opt, std::cout, std::cerr);
  if (*simulate) return gnse::cli::cmd_simulate(opt, std::cout, std::cerr);
  if (*decay) return gnse::cli::cmd_decay_fit(opt, std::cout, std::cerr);
  if (*verify) return gnse::cli::cmd_verify(opt, std::cout, std::cerr);
  return 1;
}
