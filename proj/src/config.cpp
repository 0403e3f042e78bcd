// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include "gnse/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gnse/error.hpp"
#include "gnse/semigroup.hpp"

namespace gnse {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"regime", {"d", "alpha", "s"}},
      {"grid", {"n", "m"}},
      {"randomization", {"distribution", "seed", "ensemble_size", "amplitude"}},
      {"picard", {"tau", "nodes", "tol", "max_iter"}},
      {"evolution",
       {"dt0", "dt_growth", "scheme", "T_max", "output_stride", "output_points", "checkpoint_every", "cfl",
        "cfl_limit"}},
      {"decay", {"fit_lo", "fit_hi", "radius"}},
      {"paths", {"workdir"}},
  };
  return keys;
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw Error(ErrorKind::kInvalidConfig, key + ": " + why);
}

template <class T>
T get(const pt::ptree& tree, const std::string& path, T fallback) {
  const auto node = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'));
  if (!node) return fallback;
  std::istringstream is(*node);
  T value{};
  is >> value;
  if (is.fail() || !(is >> std::ws).eof()) bad(path, "cannot parse '" + *node + "'");
  return value;
}

RadiusLaw radius_from_string(const std::string& name) {
  if (name == "algebraic") return RadiusLaw::kAlgebraic;
  if (name == "critical_log") return RadiusLaw::kCriticalLog;
  bad("decay.radius", "expected algebraic or critical_log, got '" + name + "'");
}

}  // namespace

EnsembleConfig RunConfig::ensemble() const {
  EnsembleConfig e;
  e.regime = regime;
  e.n = n;
  e.m = m;
  e.amplitude = amplitude;
  e.distribution = distribution;
  e.seeds.clear();
  for (int i = 0; i < ensemble_size; ++i) e.seeds.push_back(seed + i);
  e.T_max = T_max;
  e.picard = picard();
  e.stepper = stepper();
  e.output_points = output_points;
  if (fit_lo && fit_hi) e.fit_window = Window{*fit_lo, *fit_hi};
  e.radius_law = radius;
  return e;
}

PicardConfig RunConfig::picard() const {
  PicardConfig p;
  p.tau = tau;
  p.nodes = picard_nodes;
  p.tol_residual = picard_tol;
  p.max_iter = picard_max_iter;
  return p;
}

StepperConfig RunConfig::stepper() const {
  StepperConfig s;
  s.dt = dt0;
  s.dt_growth = dt_growth;
  s.scheme = scheme;
  s.output_stride = output_stride;
  s.checkpoint_every = checkpoint_every;
  s.cfl = cfl;
  s.cfl_limit = cfl_limit;
  return s;
}

std::string RunConfig::to_ini() const {
  std::ostringstream os;
  os.precision(17);
  os << "[regime]\nd = " << regime.d << "\nalpha = " << regime.alpha << "\ns = " << regime.s << "\n\n";
  os << "[grid]\nn = " << n << "\nm = " << m << "\n\n";
  os << "[randomization]\ndistribution = " << to_string(distribution) << "\nseed = " << seed
     << "\nensemble_size = " << ensemble_size << "\namplitude = " << amplitude << "\n\n";
  os << "[picard]\ntau = " << tau << "\nnodes = " << picard_nodes << "\ntol = " << picard_tol
     << "\nmax_iter = " << picard_max_iter << "\n\n";
  os << "[evolution]\ndt0 = " << dt0 << "\ndt_growth = " << dt_growth
     << "\nscheme = " << static_cast<int>(scheme) << "\nT_max = " << T_max
     << "\noutput_stride = " << output_stride << "\noutput_points = " << output_points
     << "\ncheckpoint_every = " << checkpoint_every << "\ncfl = " << cfl
     << "\ncfl_limit = " << (cfl_limit ? 1 : 0) << "\n\n";
  os << "[decay]\n";
  if (fit_lo) os << "fit_lo = " << *fit_lo << "\n";
  if (fit_hi) os << "fit_hi = " << *fit_hi << "\n";
  os << "radius = " << to_string(radius) << "\n\n";
  os << "[paths]\nworkdir = " << workdir << "\n";
  return os.str();
}

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::kInvalidConfig, std::string("malformed config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) bad(section, "unknown section");
    for (const auto& [key, value] : body)
      if (!it->second.count(key)) bad(section + "." + key, "unknown key");
  }

  RunConfig c;
  c.regime.d = get(tree, "regime.d", c.regime.d);
  c.regime.alpha = get(tree, "regime.alpha", c.regime.alpha);
  c.regime.s = get(tree, "regime.s", c.regime.s);
  c.n = get(tree, "grid.n", c.n);
  c.m = get(tree, "grid.m", c.m);
  c.distribution = distribution_from_string(
      get<std::string>(tree, "randomization.distribution", to_string(c.distribution)));
  c.seed = get(tree, "randomization.seed", c.seed);
  c.ensemble_size = get(tree, "randomization.ensemble_size", c.ensemble_size);
  c.amplitude = get(tree, "randomization.amplitude", c.amplitude);
  c.tau = get(tree, "picard.tau", c.tau);
  c.picard_nodes = get(tree, "picard.nodes", c.picard_nodes);
  c.picard_tol = get(tree, "picard.tol", c.picard_tol);
  c.picard_max_iter = get(tree, "picard.max_iter", c.picard_max_iter);
  c.dt0 = get(tree, "evolution.dt0", c.dt0);
  c.dt_growth = get(tree, "evolution.dt_growth", c.dt_growth);
  const int scheme = get(tree, "evolution.scheme", static_cast<int>(c.scheme));
  if (scheme != 1 && scheme != 2) bad("evolution.scheme", "expected 1 or 2");
  c.scheme = static_cast<Scheme>(scheme);
  c.T_max = get(tree, "evolution.T_max", c.T_max);
  c.output_stride = get(tree, "evolution.output_stride", c.output_stride);
  c.output_points = get(tree, "evolution.output_points", c.output_points);
  c.checkpoint_every = get(tree, "evolution.checkpoint_every", c.checkpoint_every);
  c.cfl = get(tree, "evolution.cfl", c.cfl);
  c.cfl_limit = get(tree, "evolution.cfl_limit", c.cfl_limit ? 1 : 0) != 0;
  if (tree.get_optional<std::string>("decay.fit_lo")) c.fit_lo = get(tree, "decay.fit_lo", 0.0);
  if (tree.get_optional<std::string>("decay.fit_hi")) c.fit_hi = get(tree, "decay.fit_hi", 0.0);
  c.radius = radius_from_string(get<std::string>(tree, "decay.radius", to_string(c.radius)));
  c.workdir = get<std::string>(tree, "paths.workdir", c.workdir);
  validate_config(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open config '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

void validate_config(const RunConfig& c) {
  try {
    validate_regime(c.regime.d, c.regime.alpha, c.regime.s);
  } catch (const Error& e) {
    bad("regime", e.what());
  }
  Grid grid;
  try {
    grid = Grid(c.regime.d, c.n, c.m);
  } catch (const Error& e) {
    bad("grid", e.what());
  }
  const auto [lo, hi] = resolved_window(grid, c.regime.alpha);
  if (hi < 10.0 * lo) bad("grid", "resolved window spans less than one decade");
  if (c.ensemble_size < 1) bad("randomization.ensemble_size", "must be >= 1");
  if (!(c.amplitude > 0.0) || !std::isfinite(c.amplitude)) bad("randomization.amplitude", "must be > 0");
  if (!(c.tau > 0.0 && c.tau < 1.0)) bad("picard.tau", "must lie in (0, 1)");
  if (c.picard_nodes < 16) bad("picard.nodes", "must be >= 16");
  if (!(c.picard_tol > 0.0)) bad("picard.tol", "must be > 0");
  if (c.picard_max_iter < 1) bad("picard.max_iter", "must be >= 1");
  if (!(c.dt0 > 0.0)) bad("evolution.dt0", "must be > 0");
  if (!(c.dt_growth >= 0.0)) bad("evolution.dt_growth", "must be >= 0");
  if (!(c.T_max > c.tau)) bad("evolution.T_max", "must exceed picard.tau");
  if (c.output_stride < 0) bad("evolution.output_stride", "must be >= 0");
  if (c.output_points < 2) bad("evolution.output_points", "must be >= 2");
  if (c.checkpoint_every < 0) bad("evolution.checkpoint_every", "must be >= 0");
  if (!(c.cfl > 0.0)) bad("evolution.cfl", "must be > 0");
  if (c.fit_lo.has_value() != c.fit_hi.has_value()) bad("decay", "fit_lo and fit_hi go together");
  if (c.fit_lo) {
    if (!(*c.fit_lo > 0.0 && *c.fit_hi > *c.fit_lo)) bad("decay.fit_lo", "need 0 < fit_lo < fit_hi");
    if (*c.fit_hi > hi * (1.0 + 1e-12)) bad("decay.fit_hi", "beyond 0.25 m^{2 alpha}");
  }
  if (c.radius == RadiusLaw::kCriticalLog && !c.regime.is_critical())
    bad("decay.radius", "critical_log needs alpha = (d+2)/4");
  if (c.workdir.empty()) bad("paths.workdir", "must not be empty");
}

}  // namespace gnse
