// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include "gnse/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "gnse/checkpoint.hpp"
#include "gnse/decay.hpp"
#include "gnse/error.hpp"
#include "gnse/manifest.hpp"
#include "gnse/mild_solver.hpp"
#include "gnse/nonlinearity.hpp"
#include "gnse/semigroup.hpp"
#include "gnse/stats.hpp"
#include "json.hpp"

namespace gnse::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

RunConfig config_of(const Options& o) {
  RunConfig c = o.config_path ? load_config(*o.config_path) : RunConfig{};
  if (o.seed) c.seed = *o.seed;
  validate_config(c);
  return c;
}

CheckpointHeader header_of(const RunConfig& c, std::uint64_t seed, std::uint64_t member, double time) {
  CheckpointHeader h;
  h.d = static_cast<std::uint32_t>(c.regime.d);
  h.n = static_cast<std::uint32_t>(c.n);
  h.m = static_cast<std::uint32_t>(c.m);
  h.alpha = c.regime.alpha;
  h.s = c.regime.s;
  h.seed = seed;
  h.member = member;
  h.time = time;
  return h;
}

std::string seed_tag(std::uint64_t seed) { return "seed" + std::to_string(seed); }

void finish_manifest(const std::string& dir, const RunConfig& c, const std::string& command,
                     const std::vector<std::string>& artifacts, const std::vector<SeedStatus>& seeds,
                     const Timer& timer) {
  RunManifest m = RunManifest::load(dir);
  m.config_ini = c.to_ini();
  m.version = kVersion;
  for (const auto& a : artifacts) m.add_artifact(a);
  for (const auto& s : seeds) m.set_seed(s);
  m.commands.push_back({command, timer.seconds()});
  m.save(dir);
}

int report_error(std::ostream& err, const std::exception& e) {
  err << "error: " << e.what() << "\n";
  return 2;
}

std::string series_csv(const std::vector<double>& t, const std::vector<double>& u,
                       const std::vector<double>& w, const std::vector<double>& h) {
  std::ostringstream os;
  os.precision(17);
  os << "t,u_sq,w_sq,h_sq\n";
  for (std::size_t i = 0; i < t.size(); ++i) os << t[i] << ',' << u[i] << ',' << w[i] << ',' << h[i] << '\n';
  return os.str();
}

json fit_json(const DecayFitResult& f) {
  return {{"slope", f.slope},         {"stderr", f.slope_stderr}, {"r2", f.r2},
          {"predicted", f.predicted}, {"points", f.points},       {"window", {f.window.first, f.window.second}}};
}

EnergyLedger ledger_from_csv(const std::string& path) {
  const auto cols = read_csv(path);
  EnergyLedger ledger;
  const auto& t = cols.at("t");
  for (std::size_t i = 0; i < t.size(); ++i) {
    LedgerRow r;
    r.t = t[i];
    r.dt = cols.at("dt")[i];
    r.l2w_sq = cols.at("l2w_sq")[i];
    r.hal_w_sq = cols.at("hal_w_sq")[i];
    r.flux_wwh = cols.at("flux_wwh")[i];
    r.flux_hwh = cols.at("flux_hwh")[i];
    r.dwdt = cols.at("dwdt")[i];
    r.energy_residual = cols.at("energy_residual")[i];
    ledger.rows.push_back(r);
  }
  return ledger;
}

}  // namespace

std::map<std::string, std::vector<double>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::kIo, "empty CSV '" + path + "'");
  std::vector<std::string> names;
  {
    std::istringstream is(line);
    std::string cell;
    while (std::getline(is, cell, ',')) names.push_back(cell);
  }
  std::map<std::string, std::vector<double>> cols;
  for (const auto& n : names) cols[n];
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(is, cell, ',')) {
      if (c >= names.size()) throw Error(ErrorKind::kIo, path + ":" + std::to_string(row) + ": too many cells");
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) throw Error(ErrorKind::kIo, path + ":" + std::to_string(row) + ": bad number");
      cols[names[c++]].push_back(v);
    }
    if (c != names.size()) throw Error(ErrorKind::kIo, path + ":" + std::to_string(row) + ": too few cells");
  }
  return cols;
}

std::string resolve_outdir(const Options& options, const RunConfig& config) {
  std::string dir = config.workdir;
  if (const char* env = std::getenv("GNSE_WORKDIR"); env && *env) dir = env;
  if (options.out) dir = *options.out;
  fs::create_directories(dir);
  return dir;
}

int cmd_params(int d, double alpha, double s, std::ostream& out, std::ostream& err) {
  try {
    const RegimeParams r = validate_regime(d, alpha, s);
    const DerivedExponents ex = derive_exponents(r);
    out << std::setprecision(10);
    out << "regime        d=" << d << " alpha=" << alpha << " s=" << s
        << (r.is_critical() ? " (critical alpha)" : "") << "\n";
    out << "mu            " << ex.mu << "\n";
    out << "a             " << ex.a << "\n";
    out << "b             " << ex.b << "\n";
    out << "p             " << ex.p << "\n";
    out << "q             " << ex.q << "\n";
    out << "lambda        " << ex.lambda << "\n";
    out << "r_s           " << ex.r_s << "\n";
    const YSpaceCase y = classify_yspace(r);
    out << "Y-case        " << y.name() << "\n";
    for (const auto& c : y.components) out << "  " << c.describe() << "\n";
    for (XSpace x : {XSpace::kX1, XSpace::kX2}) {
      out << "X" << static_cast<int>(x) << "\n";
      for (const auto& c : xspace_components(r, x)) out << "  " << c.describe() << "\n";
    }
    const DecaySlopes slopes = decay_exponents(r);
    out << "u_sq slope    " << slopes.u_sq_slope << "\n";
    out << "w_sq slope    " << slopes.w_sq_slope << "\n";
    out << "forcing exp   " << energy_forcing_exponent(r) << "\n";
    if (r.is_critical()) {
      out << "ladder        not applicable at alpha = (d+2)/4\n";
    } else {
      const DecayLadderClass lc = classify_decay_ladder(r);
      out << "ladder        A_" << lc.n << "^(" << lc.j << ") w_sq slope " << lc.w_slope << "\n";
      for (const auto& st : lc.intermediate)
        out << "  via A_" << st.n << "^(3) w_sq slope " << st.w_slope << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    return report_error(err, e);
  }
}

int cmd_randomize(const Options& o, std::ostream& out, std::ostream& err) {
  try {
    const Timer timer;
    const RunConfig c = config_of(o);
    const std::string dir = resolve_outdir(o, c);
    const Grid grid(c.regime.d, c.n, c.m);
    const SpectralField datum = synthesize_datum(c.regime, grid, c.amplitude);
    const SpectralField u0 = randomize(datum, PartitionOfUnity(grid), RandomSpec{c.distribution, c.seed}, o.member);
    const std::string name = "u0_" + seed_tag(c.seed) + "_member" + std::to_string(o.member) + ".gnse";
    write_checkpoint((fs::path(dir) / name).string(), header_of(c, c.seed, o.member, 0.0), u0);
    out << std::setprecision(10) << "wrote " << name << "  ||u0||_L2^2 = " << l2_sq(u0)
        << "  ||u0||_H^s^2 = " << hom_sobolev_sq(u0, c.regime.s) << "\n";
    finish_manifest(dir, c, "randomize", {name}, {{c.seed, "ok", ""}}, timer);
    return 0;
  } catch (const std::exception& e) {
    return report_error(err, e);
  }
}

int cmd_picard(const Options& o, std::ostream& out, std::ostream& err) {
  try {
    const Timer timer;
    if (o.inputs.empty()) throw Error(ErrorKind::kInvalidArgument, "picard needs the datum checkpoint path");
    const RunConfig c = config_of(o);
    const std::string dir = resolve_outdir(o, c);
    const Checkpoint datum = read_checkpoint(o.inputs[0]);
    require_compatible(datum.header, header_of(c, 0, 0, 0.0));
    const std::uint64_t seed = datum.header.seed;

    const PicardResult res = picard_solve_auto(datum.field, c.regime, c.picard());
    std::ostringstream csv;
    csv.precision(17);
    csv << "iteration,residual,ratio\n";
    for (std::size_t i = 0; i < res.residuals.size(); ++i) {
      csv << i + 1 << ',' << res.residuals[i] << ',';
      if (i > 0) csv << res.contraction_ratios[i - 1];
      else csv << "nan";
      csv << '\n';
    }
    const std::string csv_name = "picard_residuals_" + seed_tag(seed) + ".csv";
    const std::string traj_name = "picard_" + seed_tag(seed) + ".traj";
    write_file_atomic((fs::path(dir) / csv_name).string(), csv.str());
    write_trajectory((fs::path(dir) / traj_name).string(), header_of(c, seed, datum.header.member, 0.0), res.w);
    out << std::setprecision(6) << "tau " << res.tau << "  iterations " << res.iterations << "  residual "
        << (res.residuals.empty() ? 0.0 : res.residuals.back()) << "  ||h||_Y " << res.h_norm
        << (res.converged ? "  converged" : "  NOT converged") << "\n";
    finish_manifest(dir, c, "picard", {csv_name, traj_name},
                    {{seed, res.converged ? "ok" : "failed", res.converged ? "" : "picard did not converge"}},
                    timer);
    return res.converged ? 0 : 1;
  } catch (const std::exception& e) {
    return report_error(err, e);
  }
}

namespace {

int simulate_ensemble(const Options& o, const RunConfig& c, const std::string& dir, const Timer& timer,
                      std::ostream& out) {
  EnsembleConfig e = c.ensemble();
  e.jobs = o.jobs;
  e.member = o.member;
  std::vector<std::string> artifacts;
  std::vector<SeedStatus> statuses;
  const EnsembleResult res = run_ensemble(e, [&](const SeedRun& run) {
    out << seed_tag(run.seed) << (run.ok ? " ok" : " FAILED: " + run.error) << "\n";
    if (!run.ok) return;
    const std::string series = "series_" + seed_tag(run.seed) + ".csv";
    const std::string ledger = "ledger_" + seed_tag(run.seed) + ".csv";
    write_file_atomic((fs::path(dir) / series).string(), run.series_csv());
    write_file_atomic((fs::path(dir) / ledger).string(), run.ledger.csv());
    artifacts.push_back(series);
    artifacts.push_back(ledger);
  });
  for (const auto& run : res.runs) statuses.push_back({run.seed, run.ok ? "ok" : "failed", run.error});
  finish_manifest(dir, c, "simulate", artifacts, statuses, timer);
  return res.failures == res.runs.size() ? 1 : 0;
}

}  // namespace

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  try {
    const Timer timer;
    const RunConfig c = config_of(o);
    const std::string dir = resolve_outdir(o, c);
    if (o.inputs.empty()) {
      if (o.resume) throw Error(ErrorKind::kInvalidArgument, "--resume needs the datum checkpoint path");
      return simulate_ensemble(o, c, dir, timer, out);
    }

    const Checkpoint datum = read_checkpoint(o.inputs[0]);
    require_compatible(datum.header, header_of(c, 0, 0, 0.0));
    const std::uint64_t seed = datum.header.seed;
    const HeatFlow flow(datum.field, c.regime.alpha);

    SpectralField w(datum.field.grid());
    double t0 = 0.0;
    if (o.resume) {
      const Checkpoint cp = read_checkpoint(*o.resume);
      require_compatible(datum.header, cp.header);
      if (cp.header.seed != seed || cp.header.member != datum.header.member)
        throw Error(ErrorKind::kHeaderMismatch, "resume checkpoint belongs to another seed or member");
      w = cp.field;
      t0 = cp.header.time;
    } else if (o.inputs.size() > 1) {
      CheckpointHeader th;
      const Trajectory picard = read_trajectory(o.inputs[1], &th);
      require_compatible(datum.header, th);
      const double tau = picard.times.back();
      std::size_t start = 0;
      while (start + 1 < picard.size() && picard.times[start + 1] <= 0.5 * tau) ++start;
      w = picard.fields[start];
      t0 = picard.times[start];
    }

    StepperConfig stepper = c.stepper();
    stepper.output_times = logspace(c.tau, c.T_max, c.output_points);
    const std::string ckpt_name = "checkpoint_" + seed_tag(seed) + ".gnse";
    const std::string ckpt_path = (fs::path(dir) / ckpt_name).string();
    bool wrote_ckpt = false;
    stepper.checkpoint = [&](double t, const SpectralField& field) {
      write_checkpoint(ckpt_path, header_of(c, seed, datum.header.member, t), field);
      wrote_ckpt = true;
    };
    const SimulationResult sim = simulate(w, t0, c.T_max, stepper, c.regime, heat_provider(flow));

    std::vector<double> ts, us, ws, hs;
    for (std::size_t i = 0; i < sim.trajectory.size(); ++i) {
      const double t = sim.trajectory.times[i];
      const SpectralField h = flow.at(t);
      ts.push_back(t);
      hs.push_back(l2_sq(h));
      ws.push_back(l2_sq(sim.trajectory.fields[i]));
      us.push_back(l2_sq(h + sim.trajectory.fields[i]));
    }
    const std::string ledger_name = "ledger_" + seed_tag(seed) + ".csv";
    const std::string series_name = "series_" + seed_tag(seed) + ".csv";
    const std::string final_name = "final_" + seed_tag(seed) + ".gnse";
    write_file_atomic((fs::path(dir) / ledger_name).string(), sim.ledger.csv());
    write_file_atomic((fs::path(dir) / series_name).string(), series_csv(ts, us, ws, hs));
    write_checkpoint((fs::path(dir) / final_name).string(),
                     header_of(c, seed, datum.header.member, sim.trajectory.times.back()),
                     sim.trajectory.fields.back());
    out << std::setprecision(6) << "steps " << sim.steps << "  t " << t0 << " -> " << c.T_max
        << "  max divergence " << sim.max_divergence << "  cfl warnings " << sim.cfl_warnings << "\n";
    std::vector<std::string> artifacts{ledger_name, series_name, final_name};
    if (wrote_ckpt) artifacts.push_back(ckpt_name);
    finish_manifest(dir, c, "simulate", artifacts, {{seed, "ok", ""}}, timer);
    return 0;
  } catch (const std::exception& e) {
    return report_error(err, e);
  }
}

int cmd_decay_fit(const Options& o, std::ostream& out, std::ostream& err) {
  try {
    const Timer timer;
    if (o.inputs.empty()) throw Error(ErrorKind::kInvalidArgument, "decay-fit needs series CSV paths");
    const RunConfig c = config_of(o);
    const std::string dir = resolve_outdir(o, c);
    const Grid grid(c.regime.d, c.n, c.m);
    const DecaySlopes pred = decay_exponents(c.regime);
    const double h_pred = c.regime.s / c.regime.alpha;
    const double t_hi_default = 0.25 * grid.infrared_time(c.regime.alpha);

    json report;
    report["regime"] = {{"d", c.regime.d}, {"alpha", c.regime.alpha}, {"s", c.regime.s}};
    report["predicted"] = {{"u_sq", pred.u_sq_slope}, {"w_sq", pred.w_sq_slope}, {"h_sq", h_pred}};
    report["runs"] = json::array();
    std::vector<double> u_slopes, w_slopes;
    bool h_all = true;
    for (const auto& path : o.inputs) {
      json run{{"series", path}};
      try {
        const auto cols = read_csv(path);
        const auto& t = cols.at("t");
        double T0 = std::numbers::e;
        std::string ledger_path = path;
        if (const auto pos = ledger_path.rfind("series"); pos != std::string::npos) {
          ledger_path.replace(pos, 6, "ledger");
          if (fs::exists(ledger_path)) {
            const EnergyMonitor mon = energy_monitor(ledger_from_csv(ledger_path), c.regime);
            run["monitor"] = {{"C", mon.C}, {"T0", mon.T0}, {"T0_found", mon.T0_found},
                              {"fraction", mon.fraction}, {"rows_after", mon.rows_after}};
            if (mon.T0_found) T0 = std::max(T0, mon.T0);
          }
        }
        Window window{T0, std::min(t.back(), t_hi_default)};
        if (c.fit_lo) window = {*c.fit_lo, *c.fit_hi};
        run["window"] = {window.first, window.second};
        if (window.second < 10.0 * window.first) {
          run["under_resolved"] = true;
        } else {
          const auto u = fit_decay(t, cols.at("u_sq"), window, pred.u_sq_slope);
          const auto w = fit_decay(t, cols.at("w_sq"), window, pred.w_sq_slope);
          const auto h = fit_decay(t, cols.at("h_sq"), window, h_pred);
          run["u_sq"] = fit_json(u);
          run["w_sq"] = fit_json(w);
          run["h_sq"] = fit_json(h);
          run["h_within_0.05"] = std::abs(h.slope - h_pred) <= 0.05;
          h_all = h_all && std::abs(h.slope - h_pred) <= 0.05;
          u_slopes.push_back(u.slope);
          w_slopes.push_back(w.slope);
        }
      } catch (const std::exception& e) {
        run["error"] = e.what();
      }
      report["runs"].push_back(run);
    }
    const bool any = !u_slopes.empty();
    report["fitted_runs"] = u_slopes.size();
    if (any) {
      const double mu = median(u_slopes), mw = median(w_slopes);
      report["median"] = {{"u_sq", mu}, {"w_sq", mw}};
      report["pass"] = {{"u_sq_median", std::abs(mu - pred.u_sq_slope) <= 0.1},
                        {"w_sq_median", std::abs(mw - pred.w_sq_slope) <= 0.2},
                        {"h_sq_every_run", h_all}};
    }
    const std::string text = report.dump(2) + "\n";
    write_file_atomic((fs::path(dir) / "decay_report.json").string(), text);
    out << text;
    finish_manifest(dir, c, "decay-fit", {"decay_report.json"}, {}, timer);
    return any ? 0 : 1;
  } catch (const std::exception& e) {
    return report_error(err, e);
  }
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  try {
    (void)o;
    int failures = 0;
    const auto line = [&](const std::string& name, bool ok, double value) {
      out << (ok ? "PASS " : "FAIL ") << std::left << std::setw(34) << name << " " << std::setprecision(3)
          << value << "\n";
      if (!ok) ++failures;
    };

    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const int d = 2 + static_cast<int>(unit(gen) * 2);
      const double alpha = 0.5 + (d + 2) / 4.0 * 1e-6 + unit(gen) * ((d + 2) / 4.0 - 0.5 - 1e-6);
      const double lower = -alpha + std::max(0.0, 1.0 - alpha);
      const double s = lower + (0.0 - lower) * (0.001 + 0.998 * unit(gen));
      const DerivedExponents ex = derive_exponents(validate_regime(d, alpha, s));
      worst = std::max({worst, std::abs(1 / ex.a + 1 / ex.b - 0.5), std::abs(1 / ex.p + 1 / ex.q - 0.5),
                        std::abs(2 * alpha / ex.a + d / ex.p - (2 * alpha - 1))});
    }
    line("exponent identities", worst <= 1e-12, worst);

    const Grid grid(2, 32, 2);
    const SpectralField u = random_field(grid, 11);
    const SpectralField v = random_field(grid, 12);
    const SpectralField back = to_spectral(to_physical(u));
    line("transform round trip", std::sqrt(l2_sq(back - u) / l2_sq(u)) <= 1e-12, std::sqrt(l2_sq(back - u) / l2_sq(u)));
    const SpectralField raw = random_field(grid, 13, false, false);
    const SpectralField p1 = leray_project(raw);
    const double idem = std::sqrt(l2_sq(leray_project(p1) - p1) / l2_sq(p1));
    line("leray idempotence", idem <= 1e-12, idem);
    const double skew = std::abs(inner(bilinear_B(u, v), v)) /
                        (std::sqrt(l2_sq(u)) * std::sqrt(hom_sobolev_sq(v, 1.0)) * std::sqrt(l2_sq(v)));
    line("advection skew-symmetry", skew <= 1e-11, skew);
    const double semi = std::sqrt(
        l2_sq(heat_propagate(heat_propagate(u, 0.3, 0.8), 0.4, 0.8) - heat_propagate(u, 0.7, 0.8)) / l2_sq(u));
    line("heat semigroup law", semi <= 1e-13, semi);
    CheckpointHeader h{2, 32, 2, 1.0, -0.5, 3, 0, 0.25};
    const auto bytes = encode_checkpoint(h, u);
    std::size_t off = 0;
    const Checkpoint cp = decode_checkpoint(bytes, off);
    line("checkpoint round trip", encode_checkpoint(cp.header, cp.field) == bytes, 0.0);

    out << (failures ? "verify: " + std::to_string(failures) + " failure(s)\n" : "verify: all invariants hold\n");
    return failures ? 1 : 0;
  } catch (const std::exception& e) {
    return report_error(err, e);
  }
}

}  // namespace gnse::cli
