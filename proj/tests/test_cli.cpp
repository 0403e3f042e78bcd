// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "gnse/checkpoint.hpp"
#include "gnse/cli.hpp"
#include "gnse/config.hpp"
#include "gnse/error.hpp"
#include "gnse/manifest.hpp"
#include "gnse/randomization.hpp"
#include "json.hpp"
#include "test_util.hpp"

using namespace gnse;
using namespace gnse::testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gnse_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

const char* kSmallIni = R"([regime]
d = 2
alpha = 1.0
s = -0.5

[grid]
n = 64
m = 4

[randomization]
seed = 5
amplitude = 0.01

[picard]
tau = 0.05
nodes = 17

[evolution]
T_max = 2
output_points = 20
checkpoint_every = 40

[decay]
fit_lo = 0.1
fit_hi = 2
)";

ErrorKind kind_of(const std::string& text) {
  try {
    validate_config(parse_config(text));
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("config accepted: " << text);
  return ErrorKind::kInvalidConfig;
}

std::vector<std::string> rows_after(const std::string& csv, double t_cut) {
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  std::vector<std::string> rows;
  while (std::getline(is, line))
    if (!line.empty() && std::strtod(line.c_str(), nullptr) > t_cut) rows.push_back(line);
  return rows;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("config round trip through the canonical rendering") {
    RunConfig c;
    c.regime = {3, 1.25, -0.7};
    c.n = 128;
    c.m = 8;
    c.distribution = Distribution::kRademacher;
    c.seed = 42;
    c.ensemble_size = 3;
    c.amplitude = 0.125;
    c.tau = 0.03;
    c.picard_nodes = 21;
    c.dt0 = 0.0025;
    c.scheme = Scheme::kExpEuler;
    c.T_max = 77.5;
    c.checkpoint_every = 9;
    c.cfl_limit = true;
    c.fit_lo = 1.5;
    c.fit_hi = 20.0;
    c.radius = RadiusLaw::kCriticalLog;
    c.workdir = "/tmp/x";
    const std::string ini = c.to_ini();
    const RunConfig back = parse_config(ini);
    CHECK(back.to_ini() == ini);
    CHECK(back.regime.d == 3);
    CHECK(back.regime.alpha == c.regime.alpha);
    CHECK(back.distribution == Distribution::kRademacher);
    CHECK(back.scheme == Scheme::kExpEuler);
    CHECK(back.radius == RadiusLaw::kCriticalLog);
    REQUIRE(back.fit_lo);
    CHECK(*back.fit_hi == 20.0);

    const RunConfig defaults = parse_config(RunConfig{}.to_ini());
    CHECK(defaults.to_ini() == RunConfig{}.to_ini());
    CHECK(parse_config("").to_ini() == RunConfig{}.to_ini());
  }

  TEST_CASE("config rejects unknown keys and bad values") {
    CHECK(kind_of("[regime]\nbeta = 1\n") == ErrorKind::kInvalidConfig);
    CHECK(kind_of("[physics]\nnu = 1\n") == ErrorKind::kInvalidConfig);
    CHECK(kind_of("[grid]\nn = sixty\n") == ErrorKind::kInvalidConfig);
    CHECK(kind_of("[grid]\nn = 64x\n") == ErrorKind::kInvalidConfig);
    CHECK(kind_of("[decay]\nradius = cubic\n") == ErrorKind::kInvalidConfig);
    CHECK(kind_of("[randomization]\ndistribution = cauchy\n") != ErrorKind::kDiverged);
    CHECK(kind_of("[grid]\nn = 30\n") != ErrorKind::kDiverged);
    CHECK(kind_of("[regime]\nalpha = 0.4\n") != ErrorKind::kDiverged);
    CHECK(kind_of("[regime]\ns = 0.2\n") != ErrorKind::kDiverged);
    CHECK(kind_of("[picard]\nnodes = 1\n") != ErrorKind::kDiverged);
    CHECK(kind_of("[evolution]\nT_max = -1\n") != ErrorKind::kDiverged);
    CHECK(kind_of("this is not ini [\n") == ErrorKind::kInvalidConfig);
  }

  TEST_CASE("checkpoint bytes are stable and corruption is detected") {
    const fs::path dir = scratch("ckpt");
    const Grid grid(2, 32, 2);
    const SpectralField u = random_field(grid, 77);
    const CheckpointHeader h{2, 32, 2, 1.0, -0.5, 9, 4, 1.75};
    const std::string a = (dir / "a.gnse").string(), b = (dir / "b.gnse").string();
    write_checkpoint(a, h, u);
    const Checkpoint back = read_checkpoint(a);
    CHECK(back.header == h);
    CHECK(max_abs_diff(back.field, u) == 0.0);
    write_checkpoint(b, back.header, back.field);
    CHECK(read_file(a) == read_file(b));

    auto bytes = read_file(a);
    bytes[bytes.size() / 2] ^= 0x01;
    write_file_atomic(b, bytes);
    try {
      read_checkpoint(b);
      FAIL("corrupted checkpoint accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kCorruptCheckpoint);
    }
    bytes = read_file(a);
    bytes[0] ^= 0xff;
    write_file_atomic(b, bytes);
    CHECK_THROWS_AS(read_checkpoint(b), Error);
    bytes = read_file(a);
    bytes.resize(bytes.size() - 10);
    write_file_atomic(b, bytes);
    CHECK_THROWS_AS(read_checkpoint(b), Error);
    CHECK_THROWS_AS(read_checkpoint((dir / "missing.gnse").string()), Error);

    CheckpointHeader other = h;
    other.alpha = 1.1;
    CHECK_THROWS_AS(require_compatible(h, other), Error);
    other = h;
    other.n = 64;
    CHECK_THROWS_AS(require_compatible(h, other), Error);
    other = h;
    other.time = 9.0;
    other.member = 0;
    CHECK_NOTHROW(require_compatible(h, other));
  }

  TEST_CASE("resolve_outdir precedence") {
    const fs::path dir = scratch("outdir");
    RunConfig c;
    c.workdir = (dir / "cfg").string();
    cli::Options o;
    unsetenv("GNSE_WORKDIR");
    CHECK(cli::resolve_outdir(o, c) == c.workdir);
    setenv("GNSE_WORKDIR", (dir / "env").c_str(), 1);
    CHECK(cli::resolve_outdir(o, c) == (dir / "env").string());
    o.out = (dir / "flag").string();
    CHECK(cli::resolve_outdir(o, c) == *o.out);
    unsetenv("GNSE_WORKDIR");
    CHECK(fs::is_directory(dir / "flag"));
    CHECK(fs::is_directory(dir / "env"));
  }

  TEST_CASE("read_csv parses columns and rejects ragged rows") {
    const fs::path dir = scratch("csv");
    spit(dir / "ok.csv", "t,x\n1,2.5\n\n3,-4e-3\n");
    const auto cols = cli::read_csv((dir / "ok.csv").string());
    REQUIRE(cols.at("t").size() == 2);
    CHECK(cols.at("x")[1] == doctest::Approx(-4e-3));
    spit(dir / "bad.csv", "t,x\n1,2,3\n");
    CHECK_THROWS_AS(cli::read_csv((dir / "bad.csv").string()), Error);
    spit(dir / "nan.csv", "t,x\n1,abc\n");
    CHECK_THROWS_AS(cli::read_csv((dir / "nan.csv").string()), Error);
    CHECK_THROWS_AS(cli::read_csv((dir / "none.csv").string()), Error);
  }

  TEST_CASE("params command output and exit codes") {
    std::ostringstream out, err;
    CHECK(cli::cmd_params(2, 1.0, -0.5, out, err) == 0);
    const std::string text = out.str();
    CHECK(text.find("u_sq slope    -0.5\n") != std::string::npos);
    CHECK(text.find("w_sq slope    -1\n") != std::string::npos);
    CHECK(text.find("critical alpha") != std::string::npos);

    std::ostringstream out2, err2;
    CHECK(cli::cmd_params(2, 0.5, -0.3, out2, err2) != 0);
    CHECK(err2.str().find("error:") != std::string::npos);

    std::ostringstream out3, err3;
    CHECK(cli::cmd_params(4, 1.2, -1.1, out3, err3) == 0);
    CHECK(out3.str().find("Y-case        Y4") != std::string::npos);
    CHECK(out3.str().find("ladder        A_") != std::string::npos);
  }

  TEST_CASE("verify command passes its self checks") {
    std::ostringstream out, err;
    CHECK(cli::cmd_verify({}, out, err) == 0);
    CHECK(out.str().find("FAIL") == std::string::npos);
  }

  TEST_CASE("pipeline smoke with manifest") {
    const fs::path dir = scratch("pipe");
    spit(dir / "run.ini", kSmallIni);
    cli::Options o;
    o.config_path = (dir / "run.ini").string();
    o.out = (dir / "out").string();
    std::ostringstream out, err;

    REQUIRE_MESSAGE(cli::cmd_randomize(o, out, err) == 0, err.str());
    const std::string datum = (dir / "out" / "u0_seed5_member0.gnse").string();
    REQUIRE(fs::exists(datum));
    const Checkpoint u0 = read_checkpoint(datum);
    CHECK(u0.header.seed == 5);
    CHECK(u0.header.n == 64);

    o.inputs = {datum};
    REQUIRE_MESSAGE(cli::cmd_picard(o, out, err) == 0, err.str());
    const std::string traj = (dir / "out" / "picard_seed5.traj").string();
    REQUIRE(fs::exists(traj));
    const auto residuals = cli::read_csv((dir / "out" / "picard_residuals_seed5.csv").string());
    CHECK(!residuals.empty());

    o.inputs = {datum, traj};
    REQUIRE_MESSAGE(cli::cmd_simulate(o, out, err) == 0, err.str());
    const fs::path series = dir / "out" / "series_seed5.csv";
    REQUIRE(fs::exists(series));
    const auto cols = cli::read_csv(series.string());
    CHECK(cols.at("t").back() == doctest::Approx(2.0));
    for (std::size_t i = 0; i < cols.at("t").size(); ++i) CHECK(std::isfinite(cols.at("u_sq")[i]));

    o.inputs = {series.string()};
    CHECK_MESSAGE(cli::cmd_decay_fit(o, out, err) == 0, err.str());
    const auto report = nlohmann::json::parse(slurp(dir / "out" / "decay_report.json"));
    CHECK(report["fitted_runs"] == 1);
    CHECK(report["runs"][0].contains("monitor"));

    const auto manifest = nlohmann::json::parse(slurp(dir / "out" / "manifest.json"));
    std::vector<std::string> listed;
    for (const auto& a : manifest["artifacts"]) listed.push_back(a.get<std::string>());
    for (const char* name : {"u0_seed5_member0.gnse", "picard_seed5.traj", "picard_residuals_seed5.csv",
                             "ledger_seed5.csv", "series_seed5.csv", "final_seed5.gnse", "checkpoint_seed5.gnse",
                             "decay_report.json"}) {
      CHECK_MESSAGE(std::find(listed.begin(), listed.end(), name) != listed.end(), name);
    }
    for (const auto& a : listed) CHECK_MESSAGE(fs::exists(dir / "out" / a), a);
    CHECK(manifest["commands"].size() == 4);
    CHECK(parse_config(manifest["config"].get<std::string>()).seed == 5);
  }

  TEST_CASE("identical configs give identical outputs") {
    const fs::path dir = scratch("det");
    spit(dir / "run.ini", kSmallIni);
    std::vector<std::string> ledgers;
    for (const char* sub : {"a", "b"}) {
      cli::Options o;
      o.config_path = (dir / "run.ini").string();
      o.out = (dir / sub).string();
      std::ostringstream out, err;
      REQUIRE(cli::cmd_randomize(o, out, err) == 0);
      o.inputs = {(dir / sub / "u0_seed5_member0.gnse").string()};
      REQUIRE(cli::cmd_simulate(o, out, err) == 0);
      ledgers.push_back(slurp(dir / sub / "ledger_seed5.csv"));
      CHECK(slurp(dir / sub / "u0_seed5_member0.gnse") == slurp(dir / "a" / "u0_seed5_member0.gnse"));
      CHECK(slurp(dir / sub / "series_seed5.csv") == slurp(dir / "a" / "series_seed5.csv"));
    }
    CHECK(ledgers[0] == ledgers[1]);

    cli::Options o;
    o.config_path = (dir / "run.ini").string();
    o.out = (dir / "c").string();
    o.seed = 6;
    std::ostringstream out, err;
    REQUIRE(cli::cmd_randomize(o, out, err) == 0);
    CHECK(slurp(dir / "c" / "u0_seed6_member0.gnse") != slurp(dir / "a" / "u0_seed5_member0.gnse"));
  }

  TEST_CASE("resume reproduces the ledger bit for bit") {
    const fs::path dir = scratch("resume");
    spit(dir / "run.ini", kSmallIni);
    cli::Options o;
    o.config_path = (dir / "run.ini").string();
    o.out = (dir / "full").string();
    std::ostringstream out, err;
    REQUIRE(cli::cmd_randomize(o, out, err) == 0);
    const std::string datum = (dir / "full" / "u0_seed5_member0.gnse").string();
    o.inputs = {datum};
    REQUIRE(cli::cmd_simulate(o, out, err) == 0);
    const std::string full = slurp(dir / "full" / "ledger_seed5.csv");

    fs::copy_file(dir / "full" / "checkpoint_seed5.gnse", dir / "ckpt.gnse");
    const Checkpoint cp = read_checkpoint((dir / "ckpt.gnse").string());
    REQUIRE(cp.header.time > 0.0);
    REQUIRE(cp.header.time < 2.0);

    o.out = (dir / "resumed").string();
    o.resume = (dir / "ckpt.gnse").string();
    REQUIRE_MESSAGE(cli::cmd_simulate(o, out, err) == 0, err.str());
    const std::string resumed = slurp(dir / "resumed" / "ledger_seed5.csv");
    const auto a = rows_after(full, cp.header.time);
    const auto b = rows_after(resumed, cp.header.time);
    REQUIRE(!a.empty());
    CHECK(a == b);
    CHECK(slurp(dir / "full" / "final_seed5.gnse") == slurp(dir / "resumed" / "final_seed5.gnse"));

    cli::Options wrong = o;
    wrong.seed = 99;
    std::ostringstream err2;
    REQUIRE(cli::cmd_randomize(wrong, out, err2) == 0);
    wrong.inputs = {(dir / "resumed" / "u0_seed99_member0.gnse").string()};
    CHECK(cli::cmd_simulate(wrong, out, err2) != 0);
    CHECK(err2.str().find("error:") != std::string::npos);
  }

  TEST_CASE("binary exit codes") {
    const char* bin = std::getenv("GNSE_BIN");
    if (!bin) return;
    const std::string b = bin;
    CHECK(std::system((b + " params 2 1.0 -0.5 > /dev/null").c_str()) == 0);
    CHECK(std::system((b + " params 2 0.5 -0.3 > /dev/null 2>&1").c_str()) != 0);
    CHECK(std::system((b + " no-such-command > /dev/null 2>&1").c_str()) != 0);
  }
}
