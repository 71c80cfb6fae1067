// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "tresca/config.hpp"
#include "tresca/runner.hpp"

using namespace tresca;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// CSV text with the (wall-clock) time_ms column removed.
std::string strip_time_column(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    const auto last_comma = line.rfind(',');
    out << line.substr(0, last_comma) << '\n';
  }
  return out.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(TRESCA_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("run on the default level-2 configuration") {
  RunConfig cfg;
  cfg.log_csv_path = "runner_level2.csv";
  cfg.export_vtk_path = "runner_level2.vtk";
  const RunArtifacts art = run(cfg);

  CHECK(art.row.status == SolveStatus::converged);
  CHECK(art.row.iterations >= 4);
  CHECK(art.row.iterations <= 8);
  CHECK(art.row.nodes == 225);
  CHECK(art.row.contact_nodes == 40);

  SUBCASE("Dirichlet nodes carry zero displacement") {
    for (int node : art.mesh.dirichlet_nodes) {
      CHECK(art.full_displacement.segment<3>(3 * node).norm() == 0.0);
    }
    CHECK(art.full_displacement.lpNorm<Eigen::Infinity>() > 0.0);
  }

  SUBCASE("exports were written") {
    CHECK(slurp("runner_level2.csv").rfind("iter,", 0) == 0);
    CHECK(slurp("runner_level2.vtk").rfind("# vtk", 0) == 0);
  }
}

TEST_CASE("looser stopping rule needs fewer iterations") {
  RunConfig tight;
  RunConfig loose;
  loose.eps = 1e-1;
  const int tight_iters = run(tight).row.iterations;
  const int loose_iters = run(loose).row.iterations;
  CHECK(loose_iters < tight_iters);
}

TEST_CASE("oracle cross-check flag") {
  RunConfig cfg;
  cfg.oracle_check = true;
  const RunArtifacts art = run(cfg);
  REQUIRE(art.oracle_checked);
  CHECK(art.oracle_u_rel_diff <= 1e-5);
  CHECK(art.oracle_lambda_rel_diff <= 1e-4);
}

TEST_CASE("run_sweep") {
  RunConfig cfg;

  SUBCASE("single level") {
    const auto rows = run_sweep(cfg, {2});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].level == 2);
    CHECK(rows[0].status == SolveStatus::converged);
  }

  SUBCASE("levels in order with a formatted table") {
    const auto rows = run_sweep(cfg, {2, 3});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].level == 2);
    CHECK(rows[1].level == 3);
    CHECK(rows[1].nodes == 637);
    const std::string table = format_benchmark_table(rows);
    CHECK(table.find("level") != std::string::npos);
    CHECK(table.find("converged") != std::string::npos);
  }

  SUBCASE("empty list is rejected") {
    CHECK_THROWS_AS(run_sweep(cfg, {}), ConfigError);
  }

  SUBCASE("continues past per-level failures") {
    RunConfig bad = cfg;
    bad.max_iter = 1;  // forces max_iter status, not an exception
    const auto rows = run_sweep(bad, {2, 3});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].status == SolveStatus::max_iter);
    CHECK(rows[1].status == SolveStatus::max_iter);
  }
}

TEST_CASE("config parsing") {
  const std::string text =
      "# comment line\n"
      "level = 3\n"
      "phi = 0.5\n"
      "eps = 1e-8\n"
      "max_iter = 42\n"
      "traction_right = -1e8 0 0\n"
      "oracle_check = true\n";
  const RunConfig cfg = parse_config_text(text);
  CHECK(cfg.level == 3);
  CHECK(cfg.phi == 0.5);
  CHECK(cfg.eps == 1e-8);
  CHECK(cfg.max_iter == 42);
  CHECK(cfg.traction_right == Eigen::Vector3d(-1e8, 0, 0));
  CHECK(cfg.oracle_check);

  SUBCASE("unknown keys are rejected") {
    CHECK_THROWS_AS(parse_config_text("no_such_key = 1\n"), ConfigError);
  }
  SUBCASE("malformed numbers are rejected") {
    CHECK_THROWS_AS(parse_config_text("phi = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("traction_top = 1 2\n"), ConfigError);
  }
  SUBCASE("invalid physics is rejected by validate") {
    RunConfig bad = parse_config_text("poisson_ratio = 0.6\n");
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    RunConfig bad2 = parse_config_text("level = 0\n");
    CHECK_THROWS_AS(bad2.validate(), ConfigError);
  }
}

TEST_CASE("config round trip reproduces a run bit for bit") {
  RunConfig cfg;
  cfg.level = 2;
  cfg.log_csv_path = "roundtrip_a.csv";
  cfg.export_vtk_path = "roundtrip_a.vtk";
  const RunArtifacts first = run(cfg);

  RunConfig reparsed = parse_config_text(serialize_config(cfg));
  reparsed.log_csv_path = "roundtrip_b.csv";
  reparsed.export_vtk_path = "roundtrip_b.vtk";
  const RunArtifacts second = run(reparsed);

  CHECK(first.row.iterations == second.row.iterations);
  CHECK(first.report.history.size() == second.report.history.size());
  CHECK(slurp("roundtrip_a.vtk") == slurp("roundtrip_b.vtk"));
  // The CSV differs only in the wall-clock column.
  CHECK(strip_time_column(slurp("roundtrip_a.csv")) ==
        strip_time_column(slurp("roundtrip_b.csv")));
}

TEST_CASE("command-line interface exit codes") {
  SUBCASE("converged run exits 0") {
    CHECK(run_cli("--level 2") == 0);
  }
  SUBCASE("config errors exit 2") {
    CHECK(run_cli("--level 0") == 2);
    CHECK(run_cli("--config does_not_exist.cfg") == 2);
    CHECK(run_cli("--unknown-flag") == 2);
  }
  SUBCASE("iteration-budget exhaustion exits 4") {
    CHECK(run_cli("--level 2 --max-iter 1") == 4);
  }
  SUBCASE("sweep and print-config run clean") {
    CHECK(run_cli("--sweep 2..3") == 0);
    CHECK(run_cli("--level 3 --print-config") == 0);
  }
}

TEST_CASE("CLI flags override config-file values") {
  {
    std::ofstream out("cli_override.cfg");
    out << "level = 2\neps = 1e-6\nmax_iter = 77\n";
  }
  const std::string cmd = std::string(TRESCA_CLI_PATH) +
                          " --config cli_override.cfg --level 3 --print-config > "
                          "cli_override_out.txt 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  const std::string text = slurp("cli_override_out.txt");
  CHECK(text.find("level = 3") != std::string::npos);
  CHECK(text.find("max_iter = 77") != std::string::npos);
}
