// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "tresca/config.hpp"
#include "tresca/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitSingularNewton = 3;
constexpr int kExitMaxIter = 4;

int status_exit_code(tresca::SolveStatus status) {
  switch (status) {
    case tresca::SolveStatus::converged: return kExitOk;
    case tresca::SolveStatus::singular_newton: return kExitSingularNewton;
    case tresca::SolveStatus::max_iter: return kExitMaxIter;
  }
  return kExitFailure;
}

std::vector<int> parse_sweep(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    throw tresca::ConfigError("--sweep expects a range A..B, got: " + text);
  }
  int lo = 0, hi = 0;
  try {
    lo = std::stoi(text.substr(0, dots));
    hi = std::stoi(text.substr(dots + 2));
  } catch (const std::exception&) {
    throw tresca::ConfigError("--sweep expects a range A..B, got: " + text);
  }
  if (lo < 1 || hi < lo) {
    throw tresca::ConfigError("--sweep range must satisfy 1 <= A <= B, got: " + text);
  }
  std::vector<int> levels;
  for (int l = lo; l <= hi; ++l) levels.push_back(l);
  return levels;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tresca: semismooth* Newton solver for 3D contact with Tresca friction"};

  std::string config_path, vtk_path, csv_path, sweep_range;
  int level = 0, max_iter = 0;
  double eps = 0.0, phi = 0.0;
  bool oracle_check = false, full_newton_debug = false, print_config = false;

  auto* opt_config = app.add_option("--config", config_path, "configuration file");
  auto* opt_level = app.add_option("--level", level, "mesh refinement level");
  auto* opt_eps = app.add_option("--eps", eps, "stopping tolerance on ||v_hat||");
  auto* opt_max_iter = app.add_option("--max-iter", max_iter, "iteration budget");
  auto* opt_phi = app.add_option("--phi", phi, "friction bound");
  auto* opt_vtk = app.add_option("--export-vtk", vtk_path, "write the deformed mesh (VTK)");
  auto* opt_csv = app.add_option("--log-csv", csv_path, "write the iteration log (CSV)");
  app.add_flag("--oracle-check", oracle_check, "cross-check against the reference solver");
  app.add_flag("--full-newton-debug", full_newton_debug, "solve the full 8p Newton system");
  app.add_option("--sweep", sweep_range, "run levels A..B and print a benchmark table");
  app.add_flag("--print-config", print_config, "print the effective configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    tresca::RunConfig cfg;
    if (*opt_config) cfg = tresca::parse_config_file(config_path);
    if (*opt_level) cfg.level = level;
    if (*opt_eps) cfg.eps = eps;
    if (*opt_max_iter) cfg.max_iter = max_iter;
    if (*opt_phi) cfg.phi = phi;
    if (*opt_vtk) cfg.export_vtk_path = vtk_path;
    if (*opt_csv) cfg.log_csv_path = csv_path;
    if (oracle_check) cfg.oracle_check = true;
    if (full_newton_debug) cfg.full_newton_debug = true;
    cfg.validate();

    if (print_config) {
      std::cout << tresca::serialize_config(cfg);
      return kExitOk;
    }

    if (!sweep_range.empty()) {
      const std::vector<int> levels = parse_sweep(sweep_range);
      const auto rows = tresca::run_sweep(cfg, levels);
      std::cout << tresca::format_benchmark_table(rows);
      int code = kExitOk;
      for (const auto& row : rows) {
        if (!row.error.empty()) return kExitFailure;
        code = std::max(code, status_exit_code(row.status));
      }
      return code;
    }

    const tresca::RunArtifacts art = tresca::run(cfg);
    std::cout << tresca::format_benchmark_table({art.row});
    if (art.oracle_checked) {
      std::printf("oracle check: |u - u_ref|/|u_ref| = %.3e, |lambda - lambda_ref|/|lambda_ref| = %.3e\n",
                  art.oracle_u_rel_diff, art.oracle_lambda_rel_diff);
      if (art.oracle_u_rel_diff > 1e-5 || art.oracle_lambda_rel_diff > 1e-4) {
        std::cerr << "oracle check FAILED\n";
        return kExitFailure;
      }
    }
    if (art.report.status != tresca::SolveStatus::converged) {
      std::cerr << "solver did not converge: " << art.report.message << "\n";
    }
    return status_exit_code(art.report.status);
  } catch (const tresca::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
