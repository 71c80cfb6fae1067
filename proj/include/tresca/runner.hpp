// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "tresca/config.hpp"
#include "tresca/oracle.hpp"
#include "tresca/reduction.hpp"
#include "tresca/ssn.hpp"

namespace tresca {

struct BenchmarkRow {
  int level = 0;
  long nodes = 0;           // n
  int contact_nodes = 0;    // p
  double assembly_s = 0.0;
  double reduction_s = 0.0;
  double solve_s = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::max_iter;
  std::string error;  // nonempty if the level failed outside the solver
};

struct RunArtifacts {
  BenchmarkRow row;
  SolveReport report;
  HexMesh mesh;
  Eigen::VectorXd full_displacement;  // 3n, Dirichlet zeros re-inserted
  Eigen::VectorXd contact_solution;   // the 4p iterate
  bool oracle_checked = false;
  double oracle_u_rel_diff = 0.0;
  double oracle_lambda_rel_diff = 0.0;
};

/// mesh -> assembly -> Dirichlet condensation -> Schur reduction -> solve ->
/// optional oracle cross-check -> interior recovery -> exports.
RunArtifacts run(const RunConfig& config);

/// Runs the configuration at each level in order, continuing past
/// per-level failures. Throws ConfigError on an empty level list.
std::vector<BenchmarkRow> run_sweep(const RunConfig& base, const std::vector<int>& levels);

/// Plain-text table with level, n, assembly, reduction, p, solve, iters, status.
std::string format_benchmark_table(const std::vector<BenchmarkRow>& rows);

}  // namespace tresca
