// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#include "tresca/runner.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "tresca/io.hpp"

namespace tresca {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(const clock_type::time_point& t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

RunArtifacts run(const RunConfig& config) {
  config.validate();

  const MeshLevelSpec spec = config.divisions
                                 ? MeshLevelSpec{config.level, *config.divisions}
                                 : MeshLevelSpec::from_level(config.level);

  RunArtifacts art;
  art.mesh = build_mesh(config.domain, spec);
  const HexMesh& mesh = art.mesh;
  const int p = mesh.num_contact_nodes();

  art.row.level = config.level;
  art.row.nodes = mesh.num_nodes();
  art.row.contact_nodes = p;

  const ElasticParams params{config.youngs_modulus, config.poisson_ratio};
  const TractionSpec tractions{config.traction_right, config.traction_top};

  auto t0 = clock_type::now();
  const Eigen::SparseMatrix<double> stiffness = assemble_stiffness(mesh, params);
  const Eigen::VectorXd load = assemble_surface_load(mesh, tractions);
  const GlobalSystem global = apply_dirichlet(stiffness, load, mesh);
  art.row.assembly_s = seconds_since(t0);

  t0 = clock_type::now();
  CondensedBoundarySystem cbs = schur_reduce(global, mesh);
  // The GE is posed in E-normalized force units: at this problem's stiffness
  // scale the stopping tolerance and the friction bound are calibrated for
  // O(1) data, and raw units would put the eps threshold below the
  // attainable floating-point residual floor.
  nondimensionalize(cbs, config.youngs_modulus);
  const Eigen::VectorXd gap = to_vector(gap_vector(mesh, config.domain));
  const ReducedContactSystem reduced = expand_blocks(cbs, gap, config.phi);
  art.row.reduction_s = seconds_since(t0);

  SolverOptions opts;
  opts.eps = config.eps;
  opts.max_iter = config.max_iter;
  opts.full_newton_debug = config.full_newton_debug;

  t0 = clock_type::now();
  art.report = solve(reduced, Eigen::VectorXd::Zero(4 * p), opts);
  art.row.solve_s = seconds_since(t0);
  art.row.iterations = art.report.iterations;
  art.row.status = art.report.status;

  art.contact_solution = art.report.x;
  Eigen::VectorXd u_contact(3 * p);
  Eigen::VectorXd lambda(p);
  for (int i = 0; i < p; ++i) {
    u_contact.segment<3>(3 * i) = art.report.x.segment<3>(4 * i);
    lambda(i) = art.report.x(4 * i + 3);
  }

  if (config.oracle_check && art.report.status == SolveStatus::converged) {
    const OracleSolution ref = oracle_solve(cbs, gap, config.phi, 1e-10);
    const double u_scale = ref.u.lpNorm<Eigen::Infinity>();
    const double l_scale = ref.lambda.lpNorm<Eigen::Infinity>();
    art.oracle_u_rel_diff =
        (u_contact - ref.u).lpNorm<Eigen::Infinity>() / (u_scale > 0.0 ? u_scale : 1.0);
    art.oracle_lambda_rel_diff =
        (lambda - ref.lambda).lpNorm<Eigen::Infinity>() / (l_scale > 0.0 ? l_scale : 1.0);
    art.oracle_checked = true;
  }

  // Full displacement field: interior recovered, Dirichlet zeros re-inserted.
  const Eigen::VectorXd u_interior = recover_interior(cbs, u_contact);
  Eigen::VectorXd u_free(global.num_free_dofs());
  for (size_t k = 0; k < cbs.interior_dofs.size(); ++k) {
    u_free(cbs.interior_dofs[k]) = u_interior(static_cast<Eigen::Index>(k));
  }
  for (size_t k = 0; k < cbs.contact_dofs.size(); ++k) {
    u_free(cbs.contact_dofs[k]) = u_contact(static_cast<Eigen::Index>(k));
  }
  art.full_displacement = Eigen::VectorXd::Zero(3 * mesh.num_nodes());
  for (int dof = 0; dof < 3 * mesh.num_nodes(); ++dof) {
    const int idx = global.dof_map[static_cast<size_t>(dof)];
    if (idx >= 0) art.full_displacement(dof) = u_free(idx);
  }

  if (!config.log_csv_path.empty()) export_iteration_log(art.report, config.log_csv_path);
  if (!config.export_vtk_path.empty()) {
    export_vtk(mesh, art.full_displacement, config.export_vtk_path);
  }
  return art;
}

std::vector<BenchmarkRow> run_sweep(const RunConfig& base, const std::vector<int>& levels) {
  if (levels.empty()) throw ConfigError("run_sweep: empty level list");

  std::vector<BenchmarkRow> rows;
  rows.reserve(levels.size());
  for (int level : levels) {
    RunConfig cfg = base;
    cfg.level = level;
    cfg.divisions.reset();
    cfg.export_vtk_path.clear();  // per-level artifacts are not written in a sweep
    cfg.log_csv_path.clear();
    BenchmarkRow row;
    row.level = level;
    try {
      row = run(cfg).row;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_benchmark_table(const std::vector<BenchmarkRow>& rows) {
  std::ostringstream out;
  out << "level     nodes(n)  assembly(s)  reduction(s)  nodes(p)  solve(s)  iters  status\n";
  for (const auto& r : rows) {
    char buf[160];
    if (r.error.empty()) {
      std::snprintf(buf, sizeof(buf), "%5d  %10ld  %11.3f  %12.3f  %8d  %8.3f  %5d  %s\n",
                    r.level, r.nodes, r.assembly_s, r.reduction_s, r.contact_nodes,
                    r.solve_s, r.iterations, to_string(r.status));
      out << buf;
    } else {
      std::snprintf(buf, sizeof(buf), "%5d  %10ld  %s  %s\n", r.level, r.nodes, "error:",
                    r.error.c_str());
      out << buf;
    }
  }
  return out.str();
}

}  // namespace tresca
