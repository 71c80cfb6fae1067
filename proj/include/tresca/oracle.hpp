// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "tresca/reduction.hpp"

namespace tresca {

/// Reference solution of the primal energy
///   min (1/2) u' A_tilde u - b_tilde' u + sum_i phi_i ||u_tau^i||
///   s.t. u_nu^i + gap_i >= 0,
/// computed independently of the Newton machinery.
struct OracleSolution {
  Eigen::VectorXd u;       // 3p
  Eigen::VectorXd lambda;  // p, recovered as (A_tilde u - b_tilde) normal components
  double objective = 0.0;
  long iterations = 0;
  double residual = 0.0;  // final fixed-point residual (inf norm)
};

struct OracleOptions {
  double tol = 1e-10;
  long max_iter = 5'000'000;
  int max_p = 1000;  // desk-scale guard
};

/// Energy value (1/2) u'Au - b'u + sum_i phi_i ||u_tau^i|| (indicator excluded).
double contact_energy(const Eigen::MatrixXd& A_tilde, const Eigen::VectorXd& b_tilde,
                      const Eigen::VectorXd& phi, const Eigen::VectorXd& u);

/// Gradient of the smooth part, A_tilde u - b_tilde.
Eigen::VectorXd contact_energy_gradient(const Eigen::MatrixXd& A_tilde,
                                        const Eigen::VectorXd& b_tilde,
                                        const Eigen::VectorXd& u);

/// Accelerated projected proximal-gradient solve, step 1/L with L estimated
/// by power iteration, adaptive restart. Terminates when the fixed-point
/// residual of the prox-gradient map drops below tol * max(1, ||u||_inf).
/// Throws on iteration-budget exhaustion or p > max_p.
OracleSolution oracle_solve(const Eigen::MatrixXd& A_tilde, const Eigen::VectorXd& b_tilde,
                            const Eigen::VectorXd& gap, const Eigen::VectorXd& phi,
                            const OracleOptions& opts = {});

OracleSolution oracle_solve(const CondensedBoundarySystem& cbs, const Eigen::VectorXd& gap,
                            double phi, double tol);

/// Residuals of the solution certificate at x (4p vector). scale = ||b||_inf.
struct ResidualReport {
  double lambda_negativity = 0.0;    // max(0, max_i -lambda_i), vs tol
  double penetration = 0.0;          // max(0, max_i -(u_nu_i + gap_i)), vs tol
  double complementarity = 0.0;      // max_i |lambda_i (u_nu_i + gap_i)|, vs tol*scale
  double normal_equilibrium = 0.0;   // max_i |f3_i|, vs tol
  double cone_violation = 0.0;       // max(0, max_i ||f12_i|| - phi_i), vs tol/scale
  double slip_misalignment = 0.0;    // relative, sliding nodes only, vs 1e-6
  double scale = 0.0;

  bool feasible = false;
  bool complementary = false;
  bool equilibrated = false;
  bool in_cone = false;
  bool aligned = false;
  bool pass = false;
};

/// Evaluates the certificate inequalities at x. tol is an absolute threshold
/// on feasibility and equilibrium residuals (the acceptance gate uses
/// tol = 1e-8 * ||b||_inf); the slip-alignment check is relative at 1e-6.
ResidualReport residual_check(const ReducedContactSystem& sys, const Eigen::VectorXd& x,
                              double tol);

}  // namespace tresca
