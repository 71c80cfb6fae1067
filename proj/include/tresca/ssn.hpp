// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "tresca/reduction.hpp"

namespace tresca {

// Iterates live in R^{4p} with the per-node block view
//   x.segment<4>(4*i) = (u_tau1, u_tau2, u_nu, lambda).

/// Minimizer of (1/2)<v,v> + <g_vec,v> + phi*||w + v|| over v in R^2.
/// With s = w - g_vec: v = -w when ||s|| <= phi (so w + v == 0 exactly),
/// otherwise v = (1 - phi/||s||) s - w.
Eigen::Vector2d prox_tangential(const Eigen::Vector2d& w, const Eigen::Vector2d& g_vec,
                                double phi);

/// Minimizer of (1/2) v^2 + f3 v over v in R: v = -f3.
double approx_normal(double f3);

/// Minimizer of (1/2) v^2 + x3 v subject to x4 + v >= 0:
/// v = max(-x3, -x4). When the constraint is active, x4 + v == 0 exactly.
double approx_multiplier(double x3, double x4);

/// Output of the approximation step at x: v_hat collects the per-node
/// subproblem solutions, d_hat = x_hat + v_hat, and the graph point is
/// (x_hat, d_hat, y_hat) with y_hat = (-v_hat, -v_hat).
struct ApproxStepResult {
  Eigen::VectorXd x_hat;
  Eigen::VectorXd d_hat;
  Eigen::VectorXd v_hat;

  double norm_v() const { return v_hat.norm(); }
};

ApproxStepResult approximation_step(const Eigen::VectorXd& x,
                                    const ReducedContactSystem& sys);

enum class TangentialBranch { stick, slide };
enum class NormalBranch { no_contact, contact };

/// Block-diagonal Newton matrices G = diag(G1^i, 1, G2^i) and
/// H = diag(H1^i, 0, H2^i), stored compactly. G is a 0/1 diagonal matrix
/// since G1^i is 0 or I and G2^i is 0 or 1.
struct NewtonMatrices {
  int p = 0;
  Eigen::VectorXd G_diag;                    // 4p entries in {0,1}
  std::vector<Eigen::Matrix2d> H_tangential;  // H1^i
  Eigen::VectorXd H_multiplier;              // H2^i
  std::vector<TangentialBranch> tangential_branch;
  std::vector<NormalBranch> normal_branch;

  int stick_count() const;
  int contact_count() const;  // nodes with d_hat_4 > 0

  Eigen::MatrixXd G_dense() const;
  Eigen::MatrixXd H_dense() const;
};

/// Branch rules: d_hat_12 == 0 -> G1 = 0, H1 = I (stick); otherwise G1 = I,
/// H1 = phi/||d12||^3 * [[d2^2, -d1 d2], [-d1 d2, d1^2]] (slide).
/// d_hat_4 == 0 -> G2 = 0, H2 = 1; d_hat_4 > 0 -> G2 = 1, H2 = 0.
/// Branch detection relies on the exact zeros the approximation step
/// produces. Throws on d_hat_4 < 0.
NewtonMatrices build_GH(const Eigen::VectorXd& d_hat, const Eigen::VectorXd& phi);
NewtonMatrices build_GH(const Eigen::VectorXd& d_hat, double phi);

class SingularNewtonError : public std::runtime_error {
 public:
  explicit SingularNewtonError(const std::string& what, double cond)
      : std::runtime_error(what), cond_estimate(cond) {}
  double cond_estimate;
};

/// One Newton step. Default path solves the reduced 4p system
/// (A G + H) z2 = (I - A) v_hat and returns d_hat + G z2; with
/// full_system = true it solves the 8p system D z = y_hat,
/// D = [[A, -H], [I, G]], and returns x_hat - z_1 (debug/verification path).
/// Throws SingularNewtonError if the factorization is singular.
Eigen::VectorXd newton_step(const ReducedContactSystem& sys, const ApproxStepResult& ar,
                            const NewtonMatrices& nm, bool full_system = false);

enum class SolveStatus { converged, max_iter, singular_newton };

const char* to_string(SolveStatus status);

struct IterationRecord {
  double norm_v = 0.0;
  int stick_count = 0;
  int contact_count = 0;
  double time_ms = 0.0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::max_iter;
  int iterations = 0;  // Newton steps performed
  std::vector<IterationRecord> history;
  Eigen::VectorXd x;
  std::vector<Eigen::VectorXd> iterates;  // x^(0), x^(1), ...
  int failure_iteration = -1;
  double cond_estimate = 0.0;
  std::string message;
};

struct SolverOptions {
  double eps = 1e-6;
  int max_iter = 100;
  bool full_newton_debug = false;
  bool record_iterates = true;
};

/// Iterate approximation step -> stopping test ||v_hat|| <= eps ->
/// build_GH -> Newton step. The stopping norm is the Euclidean norm of the
/// full 4p vector v_hat.
SolveReport solve(const ReducedContactSystem& sys, const Eigen::VectorXd& x0,
                  const SolverOptions& opts = {});

SolveReport solve(const ReducedContactSystem& sys, const Eigen::VectorXd& x0, double eps,
                  int max_iter);

}  // namespace tresca
