// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#include "tresca/ssn.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace tresca {

Eigen::Vector2d prox_tangential(const Eigen::Vector2d& w, const Eigen::Vector2d& g_vec,
                                double phi) {
  const Eigen::Vector2d s = w - g_vec;
  const double sn = s.norm();
  if (sn <= phi) return -w;  // threshold branch: w + v == 0 exactly
  return (1.0 - phi / sn) * s - w;
}

double approx_normal(double f3) { return -f3; }

double approx_multiplier(double x3, double x4) { return std::max(-x3, -x4); }

ApproxStepResult approximation_step(const Eigen::VectorXd& x,
                                    const ReducedContactSystem& sys) {
  const int p = sys.p;
  if (x.size() != 4 * p) {
    throw std::invalid_argument("approximation_step: iterate has wrong dimension");
  }

  ApproxStepResult ar;
  ar.x_hat = x;
  ar.v_hat.resize(4 * p);

  const Eigen::VectorXd f = sys.A * x - sys.b;
  for (int i = 0; i < p; ++i) {
    ar.v_hat.segment<2>(4 * i) =
        prox_tangential(x.segment<2>(4 * i), f.segment<2>(4 * i), sys.phi(i));
    ar.v_hat(4 * i + 2) = approx_normal(f(4 * i + 2));
    // Linear coefficient of subproblem (iii) is the normal residual u_nu + gap,
    // i.e. the fourth component of f; the constraint bounds the multiplier.
    ar.v_hat(4 * i + 3) = approx_multiplier(f(4 * i + 3), x(4 * i + 3));
  }
  ar.d_hat = x + ar.v_hat;  // active branches cancel exactly in floating point
  return ar;
}

int NewtonMatrices::stick_count() const {
  return static_cast<int>(
      std::count(tangential_branch.begin(), tangential_branch.end(), TangentialBranch::stick));
}

int NewtonMatrices::contact_count() const {
  return static_cast<int>(
      std::count(normal_branch.begin(), normal_branch.end(), NormalBranch::contact));
}

Eigen::MatrixXd NewtonMatrices::G_dense() const {
  return Eigen::MatrixXd(G_diag.asDiagonal());
}

Eigen::MatrixXd NewtonMatrices::H_dense() const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(4 * p, 4 * p);
  for (int i = 0; i < p; ++i) {
    h.block<2, 2>(4 * i, 4 * i) = H_tangential[static_cast<size_t>(i)];
    h(4 * i + 3, 4 * i + 3) = H_multiplier(i);
  }
  return h;
}

NewtonMatrices build_GH(const Eigen::VectorXd& d_hat, const Eigen::VectorXd& phi) {
  if (d_hat.size() % 4 != 0) {
    throw std::invalid_argument("build_GH: d_hat dimension not a multiple of 4");
  }
  const int p = static_cast<int>(d_hat.size()) / 4;
  if (phi.size() != p) throw std::invalid_argument("build_GH: phi size must equal p");

  NewtonMatrices nm;
  nm.p = p;
  nm.G_diag.resize(4 * p);
  nm.H_tangential.resize(static_cast<size_t>(p));
  nm.H_multiplier.resize(p);
  nm.tangential_branch.resize(static_cast<size_t>(p));
  nm.normal_branch.resize(static_cast<size_t>(p));

  for (int i = 0; i < p; ++i) {
    const double d1 = d_hat(4 * i), d2 = d_hat(4 * i + 1);
    if (d1 == 0.0 && d2 == 0.0) {
      nm.tangential_branch[static_cast<size_t>(i)] = TangentialBranch::stick;
      nm.G_diag(4 * i) = 0.0;
      nm.G_diag(4 * i + 1) = 0.0;
      nm.H_tangential[static_cast<size_t>(i)] = Eigen::Matrix2d::Identity();
    } else {
      nm.tangential_branch[static_cast<size_t>(i)] = TangentialBranch::slide;
      nm.G_diag(4 * i) = 1.0;
      nm.G_diag(4 * i + 1) = 1.0;
      const double nd = std::hypot(d1, d2);
      const double c = phi(i) / (nd * nd * nd);
      Eigen::Matrix2d h1;
      h1 << d2 * d2, -d1 * d2, -d1 * d2, d1 * d1;
      nm.H_tangential[static_cast<size_t>(i)] = c * h1;
    }

    nm.G_diag(4 * i + 2) = 1.0;  // middle diagonal entry of G is 1, of H is 0

    const double d4 = d_hat(4 * i + 3);
    if (d4 < 0.0) throw std::invalid_argument("build_GH: d_hat_4 must be nonnegative");
    if (d4 == 0.0) {
      nm.normal_branch[static_cast<size_t>(i)] = NormalBranch::no_contact;
      nm.G_diag(4 * i + 3) = 0.0;
      nm.H_multiplier(i) = 1.0;
    } else {
      nm.normal_branch[static_cast<size_t>(i)] = NormalBranch::contact;
      nm.G_diag(4 * i + 3) = 1.0;
      nm.H_multiplier(i) = 0.0;
    }
  }
  return nm;
}

NewtonMatrices build_GH(const Eigen::VectorXd& d_hat, double phi) {
  return build_GH(d_hat, Eigen::VectorXd::Constant(d_hat.size() / 4, phi));
}

namespace {

// Zero or non-finite pivots mean a structurally singular Newton system;
// the ratio of extreme pivots is kept as a condition diagnostic.
void check_pivots(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu, double& cond_estimate) {
  const auto diag = lu.matrixLU().diagonal();
  double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
  for (Eigen::Index k = 0; k < diag.size(); ++k) {
    const double a = std::abs(diag(k));
    if (!std::isfinite(a)) throw SingularNewtonError("Newton matrix has non-finite pivot", 0.0);
    dmin = std::min(dmin, a);
    dmax = std::max(dmax, a);
  }
  cond_estimate = dmax > 0.0 ? dmin / dmax : 0.0;
  if (dmin == 0.0) {
    throw SingularNewtonError("Newton matrix is singular (zero pivot)", cond_estimate);
  }
}

}  // namespace

Eigen::VectorXd newton_step(const ReducedContactSystem& sys, const ApproxStepResult& ar,
                            const NewtonMatrices& nm, bool full_system) {
  const int n4 = 4 * sys.p;
  if (nm.p != sys.p || ar.v_hat.size() != n4) {
    throw std::invalid_argument("newton_step: inconsistent inputs");
  }

  double cond = 0.0;
  if (full_system) {
    // D z = y_hat with D = [[A, -H], [I, G]], y_hat = (-v, -v); next x = x_hat - z_1.
    Eigen::MatrixXd d(2 * n4, 2 * n4);
    d.topLeftCorner(n4, n4) = sys.A;
    d.topRightCorner(n4, n4) = -nm.H_dense();
    d.bottomLeftCorner(n4, n4) = Eigen::MatrixXd::Identity(n4, n4);
    d.bottomRightCorner(n4, n4) = nm.G_dense();
    Eigen::VectorXd y(2 * n4);
    y << -ar.v_hat, -ar.v_hat;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(d);
    check_pivots(lu, cond);
    const Eigen::VectorXd z = lu.solve(y);
    if (!z.allFinite()) throw SingularNewtonError("Newton solve produced non-finite step", cond);
    return ar.x_hat - z.head(n4);
  }

  // Reduced system (A G + H) z2 = (I - A) v_hat; next x = d_hat + G z2.
  Eigen::MatrixXd m = sys.A;
  for (int j = 0; j < n4; ++j) {
    if (nm.G_diag(j) == 0.0) m.col(j).setZero();
  }
  for (int i = 0; i < sys.p; ++i) {
    m.block<2, 2>(4 * i, 4 * i) += nm.H_tangential[static_cast<size_t>(i)];
    m(4 * i + 3, 4 * i + 3) += nm.H_multiplier(i);
  }
  const Eigen::VectorXd rhs = ar.v_hat - sys.A * ar.v_hat;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  check_pivots(lu, cond);
  const Eigen::VectorXd z2 = lu.solve(rhs);
  if (!z2.allFinite()) throw SingularNewtonError("Newton solve produced non-finite step", cond);
  return ar.d_hat + nm.G_diag.cwiseProduct(z2);
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::singular_newton: return "singular_newton";
  }
  return "unknown";
}

SolveReport solve(const ReducedContactSystem& sys, const Eigen::VectorXd& x0,
                  const SolverOptions& opts) {
  if (!(opts.eps > 0.0)) throw std::invalid_argument("solve: eps must be positive");
  if (opts.max_iter < 1) throw std::invalid_argument("solve: max_iter must be >= 1");
  if (x0.size() != 4 * sys.p) throw std::invalid_argument("solve: x0 has wrong dimension");

  using clock = std::chrono::steady_clock;
  SolveReport rep;
  Eigen::VectorXd x = x0;

  for (int k = 1; k <= opts.max_iter; ++k) {
    const auto t0 = clock::now();
    const ApproxStepResult ar = approximation_step(x, sys);
    const NewtonMatrices nm = build_GH(ar.d_hat, sys.phi);
    if (opts.record_iterates) rep.iterates.push_back(x);

    IterationRecord rec;
    rec.norm_v = ar.norm_v();
    rec.stick_count = nm.stick_count();
    rec.contact_count = nm.contact_count();

    auto elapsed_ms = [&t0]() {
      return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    };

    if (rec.norm_v <= opts.eps) {
      rec.time_ms = elapsed_ms();
      rep.history.push_back(rec);
      rep.status = SolveStatus::converged;
      rep.iterations = k - 1;
      rep.x = x;
      return rep;
    }

    try {
      x = newton_step(sys, ar, nm, opts.full_newton_debug);
    } catch (const SingularNewtonError& err) {
      rec.time_ms = elapsed_ms();
      rep.history.push_back(rec);
      rep.status = SolveStatus::singular_newton;
      rep.iterations = k - 1;
      rep.failure_iteration = k;
      rep.cond_estimate = err.cond_estimate;
      rep.message = err.what();
      rep.x = ar.x_hat;
      return rep;
    }
    if (!x.allFinite()) {
      rec.time_ms = elapsed_ms();
      rep.history.push_back(rec);
      rep.status = SolveStatus::singular_newton;
      rep.iterations = k - 1;
      rep.failure_iteration = k;
      rep.message = "Newton step produced a non-finite iterate";
      rep.x = ar.x_hat;
      return rep;
    }

    rec.time_ms = elapsed_ms();
    rep.history.push_back(rec);
  }

  rep.status = SolveStatus::max_iter;
  rep.iterations = opts.max_iter;
  rep.message = "no convergence within the iteration budget";
  rep.x = x;
  return rep;
}

SolveReport solve(const ReducedContactSystem& sys, const Eigen::VectorXd& x0, double eps,
                  int max_iter) {
  SolverOptions opts;
  opts.eps = eps;
  opts.max_iter = max_iter;
  return solve(sys, x0, opts);
}

}  // namespace tresca
