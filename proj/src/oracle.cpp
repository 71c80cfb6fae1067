// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#include "tresca/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace tresca {

double contact_energy(const Eigen::MatrixXd& A_tilde, const Eigen::VectorXd& b_tilde,
                      const Eigen::VectorXd& phi, const Eigen::VectorXd& u) {
  double e = 0.5 * u.dot(A_tilde * u) - b_tilde.dot(u);
  for (int i = 0; i < phi.size(); ++i) {
    e += phi(i) * u.segment<2>(3 * i).norm();
  }
  return e;
}

Eigen::VectorXd contact_energy_gradient(const Eigen::MatrixXd& A_tilde,
                                        const Eigen::VectorXd& b_tilde,
                                        const Eigen::VectorXd& u) {
  return A_tilde * u - b_tilde;
}

namespace {

double largest_eigenvalue(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n).normalized();
  double rho = 0.0;
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXd w = a * v;
    const double rho_new = v.dot(w);
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    v = w / wn;
    if (it > 10 && std::abs(rho_new - rho) <= 1e-12 * std::abs(rho_new)) {
      return rho_new;
    }
    rho = rho_new;
  }
  return rho;
}

// Per-node prox of step*(phi_i ||u_tau|| + indicator(u_nu >= -gap_i)).
void apply_prox(Eigen::VectorXd& z, const Eigen::VectorXd& gap, const Eigen::VectorXd& phi,
                double step) {
  const int p = static_cast<int>(gap.size());
  for (int i = 0; i < p; ++i) {
    auto zt = z.segment<2>(3 * i);
    const double thresh = step * phi(i);
    const double zn = zt.norm();
    if (zn <= thresh) {
      zt.setZero();
    } else {
      zt *= (1.0 - thresh / zn);
    }
    z(3 * i + 2) = std::max(z(3 * i + 2), -gap(i));
  }
}

}  // namespace

OracleSolution oracle_solve(const Eigen::MatrixXd& A_tilde, const Eigen::VectorXd& b_tilde,
                            const Eigen::VectorXd& gap, const Eigen::VectorXd& phi,
                            const OracleOptions& opts) {
  const int dim = static_cast<int>(A_tilde.rows());
  if (dim % 3 != 0 || A_tilde.cols() != dim || b_tilde.size() != dim) {
    throw std::invalid_argument("oracle_solve: system is not 3p-dimensional");
  }
  const int p = dim / 3;
  if (gap.size() != p || phi.size() != p) {
    throw std::invalid_argument("oracle_solve: gap/phi size must equal p");
  }
  if (p > opts.max_p) {
    throw std::invalid_argument("oracle_solve: p exceeds the desk-scale limit");
  }

  const double lip = largest_eigenvalue(A_tilde);
  if (!(lip > 0.0)) throw std::invalid_argument("oracle_solve: A_tilde is not positive");
  const double step = 1.0 / lip;

  // FISTA with objective-based adaptive restart.
  Eigen::VectorXd u = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd y = u;
  double t = 1.0;
  double f_prev = contact_energy(A_tilde, b_tilde, phi, u);

  OracleSolution sol;
  for (long it = 1; it <= opts.max_iter; ++it) {
    Eigen::VectorXd u_new = y - step * (A_tilde * y - b_tilde);
    apply_prox(u_new, gap, phi, step);

    Eigen::VectorXd fp = u_new - step * (A_tilde * u_new - b_tilde);
    apply_prox(fp, gap, phi, step);
    const double residual = (u_new - fp).lpNorm<Eigen::Infinity>();
    const double u_scale = std::max(1.0, u_new.lpNorm<Eigen::Infinity>());

    if (residual <= opts.tol * u_scale) {
      sol.u = u_new;
      sol.iterations = it;
      sol.residual = residual;
      break;
    }

    const double f_new = contact_energy(A_tilde, b_tilde, phi, u_new);
    if (f_new > f_prev) {
      t = 1.0;
      y = u_new;
    } else {
      const double t_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      y = u_new + ((t - 1.0) / t_new) * (u_new - u);
      t = t_new;
    }
    u = u_new;
    f_prev = f_new;

    if (it == opts.max_iter) {
      throw std::runtime_error("oracle_solve: iteration budget exhausted");
    }
  }

  sol.objective = contact_energy(A_tilde, b_tilde, phi, sol.u);
  sol.lambda.resize(p);
  const Eigen::VectorXd residual_vec = A_tilde * sol.u - b_tilde;
  for (int i = 0; i < p; ++i) sol.lambda(i) = residual_vec(3 * i + 2);
  return sol;
}

OracleSolution oracle_solve(const CondensedBoundarySystem& cbs, const Eigen::VectorXd& gap,
                            double phi, double tol) {
  OracleOptions opts;
  opts.tol = tol;
  const int p = static_cast<int>(gap.size());
  return oracle_solve(cbs.A_tilde, cbs.b_tilde, gap, Eigen::VectorXd::Constant(p, phi),
                      opts);
}

ResidualReport residual_check(const ReducedContactSystem& sys, const Eigen::VectorXd& x,
                              double tol) {
  if (x.size() != 4 * sys.p) {
    throw std::invalid_argument("residual_check: x has wrong dimension");
  }
  const Eigen::VectorXd f = sys.A * x - sys.b;

  ResidualReport rep;
  rep.scale = sys.b.lpNorm<Eigen::Infinity>();
  const double scale = rep.scale > 0.0 ? rep.scale : 1.0;

  for (int i = 0; i < sys.p; ++i) {
    const double lambda = x(4 * i + 3);
    const double slack = x(4 * i + 2) + sys.gap(i);  // u_nu + gap
    rep.lambda_negativity = std::max(rep.lambda_negativity, -lambda);
    rep.penetration = std::max(rep.penetration, -slack);
    rep.complementarity = std::max(rep.complementarity, std::abs(lambda * slack));
    rep.normal_equilibrium = std::max(rep.normal_equilibrium, std::abs(f(4 * i + 2)));

    const Eigen::Vector2d f12 = f.segment<2>(4 * i);
    rep.cone_violation = std::max(rep.cone_violation, f12.norm() - sys.phi(i));

    const Eigen::Vector2d u12 = x.segment<2>(4 * i);
    const double un = u12.norm();
    if (un > 1e-8 && sys.phi(i) > 0.0) {
      const double mis =
          (f12 + sys.phi(i) / un * u12).norm() / std::max(sys.phi(i), f12.norm());
      rep.slip_misalignment = std::max(rep.slip_misalignment, mis);
    }
  }
  rep.lambda_negativity = std::max(rep.lambda_negativity, 0.0);
  rep.penetration = std::max(rep.penetration, 0.0);
  rep.cone_violation = std::max(rep.cone_violation, 0.0);

  rep.feasible = rep.lambda_negativity <= tol && rep.penetration <= tol;
  rep.complementary = rep.complementarity <= tol * scale;
  rep.equilibrated = rep.normal_equilibrium <= tol;
  rep.in_cone = rep.cone_violation <= tol / scale;
  rep.aligned = rep.slip_misalignment <= 1e-6;
  rep.pass = rep.feasible && rep.complementary && rep.equilibrated && rep.in_cone &&
             rep.aligned;
  return rep;
}

}  // namespace tresca
