// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <memory>
#include <vector>

#include "tresca/fem.hpp"

namespace tresca {

/// Dense boundary system A_tilde u = b_tilde obtained by eliminating the
/// interior DOFs with a sparse Cholesky factorization. The factor and the
/// coupling block are retained so interior displacements can be recovered.
struct CondensedBoundarySystem {
  Eigen::MatrixXd A_tilde;  // 3p x 3p, symmetric positive definite
  Eigen::VectorXd b_tilde;  // 3p

  std::shared_ptr<const Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>> interior_factor;
  Eigen::SparseMatrix<double> K_IC;  // n_I x 3p coupling block
  Eigen::VectorXd l_I;
  std::vector<int> interior_dofs;  // indices into the free-DOF numbering
  std::vector<int> contact_dofs;

  int num_contact_dofs() const { return static_cast<int>(contact_dofs.size()); }
};

/// Schur complement onto contact_dofs: A_tilde = K_CC - K_CI K_II^-1 K_IC,
/// b_tilde = l_C - K_CI K_II^-1 l_I. Throws if the Cholesky factorization of
/// K_II breaks down.
CondensedBoundarySystem schur_reduce(const Eigen::SparseMatrix<double>& K,
                                     const Eigen::VectorXd& l,
                                     const std::vector<int>& contact_dofs);

CondensedBoundarySystem schur_reduce(const GlobalSystem& sys, const HexMesh& mesh);

/// Data of the generalized equation 0 in Ax - b + Q(x) on the contact
/// boundary. Per-node unknown block x^i = (u_tau1, u_tau2, u_nu, lambda).
/// Diagonal 4x4 blocks carry the multiplier coupling (entry (3,4) = -1,
/// entry (4,3) = +1); the gap enters through b only (b_4^i = -gap_i).
struct ReducedContactSystem {
  Eigen::MatrixXd A;  // 4p x 4p
  Eigen::VectorXd b;  // 4p
  int p = 0;
  Eigen::VectorXd phi;  // friction bound per contact node, >= 0
  Eigen::VectorXd gap;  // gap per contact node, >= 0
};

ReducedContactSystem expand_blocks(const CondensedBoundarySystem& cbs,
                                   const Eigen::VectorXd& gap, double phi);
ReducedContactSystem expand_blocks(const CondensedBoundarySystem& cbs,
                                   const Eigen::VectorXd& gap,
                                   const Eigen::VectorXd& phi);

/// u_I = K_II^-1 (l_I - K_IC u_C) via the retained factor.
Eigen::VectorXd recover_interior(const CondensedBoundarySystem& cbs,
                                 const Eigen::VectorXd& u_contact);

/// Divides A_tilde and b_tilde by stiffness_scale in place, posing the
/// downstream generalized equation in nondimensional force units (Young's
/// modulus is the natural scale). Displacements are unchanged; multipliers
/// and the friction bound are then measured in units of stiffness_scale.
/// The retained factor and coupling block stay in physical units, so
/// interior recovery is unaffected.
void nondimensionalize(CondensedBoundarySystem& cbs, double stiffness_scale);

}  // namespace tresca
