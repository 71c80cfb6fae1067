// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "tresca/mesh.hpp"

namespace tresca {

struct ElasticParams {
  double youngs_modulus = 2.1e9;
  double poisson_ratio = 0.277;

  double lame_lambda() const {
    const double e = youngs_modulus, nu = poisson_ratio;
    return e * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  }
  double lame_mu() const { return youngs_modulus / (2.0 * (1.0 + poisson_ratio)); }

  void validate() const;
};

struct TractionSpec {
  Eigen::Vector3d right_face{-5e8, 0.0, 0.0};
  Eigen::Vector3d top_face{0.0, 0.0, -1e8};
};

/// Stiffness matrix and load vector restricted to the free DOFs, with the
/// node*3+component -> free index map (-1 for constrained DOFs).
///
/// Free DOFs are numbered with all non-contact nodes first (in global node
/// order) and the contact-node DOFs as the trailing 3p block, in contact-node
/// order, so that the Schur partition is a contiguous split.
struct GlobalSystem {
  Eigen::SparseMatrix<double> K;
  Eigen::VectorXd l;
  std::vector<int> dof_map;

  int num_free_dofs() const { return static_cast<int>(l.size()); }
};

/// 24x24 stiffness of one trilinear hexahedron, DOFs ordered (node-major,
/// components x,y,z). 2x2x2 Gauss quadrature. Throws on a non-positive
/// Jacobian determinant.
Eigen::Matrix<double, 24, 24> element_stiffness(
    const std::array<std::array<double, 3>, 8>& corners, const ElasticParams& params);

/// Full 3n x 3n stiffness, no boundary conditions applied. Element scatter
/// runs in a fixed element order so assembly is bitwise reproducible.
Eigen::SparseMatrix<double> assemble_stiffness(const HexMesh& mesh,
                                               const ElasticParams& params);

/// Consistent surface load for the right/top traction faces, bilinear shape
/// functions with 2x2 Gauss quadrature per face.
Eigen::VectorXd assemble_surface_load(const HexMesh& mesh, const TractionSpec& tractions);

/// Condense Dirichlet DOFs by row/column deletion and permute contact DOFs
/// to the trailing block. Throws if no free DOFs remain.
GlobalSystem apply_dirichlet(const Eigen::SparseMatrix<double>& K,
                             const Eigen::VectorXd& l, const HexMesh& mesh);

/// Free-DOF indices of the contact nodes (3p entries, node-major), as
/// assigned by apply_dirichlet.
std::vector<int> contact_dof_indices(const GlobalSystem& sys, const HexMesh& mesh);

}  // namespace tresca
