// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#include "tresca/fem.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace tresca {

void ElasticParams::validate() const {
  if (!(youngs_modulus > 0.0)) {
    throw std::invalid_argument("ElasticParams: Young's modulus must be positive");
  }
  if (!(poisson_ratio > -1.0 && poisson_ratio < 0.5)) {
    throw std::invalid_argument("ElasticParams: Poisson ratio must lie in (-1, 0.5)");
  }
}

namespace {

// Reference corner signs, VTK hexahedron order.
constexpr double kCorner[8][3] = {{-1, -1, -1}, {+1, -1, -1}, {+1, +1, -1}, {-1, +1, -1},
                                  {-1, -1, +1}, {+1, -1, +1}, {+1, +1, +1}, {-1, +1, +1}};

constexpr double kGauss1d[2] = {-0.5773502691896257645091488, 0.5773502691896257645091488};

// Gradients of the eight trilinear shape functions at (xi, eta, zeta).
Eigen::Matrix<double, 8, 3> shape_gradients(double xi, double eta, double zeta) {
  Eigen::Matrix<double, 8, 3> g;
  for (int a = 0; a < 8; ++a) {
    const double sx = kCorner[a][0], sy = kCorner[a][1], sz = kCorner[a][2];
    g(a, 0) = 0.125 * sx * (1.0 + sy * eta) * (1.0 + sz * zeta);
    g(a, 1) = 0.125 * sy * (1.0 + sx * xi) * (1.0 + sz * zeta);
    g(a, 2) = 0.125 * sz * (1.0 + sx * xi) * (1.0 + sy * eta);
  }
  return g;
}

Eigen::Matrix<double, 6, 6> voigt_elasticity(const ElasticParams& params) {
  const double la = params.lame_lambda();
  const double mu = params.lame_mu();
  Eigen::Matrix<double, 6, 6> c = Eigen::Matrix<double, 6, 6>::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) c(i, j) = la;
    c(i, i) += 2.0 * mu;
    c(3 + i, 3 + i) = mu;
  }
  return c;
}

}  // namespace

Eigen::Matrix<double, 24, 24> element_stiffness(
    const std::array<std::array<double, 3>, 8>& corners, const ElasticParams& params) {
  params.validate();

  Eigen::Matrix<double, 8, 3> x;
  for (int a = 0; a < 8; ++a) {
    for (int c = 0; c < 3; ++c) x(a, c) = corners[static_cast<size_t>(a)][static_cast<size_t>(c)];
  }

  const Eigen::Matrix<double, 6, 6> cmat = voigt_elasticity(params);
  Eigen::Matrix<double, 24, 24> ke = Eigen::Matrix<double, 24, 24>::Zero();

  for (int gx = 0; gx < 2; ++gx) {
    for (int gy = 0; gy < 2; ++gy) {
      for (int gz = 0; gz < 2; ++gz) {
        const Eigen::Matrix<double, 8, 3> gref =
            shape_gradients(kGauss1d[gx], kGauss1d[gy], kGauss1d[gz]);
        const Eigen::Matrix3d jac = x.transpose() * gref;  // J_ij = dx_i/dxi_j
        const double detj = jac.determinant();
        if (!(detj > 0.0)) {
          throw std::runtime_error("element_stiffness: non-positive Jacobian determinant");
        }
        // dN/dx = J^-T dN/dxi
        const Eigen::Matrix<double, 8, 3> gphys =
            gref * jac.inverse();  // row a: (dNa/dx, dNa/dy, dNa/dz)

        // Voigt order (xx, yy, zz, xy, yz, zx), engineering shear.
        Eigen::Matrix<double, 6, 24> b = Eigen::Matrix<double, 6, 24>::Zero();
        for (int a = 0; a < 8; ++a) {
          const double dx = gphys(a, 0), dy = gphys(a, 1), dz = gphys(a, 2);
          const int col = 3 * a;
          b(0, col + 0) = dx;
          b(1, col + 1) = dy;
          b(2, col + 2) = dz;
          b(3, col + 0) = dy;
          b(3, col + 1) = dx;
          b(4, col + 1) = dz;
          b(4, col + 2) = dy;
          b(5, col + 0) = dz;
          b(5, col + 2) = dx;
        }
        ke.noalias() += b.transpose() * cmat * b * detj;
      }
    }
  }

  ke = 0.5 * (ke + ke.transpose()).eval();
  return ke;
}

Eigen::SparseMatrix<double> assemble_stiffness(const HexMesh& mesh,
                                               const ElasticParams& params) {
  const int n = mesh.num_nodes();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(mesh.num_elements()) * 24 * 24);

  for (const auto& elem : mesh.elements) {
    std::array<std::array<double, 3>, 8> corners;
    for (int a = 0; a < 8; ++a) {
      corners[static_cast<size_t>(a)] = mesh.node_coords[static_cast<size_t>(elem[static_cast<size_t>(a)])];
    }
    const Eigen::Matrix<double, 24, 24> ke = element_stiffness(corners, params);
    for (int a = 0; a < 8; ++a) {
      for (int ca = 0; ca < 3; ++ca) {
        const int row = 3 * elem[static_cast<size_t>(a)] + ca;
        for (int bnode = 0; bnode < 8; ++bnode) {
          for (int cb = 0; cb < 3; ++cb) {
            triplets.emplace_back(row, 3 * elem[static_cast<size_t>(bnode)] + cb,
                                  ke(3 * a + ca, 3 * bnode + cb));
          }
        }
      }
    }
  }

  Eigen::SparseMatrix<double> k(3 * n, 3 * n);
  k.setFromTriplets(triplets.begin(), triplets.end());
  return k;
}

namespace {

constexpr double kQuadCorner[4][2] = {{-1, -1}, {+1, -1}, {+1, +1}, {-1, +1}};

void accumulate_face_load(const HexMesh& mesh, const std::array<int, 4>& face,
                          const Eigen::Vector3d& traction, Eigen::VectorXd& load) {
  Eigen::Matrix<double, 4, 3> x;
  for (int a = 0; a < 4; ++a) {
    for (int c = 0; c < 3; ++c) {
      x(a, c) = mesh.node_coords[static_cast<size_t>(face[static_cast<size_t>(a)])][static_cast<size_t>(c)];
    }
  }
  for (int gx = 0; gx < 2; ++gx) {
    for (int gy = 0; gy < 2; ++gy) {
      const double xi = kGauss1d[gx], eta = kGauss1d[gy];
      Eigen::Vector4d shape;
      Eigen::Matrix<double, 4, 2> grad;
      for (int a = 0; a < 4; ++a) {
        const double sx = kQuadCorner[a][0], sy = kQuadCorner[a][1];
        shape(a) = 0.25 * (1.0 + sx * xi) * (1.0 + sy * eta);
        grad(a, 0) = 0.25 * sx * (1.0 + sy * eta);
        grad(a, 1) = 0.25 * sy * (1.0 + sx * xi);
      }
      const Eigen::Vector3d t_xi = x.transpose() * grad.col(0);
      const Eigen::Vector3d t_eta = x.transpose() * grad.col(1);
      const double ds = t_xi.cross(t_eta).norm();
      for (int a = 0; a < 4; ++a) {
        load.segment<3>(3 * face[static_cast<size_t>(a)]) += traction * (shape(a) * ds);
      }
    }
  }
}

}  // namespace

Eigen::VectorXd assemble_surface_load(const HexMesh& mesh, const TractionSpec& tractions) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(3 * mesh.num_nodes());
  for (const auto& face : mesh.traction_faces_right) {
    accumulate_face_load(mesh, face, tractions.right_face, load);
  }
  for (const auto& face : mesh.traction_faces_top) {
    accumulate_face_load(mesh, face, tractions.top_face, load);
  }
  return load;
}

GlobalSystem apply_dirichlet(const Eigen::SparseMatrix<double>& K,
                             const Eigen::VectorXd& l, const HexMesh& mesh) {
  const int n = mesh.num_nodes();
  if (K.rows() != 3 * n || l.size() != 3 * n) {
    throw std::invalid_argument("apply_dirichlet: system size does not match mesh");
  }

  std::vector<bool> fixed(static_cast<size_t>(n), false);
  for (int node : mesh.dirichlet_nodes) fixed[static_cast<size_t>(node)] = true;
  std::vector<bool> contact(static_cast<size_t>(n), false);
  for (int node : mesh.contact_nodes) contact[static_cast<size_t>(node)] = true;

  GlobalSystem sys;
  sys.dof_map.assign(static_cast<size_t>(3 * n), -1);

  // Non-contact free nodes first, contact nodes as the trailing block.
  int next = 0;
  for (int node = 0; node < n; ++node) {
    if (fixed[static_cast<size_t>(node)] || contact[static_cast<size_t>(node)]) continue;
    for (int c = 0; c < 3; ++c) sys.dof_map[static_cast<size_t>(3 * node + c)] = next++;
  }
  for (int node : mesh.contact_nodes) {
    for (int c = 0; c < 3; ++c) sys.dof_map[static_cast<size_t>(3 * node + c)] = next++;
  }
  if (next == 0) throw std::runtime_error("apply_dirichlet: every node is constrained");

  sys.l.resize(next);
  for (int dof = 0; dof < 3 * n; ++dof) {
    const int target = sys.dof_map[static_cast<size_t>(dof)];
    if (target >= 0) sys.l(target) = l(dof);
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(K.nonZeros()));
  for (int col = 0; col < K.outerSize(); ++col) {
    const int cj = sys.dof_map[static_cast<size_t>(col)];
    if (cj < 0) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, col); it; ++it) {
      const int ri = sys.dof_map[static_cast<size_t>(it.row())];
      if (ri >= 0) triplets.emplace_back(ri, cj, it.value());
    }
  }
  sys.K.resize(next, next);
  sys.K.setFromTriplets(triplets.begin(), triplets.end());
  return sys;
}

std::vector<int> contact_dof_indices(const GlobalSystem& sys, const HexMesh& mesh) {
  std::vector<int> dofs;
  dofs.reserve(mesh.contact_nodes.size() * 3);
  for (int node : mesh.contact_nodes) {
    for (int c = 0; c < 3; ++c) {
      const int idx = sys.dof_map[static_cast<size_t>(3 * node + c)];
      if (idx < 0) throw std::logic_error("contact_dof_indices: contact DOF is constrained");
      dofs.push_back(idx);
    }
  }
  return dofs;
}

}  // namespace tresca
