// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <array>

#include "tresca/fem.hpp"
#include "tresca/mesh.hpp"

using namespace tresca;

namespace {

const std::array<std::array<double, 3>, 8> kUnitCube = {{{0, 0, 0},
                                                         {1, 0, 0},
                                                         {1, 1, 0},
                                                         {0, 1, 0},
                                                         {0, 0, 1},
                                                         {1, 0, 1},
                                                         {1, 1, 1},
                                                         {0, 1, 1}}};

// Independent oracle for the unit-cube element: evaluates the elasticity
// bilinear form entry lambda (dNa/dxi)(dNb/dxj) + mu (dNa/dxj)(dNb/dxi)
// + mu delta_ij grad Na . grad Nb with analytic shape gradients and 4x4x4
// Gauss quadrature. No B-matrix, no isoparametric mapping.
Eigen::MatrixXd unit_cube_stiffness_oracle(double lambda, double mu) {
  const double gp[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                        0.8611363115940526};
  const double gw[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                        0.3478548451374538};

  auto grad = [](int corner, double x, double y, double z) {
    const double cx = kUnitCube[corner][0], cy = kUnitCube[corner][1],
                 cz = kUnitCube[corner][2];
    const double fx = cx > 0.5 ? x : 1.0 - x;
    const double fy = cy > 0.5 ? y : 1.0 - y;
    const double fz = cz > 0.5 ? z : 1.0 - z;
    const double dx = cx > 0.5 ? 1.0 : -1.0;
    const double dy = cy > 0.5 ? 1.0 : -1.0;
    const double dz = cz > 0.5 ? 1.0 : -1.0;
    return Eigen::Vector3d(dx * fy * fz, fx * dy * fz, fx * fy * dz);
  };

  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(24, 24);
  for (int qx = 0; qx < 4; ++qx) {
    for (int qy = 0; qy < 4; ++qy) {
      for (int qz = 0; qz < 4; ++qz) {
        const double x = 0.5 * (gp[qx] + 1.0), y = 0.5 * (gp[qy] + 1.0),
                     z = 0.5 * (gp[qz] + 1.0);
        const double w = 0.125 * gw[qx] * gw[qy] * gw[qz];
        std::array<Eigen::Vector3d, 8> g;
        for (int a = 0; a < 8; ++a) g[a] = grad(a, x, y, z);
        for (int a = 0; a < 8; ++a) {
          for (int b = 0; b < 8; ++b) {
            const double dot = g[a].dot(g[b]);
            for (int i = 0; i < 3; ++i) {
              for (int j = 0; j < 3; ++j) {
                double v = lambda * g[a](i) * g[b](j) + mu * g[a](j) * g[b](i);
                if (i == j) v += mu * dot;
                k(3 * a + i, 3 * b + j) += w * v;
              }
            }
          }
        }
      }
    }
  }
  return k;
}

Eigen::SparseMatrix<double> benchmark_stiffness(int level, const ElasticParams& params) {
  const HexMesh mesh = build_mesh(DomainSpec{}, MeshLevelSpec::from_level(level));
  return assemble_stiffness(mesh, params);
}

}  // namespace

TEST_CASE("element stiffness matches the quadrature oracle") {
  SUBCASE("E = 1, nu = 0") {
    const ElasticParams params{1.0, 0.0};
    const auto ke = element_stiffness(kUnitCube, params);
    const Eigen::MatrixXd ref = unit_cube_stiffness_oracle(0.0, 0.5);
    CHECK((ke - ref).cwiseAbs().maxCoeff() < 1e-13);
  }
  SUBCASE("generic parameters") {
    const ElasticParams params{2.3, 0.31};
    const auto ke = element_stiffness(kUnitCube, params);
    const Eigen::MatrixXd ref =
        unit_cube_stiffness_oracle(params.lame_lambda(), params.lame_mu());
    CHECK((ke - ref).cwiseAbs().maxCoeff() < 1e-12 * ref.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("element stiffness basic structure") {
  const ElasticParams params{2.1e9, 0.277};
  const auto ke = element_stiffness(kUnitCube, params);

  SUBCASE("exactly symmetric") {
    for (int i = 0; i < 24; ++i) {
      for (int j = 0; j < 24; ++j) CHECK(ke(i, j) == ke(j, i));
    }
  }

  SUBCASE("annihilates rigid translations and rotations") {
    Eigen::Matrix<double, 24, 6> modes;
    for (int a = 0; a < 8; ++a) {
      const Eigen::Vector3d x(kUnitCube[a][0], kUnitCube[a][1], kUnitCube[a][2]);
      for (int c = 0; c < 3; ++c) {
        modes.block<3, 1>(3 * a, c) = Eigen::Vector3d::Unit(c);
        modes.block<3, 1>(3 * a, 3 + c) = Eigen::Vector3d::Unit(c).cross(x);
      }
    }
    const double scale = ke.cwiseAbs().maxCoeff();
    CHECK((ke * modes).cwiseAbs().maxCoeff() < 1e-10 * scale);
  }

  SUBCASE("positive semidefinite with 6-dimensional kernel") {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ke);
    const auto& ev = eig.eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();
    for (int i = 0; i < 6; ++i) CHECK(std::abs(ev(i)) < 1e-10 * scale);
    for (int i = 6; i < 24; ++i) CHECK(ev(i) > 1e-8 * scale);
  }

  SUBCASE("rejects inverted elements") {
    auto corners = kUnitCube;
    std::swap(corners[0], corners[1]);
    std::swap(corners[3], corners[2]);
    std::swap(corners[4], corners[5]);
    std::swap(corners[7], corners[6]);  // mirrored: negative Jacobian
    CHECK_THROWS_AS(element_stiffness(corners, params), std::runtime_error);
  }
}

TEST_CASE("assembled stiffness keeps the rigid-body kernel") {
  const HexMesh mesh = build_mesh(DomainSpec{}, MeshLevelSpec::from_level(2));
  const ElasticParams params{2.1e9, 0.277};
  const Eigen::SparseMatrix<double> k = assemble_stiffness(mesh, params);
  const int n = mesh.num_nodes();

  double kmax = 0.0;
  for (int c = 0; c < k.outerSize(); ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(k, c); it; ++it) {
      kmax = std::max(kmax, std::abs(it.value()));
    }
  }

  for (int mode = 0; mode < 6; ++mode) {
    Eigen::VectorXd z(3 * n);
    for (int node = 0; node < n; ++node) {
      const auto& c = mesh.node_coords[node];
      const Eigen::Vector3d x(c[0], c[1], c[2]);
      const Eigen::Vector3d v = mode < 3
                                    ? Eigen::Vector3d(Eigen::Vector3d::Unit(mode))
                                    : Eigen::Vector3d(Eigen::Vector3d::Unit(mode - 3).cross(x));
      z.segment<3>(3 * node) = v;
    }
    const double rel = (k * z).cwiseAbs().maxCoeff() /
                       (kmax * z.cwiseAbs().maxCoeff());
    CHECK(rel < 1e-10);
  }
}

TEST_CASE("single-element assembly equals the element matrix") {
  DomainSpec domain;
  domain.x_range = {0.0, 1.0};
  domain.y_range = {0.0, 1.0};
  domain.z_range = {0.0, 1.0};
  domain.foundation_z = -1.0;
  MeshLevelSpec spec;
  spec.divisions = {1, 1, 1};
  const HexMesh mesh = build_mesh(domain, spec);
  REQUIRE(mesh.num_elements() == 1);

  const ElasticParams params{3.0, 0.2};
  const Eigen::MatrixXd k = Eigen::MatrixXd(assemble_stiffness(mesh, params));

  std::array<std::array<double, 3>, 8> corners;
  for (int a = 0; a < 8; ++a) corners[a] = mesh.node_coords[mesh.elements[0][a]];
  const auto ke = element_stiffness(corners, params);

  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          CHECK(k(3 * mesh.elements[0][a] + i, 3 * mesh.elements[0][b] + j) ==
                doctest::Approx(ke(3 * a + i, 3 * b + j)).epsilon(1e-14));
        }
      }
    }
  }
}

TEST_CASE("stiffness is linear in the Young modulus") {
  const ElasticParams p1{1.7e9, 0.3};
  const ElasticParams p2{3.4e9, 0.3};
  const Eigen::SparseMatrix<double> k1 = benchmark_stiffness(2, p1);
  const Eigen::SparseMatrix<double> k2 = benchmark_stiffness(2, p2);
  const Eigen::SparseMatrix<double> diff = k2 - Eigen::SparseMatrix<double>(2.0 * k1);
  double dmax = 0.0, scale = 0.0;
  for (int c = 0; c < diff.outerSize(); ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(diff, c); it; ++it) {
      dmax = std::max(dmax, std::abs(it.value()));
    }
  }
  for (int c = 0; c < k2.outerSize(); ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(k2, c); it; ++it) {
      scale = std::max(scale, std::abs(it.value()));
    }
  }
  CHECK(dmax < 1e-15 * scale);
}

TEST_CASE("assembly is element-order independent up to roundoff") {
  const ElasticParams params{2.1e9, 0.277};
  HexMesh mesh = build_mesh(DomainSpec{}, MeshLevelSpec::from_level(2));
  const Eigen::SparseMatrix<double> k = assemble_stiffness(mesh, params);
  std::reverse(mesh.elements.begin(), mesh.elements.end());
  const Eigen::SparseMatrix<double> k_rev = assemble_stiffness(mesh, params);

  double dmax = 0.0, scale = 0.0;
  const Eigen::SparseMatrix<double> diff = k - k_rev;
  for (int c = 0; c < diff.outerSize(); ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(diff, c); it; ++it) {
      dmax = std::max(dmax, std::abs(it.value()));
    }
  }
  for (int c = 0; c < k.outerSize(); ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(k, c); it; ++it) {
      scale = std::max(scale, std::abs(it.value()));
    }
  }
  CHECK(dmax <= 1e-12 * scale);
}

TEST_CASE("surface loads are consistent with the total traction") {
  const HexMesh mesh = build_mesh(DomainSpec{}, MeshLevelSpec::from_level(2));
  const TractionSpec tractions;
  const Eigen::VectorXd load = assemble_surface_load(mesh, tractions);

  double sum_x = 0.0, sum_z = 0.0;
  for (int node = 0; node < mesh.num_nodes(); ++node) {
    sum_x += load(3 * node);
    sum_z += load(3 * node + 2);
  }
  // right face area 1 x 0.9, top face area 2 x 1
  CHECK(sum_x == doctest::Approx(-4.5e8).epsilon(1e-12));
  CHECK(sum_z == doctest::Approx(-2e8).epsilon(1e-12));

  SUBCASE("zero traction gives a zero load") {
    TractionSpec none;
    none.right_face.setZero();
    none.top_face.setZero();
    CHECK(assemble_surface_load(mesh, none).norm() == 0.0);
  }

  SUBCASE("additive over face sets") {
    TractionSpec right_only = tractions;
    right_only.top_face.setZero();
    TractionSpec top_only = tractions;
    top_only.right_face.setZero();
    const Eigen::VectorXd split = assemble_surface_load(mesh, right_only) +
                                  assemble_surface_load(mesh, top_only);
    CHECK((split - load).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("Dirichlet condensation") {
  const HexMesh mesh = build_mesh(DomainSpec{}, MeshLevelSpec::from_level(2));
  const ElasticParams params{2.1e9, 0.277};
  const Eigen::SparseMatrix<double> k = assemble_stiffness(mesh, params);
  const Eigen::VectorXd l = assemble_surface_load(mesh, TractionSpec{});
  const GlobalSystem sys = apply_dirichlet(k, l, mesh);

  // 25 clamped nodes at x = 0, counted by direct enumeration.
  int clamped = 0;
  for (const auto& c : mesh.node_coords) {
    if (c[0] == 0.0) ++clamped;
  }
  CHECK(clamped == 25);
  CHECK(sys.num_free_dofs() == 3 * (225 - clamped));  // 600

  SUBCASE("dof_map marks Dirichlet DOFs fixed") {
    for (int node : mesh.dirichlet_nodes) {
      for (int c = 0; c < 3; ++c) CHECK(sys.dof_map[3 * node + c] == -1);
    }
  }

  SUBCASE("contact DOFs form the trailing block") {
    const auto dofs = contact_dof_indices(sys, mesh);
    REQUIRE(dofs.size() == 120);
    for (size_t i = 0; i < dofs.size(); ++i) {
      CHECK(dofs[i] == 480 + static_cast<int>(i));
    }
  }

  SUBCASE("condensed matrix is positive definite") {
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(sys.K);
    CHECK(llt.info() == Eigen::Success);
  }

  SUBCASE("zero loads restrict to zero") {
    const GlobalSystem zero_sys =
        apply_dirichlet(k, Eigen::VectorXd::Zero(3 * mesh.num_nodes()), mesh);
    CHECK(zero_sys.l.norm() == 0.0);
  }

  SUBCASE("rejects a fully constrained mesh") {
    HexMesh all_fixed = mesh;
    all_fixed.contact_nodes.clear();
    all_fixed.dirichlet_nodes.resize(mesh.num_nodes());
    for (int i = 0; i < mesh.num_nodes(); ++i) all_fixed.dirichlet_nodes[i] = i;
    CHECK_THROWS_AS(apply_dirichlet(k, l, all_fixed), std::runtime_error);
  }
}

TEST_CASE("affine patch test") {
  DomainSpec domain;
  domain.x_range = {0.0, 1.0};
  domain.y_range = {0.0, 1.0};
  domain.z_range = {0.0, 1.0};
  domain.foundation_z = -1.0;
  MeshLevelSpec spec;
  spec.divisions = {3, 3, 3};
  const HexMesh mesh = build_mesh(domain, spec);
  const int n = mesh.num_nodes();

  const ElasticParams params{5.0, 0.25};
  const Eigen::SparseMatrix<double> k = assemble_stiffness(mesh, params);

  Eigen::Matrix3d disp_grad;
  disp_grad << 0.1, 0.03, -0.02, 0.05, -0.08, 0.01, -0.04, 0.02, 0.06;
  const Eigen::Vector3d shift(0.7, -0.3, 0.2);
  auto affine = [&](const std::array<double, 3>& c) {
    return Eigen::Vector3d(shift + disp_grad * Eigen::Vector3d(c[0], c[1], c[2]));
  };

  std::vector<int> boundary, interior;
  for (int node = 0; node < n; ++node) {
    const auto& c = mesh.node_coords[node];
    const bool on_surface = c[0] == 0.0 || c[0] == 1.0 || c[1] == 0.0 || c[1] == 1.0 ||
                            c[2] == 0.0 || c[2] == 1.0;
    (on_surface ? boundary : interior).push_back(node);
  }
  REQUIRE(!interior.empty());

  std::vector<int> pos(3 * n, -1);
  for (size_t i = 0; i < interior.size(); ++i) {
    for (int c = 0; c < 3; ++c) pos[3 * interior[i] + c] = static_cast<int>(3 * i + c);
  }
  const int ni = static_cast<int>(3 * interior.size());

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ni);
  std::vector<Eigen::Triplet<double>> trip;
  for (int col = 0; col < k.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(k, col); it; ++it) {
      const int ri = pos[it.row()], cj = pos[col];
      if (ri >= 0 && cj >= 0) {
        trip.emplace_back(ri, cj, it.value());
      } else if (ri >= 0 && cj < 0) {
        const int bn = col / 3;
        rhs(ri) -= it.value() * affine(mesh.node_coords[bn])(col % 3);
      }
    }
  }
  Eigen::SparseMatrix<double> kii(ni, ni);
  kii.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(kii);
  REQUIRE(llt.info() == Eigen::Success);
  const Eigen::VectorXd ui = llt.solve(rhs);

  double err = 0.0, scale = 0.0;
  for (size_t i = 0; i < interior.size(); ++i) {
    const Eigen::Vector3d exact = affine(mesh.node_coords[interior[i]]);
    err = std::max(err, (ui.segment<3>(3 * i) - exact).cwiseAbs().maxCoeff());
    scale = std::max(scale, exact.cwiseAbs().maxCoeff());
  }
  CHECK(err < 1e-10 * scale);
}
