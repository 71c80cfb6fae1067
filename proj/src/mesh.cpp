// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#include "tresca/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tresca {

void DomainSpec::validate() const {
  if (!(x_range[0] < x_range[1]) || !(y_range[0] < y_range[1]) ||
      !(z_range[0] < z_range[1])) {
    throw std::invalid_argument("DomainSpec: coordinate ranges must be nonempty");
  }
  if (foundation_z > z_range[0]) {
    throw std::invalid_argument("DomainSpec: foundation_z must not exceed z_min");
  }
}

void MeshLevelSpec::validate() const {
  for (int e : divisions) {
    if (e < 1) throw std::invalid_argument("MeshLevelSpec: divisions must be >= 1");
  }
}

std::array<int, 3> divisions(int level) {
  if (level < 1) {
    throw std::invalid_argument("divisions: level must be >= 1, got " +
                                std::to_string(level));
  }
  const double s = std::pow(2.0, 0.5 * static_cast<double>(level));
  return {static_cast<int>(std::ceil(4.0 * s)), static_cast<int>(std::ceil(2.0 * s)),
          static_cast<int>(std::ceil(2.0 * s))};
}

MeshLevelSpec MeshLevelSpec::from_level(int level) {
  MeshLevelSpec spec;
  spec.level = level;
  spec.divisions = tresca::divisions(level);
  return spec;
}

namespace {

// Uniform grid coordinate with exact endpoints.
double grid_coord(double lo, double hi, int k, int e) {
  if (k == 0) return lo;
  if (k == e) return hi;
  return lo + (hi - lo) * (static_cast<double>(k) / static_cast<double>(e));
}

}  // namespace

HexMesh build_mesh(const DomainSpec& domain, const MeshLevelSpec& spec) {
  domain.validate();
  spec.validate();

  const int ex = spec.divisions[0], ey = spec.divisions[1], ez = spec.divisions[2];
  const int nx = ex + 1, ny = ey + 1, nz = ez + 1;

  HexMesh mesh;
  mesh.divisions = spec.divisions;
  mesh.node_coords.reserve(static_cast<size_t>(nx) * ny * nz);

  // Lexicographic (z, y, x): x fastest.
  for (int iz = 0; iz < nz; ++iz) {
    const double z = grid_coord(domain.z_range[0], domain.z_range[1], iz, ez);
    for (int iy = 0; iy < ny; ++iy) {
      const double y = grid_coord(domain.y_range[0], domain.y_range[1], iy, ey);
      for (int ix = 0; ix < nx; ++ix) {
        const double x = grid_coord(domain.x_range[0], domain.x_range[1], ix, ex);
        mesh.node_coords.push_back({x, y, z});
      }
    }
  }

  auto node = [nx, ny](int ix, int iy, int iz) { return (iz * ny + iy) * nx + ix; };

  // VTK hexahedron corners: bottom quad counter-clockwise, then top quad.
  mesh.elements.reserve(static_cast<size_t>(ex) * ey * ez);
  for (int k = 0; k < ez; ++k) {
    for (int j = 0; j < ey; ++j) {
      for (int i = 0; i < ex; ++i) {
        mesh.elements.push_back({node(i, j, k), node(i + 1, j, k), node(i + 1, j + 1, k),
                                 node(i, j + 1, k), node(i, j, k + 1),
                                 node(i + 1, j, k + 1), node(i + 1, j + 1, k + 1),
                                 node(i, j + 1, k + 1)});
      }
    }
  }

  for (int iz = 0; iz < nz; ++iz) {
    for (int iy = 0; iy < ny; ++iy) {
      mesh.dirichlet_nodes.push_back(node(0, iy, iz));
    }
  }

  // Bottom face minus the Dirichlet edge, ordered by (y, x).
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 1; ix < nx; ++ix) {
      mesh.contact_nodes.push_back(node(ix, iy, 0));
    }
  }

  for (int k = 0; k < ez; ++k) {
    for (int j = 0; j < ey; ++j) {
      mesh.traction_faces_right.push_back(
          {node(ex, j, k), node(ex, j + 1, k), node(ex, j + 1, k + 1), node(ex, j, k + 1)});
    }
  }
  for (int j = 0; j < ey; ++j) {
    for (int i = 0; i < ex; ++i) {
      mesh.traction_faces_top.push_back(
          {node(i, j, ez), node(i + 1, j, ez), node(i + 1, j + 1, ez), node(i, j + 1, ez)});
    }
  }

  return mesh;
}

std::vector<double> gap_vector(const HexMesh& mesh, const DomainSpec& domain) {
  if (mesh.contact_nodes.empty()) {
    throw std::invalid_argument("gap_vector: mesh has no contact nodes");
  }
  std::vector<double> gap;
  gap.reserve(mesh.contact_nodes.size());
  for (int n : mesh.contact_nodes) {
    const double g = mesh.node_coords[static_cast<size_t>(n)][2] - domain.foundation_z;
    if (g < 0.0) {
      throw std::runtime_error("gap_vector: contact node below the foundation plane");
    }
    gap.push_back(g);
  }
  return gap;
}

}  // namespace tresca
