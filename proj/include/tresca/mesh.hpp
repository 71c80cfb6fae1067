// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

namespace tresca {

/// Axis-aligned brick domain resting above a rigid plane foundation
/// z = foundation_z. The benchmark configuration is the default.
struct DomainSpec {
  std::array<double, 2> x_range{0.0, 2.0};
  std::array<double, 2> y_range{0.0, 1.0};
  std::array<double, 2> z_range{0.1, 1.0};
  double foundation_z = 0.0;

  // Throws std::invalid_argument on empty ranges or a foundation above the body.
  void validate() const;
};

/// Mesh refinement level and the hexahedra counts per axis.
struct MeshLevelSpec {
  int level = 2;
  std::array<int, 3> divisions{8, 4, 4};

  static MeshLevelSpec from_level(int level);
  void validate() const;
};

/// divisions(level) = (ceil(4*2^(l/2)), ceil(2*2^(l/2)), ceil(2*2^(l/2))).
std::array<int, 3> divisions(int level);

/// Structured brick mesh with boundary classification.
///
/// Nodes are ordered lexicographically by (z, y, x): x varies fastest.
/// Elements follow the VTK hexahedron corner convention (bottom quad
/// counter-clockwise, then the top quad). Contact nodes are the z = z_min
/// face minus the Dirichlet face x = x_min, ordered by (y, x).
struct HexMesh {
  std::array<int, 3> divisions{0, 0, 0};  // (e_x, e_y, e_z)
  std::vector<std::array<double, 3>> node_coords;
  std::vector<std::array<int, 8>> elements;
  std::vector<int> dirichlet_nodes;
  std::vector<int> contact_nodes;
  std::vector<std::array<int, 4>> traction_faces_right;  // on x = x_max
  std::vector<std::array<int, 4>> traction_faces_top;    // on z = z_max

  int num_nodes() const { return static_cast<int>(node_coords.size()); }
  int num_elements() const { return static_cast<int>(elements.size()); }
  int num_contact_nodes() const { return static_cast<int>(contact_nodes.size()); }
};

HexMesh build_mesh(const DomainSpec& domain, const MeshLevelSpec& spec);

/// Distance from each contact node to the rigid foundation plane.
/// Throws std::runtime_error if a node lies below the foundation.
std::vector<double> gap_vector(const HexMesh& mesh, const DomainSpec& domain);

}  // namespace tresca
