// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <string>

#include "tresca/mesh.hpp"
#include "tresca/ssn.hpp"

namespace tresca {

/// Legacy ASCII VTK unstructured grid: POINTS (double), 8-node hexahedron
/// CELLS, CELL_TYPES all 12, POINT_DATA with a 3-component "displacement"
/// field. displacement is 3n entries, node-major. Output is byte-reproducible
/// for identical inputs. Throws on I/O failure with the path in the message.
void export_vtk(const HexMesh& mesh, const Eigen::VectorXd& displacement,
                const std::string& path);

/// CSV iteration log, header "iter,norm_v,stick_count,contact_count,time_ms",
/// one row per approximation step.
void export_iteration_log(const SolveReport& report, const std::string& path);

}  // namespace tresca
