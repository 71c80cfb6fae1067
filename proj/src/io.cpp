// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#include "tresca/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace tresca {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_or_throw(const std::string& path, const char* what) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error(std::string(what) + ": cannot open '" + path + "' for writing");
  }
  return out;
}

}  // namespace

void export_vtk(const HexMesh& mesh, const Eigen::VectorXd& displacement,
                const std::string& path) {
  const int n = mesh.num_nodes();
  if (displacement.size() != 3 * n) {
    throw std::invalid_argument("export_vtk: displacement must have 3n entries");
  }
  std::ofstream out = open_or_throw(path, "export_vtk");

  out << "# vtk DataFile Version 3.0\n";
  out << "tresca displacement field\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << n << " double\n";
  for (const auto& c : mesh.node_coords) {
    out << fmt_double(c[0]) << ' ' << fmt_double(c[1]) << ' ' << fmt_double(c[2]) << '\n';
  }

  const int m = mesh.num_elements();
  out << "CELLS " << m << ' ' << 9 * m << '\n';
  for (const auto& e : mesh.elements) {
    out << 8;
    for (int node : e) out << ' ' << node;
    out << '\n';
  }
  out << "CELL_TYPES " << m << '\n';
  for (int i = 0; i < m; ++i) out << 12 << '\n';

  out << "POINT_DATA " << n << '\n';
  out << "VECTORS displacement double\n";
  for (int i = 0; i < n; ++i) {
    out << fmt_double(displacement(3 * i)) << ' ' << fmt_double(displacement(3 * i + 1))
        << ' ' << fmt_double(displacement(3 * i + 2)) << '\n';
  }
  if (!out) throw std::runtime_error("export_vtk: write to '" + path + "' failed");
}

void export_iteration_log(const SolveReport& report, const std::string& path) {
  std::ofstream out = open_or_throw(path, "export_iteration_log");
  out << "iter,norm_v,stick_count,contact_count,time_ms\n";
  int iter = 1;
  for (const auto& rec : report.history) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%d,%d,%.3f\n", iter, rec.norm_v,
                  rec.stick_count, rec.contact_count, rec.time_ms);
    out << buf;
    ++iter;
  }
  if (!out) throw std::runtime_error("export_iteration_log: write to '" + path + "' failed");
}

}  // namespace tresca
