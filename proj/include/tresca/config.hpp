// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "tresca/mesh.hpp"

namespace tresca {

/// One benchmark run. Defaults are the reference configuration:
/// E = 2.1e9, nu = 0.277, phi = 1, eps = 1e-6, tractions (-5e8,0,0) on the
/// right face and (0,0,-1e8) on the top face, foundation at z = 0.
struct RunConfig {
  int level = 2;
  std::optional<std::array<int, 3>> divisions;  // overrides level when set

  DomainSpec domain{};
  double youngs_modulus = 2.1e9;
  double poisson_ratio = 0.277;
  double phi = 1.0;
  double eps = 1e-6;
  int max_iter = 100;
  Eigen::Vector3d traction_right{-5e8, 0.0, 0.0};
  Eigen::Vector3d traction_top{0.0, 0.0, -1e8};

  std::string export_vtk_path;
  std::string log_csv_path;
  bool oracle_check = false;
  bool full_newton_debug = false;

  // Throws ConfigError on out-of-range values.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat "key = value" text format, one entry per line, '#' comments.
/// Keys: level, divisions, domain, foundation_z, youngs_modulus,
/// poisson_ratio, phi, eps, max_iter, traction_right, traction_top,
/// export_vtk, log_csv, oracle_check, full_newton_debug.
RunConfig parse_config_file(const std::string& path);

RunConfig parse_config_text(const std::string& text);

/// Serializes every effective value with full precision; reparsing yields a
/// run with identical results.
std::string serialize_config(const RunConfig& config);

}  // namespace tresca
