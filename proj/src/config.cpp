// Copyright (c) 2026 The tresca authors
// SPDX-License-Identifier: Apache-2.0

#include "tresca/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tresca/fem.hpp"

namespace tresca {

void RunConfig::validate() const {
  try {
    domain.validate();
    if (divisions) {
      MeshLevelSpec spec{level, *divisions};
      spec.validate();
    } else if (level < 1) {
      throw std::invalid_argument("level must be >= 1");
    }
    ElasticParams{youngs_modulus, poisson_ratio}.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(phi >= 0.0)) throw ConfigError("phi must be nonnegative");
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (!traction_right.allFinite() || !traction_top.allFinite()) {
    throw ConfigError("tractions must be finite");
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for '" + key + "': " + value);
  }
}

int parse_int(const std::string& value, const std::string& key) {
  try {
    size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value for '" + key + "': " + value);
  }
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError("config: bad boolean value for '" + key + "': " + value);
}

std::vector<double> parse_numbers(const std::string& value, size_t count,
                                  const std::string& key) {
  std::istringstream in(value);
  std::vector<double> out;
  double v;
  while (in >> v) out.push_back(v);
  if (!in.eof() || out.size() != count) {
    throw ConfigError("config: '" + key + "' expects " + std::to_string(count) +
                      " numbers, got: " + value);
  }
  return out;
}

void apply_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "level") {
    cfg.level = parse_int(value, key);
  } else if (key == "divisions") {
    const auto v = parse_numbers(value, 3, key);
    cfg.divisions = {static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2])};
  } else if (key == "domain") {
    const auto v = parse_numbers(value, 6, key);
    cfg.domain.x_range = {v[0], v[1]};
    cfg.domain.y_range = {v[2], v[3]};
    cfg.domain.z_range = {v[4], v[5]};
  } else if (key == "foundation_z") {
    cfg.domain.foundation_z = parse_double(value, key);
  } else if (key == "youngs_modulus") {
    cfg.youngs_modulus = parse_double(value, key);
  } else if (key == "poisson_ratio") {
    cfg.poisson_ratio = parse_double(value, key);
  } else if (key == "phi") {
    cfg.phi = parse_double(value, key);
  } else if (key == "eps") {
    cfg.eps = parse_double(value, key);
  } else if (key == "max_iter") {
    cfg.max_iter = parse_int(value, key);
  } else if (key == "traction_right") {
    const auto v = parse_numbers(value, 3, key);
    cfg.traction_right = Eigen::Vector3d(v[0], v[1], v[2]);
  } else if (key == "traction_top") {
    const auto v = parse_numbers(value, 3, key);
    cfg.traction_top = Eigen::Vector3d(v[0], v[1], v[2]);
  } else if (key == "export_vtk") {
    cfg.export_vtk_path = value;
  } else if (key == "log_csv") {
    cfg.log_csv_path = value;
  } else if (key == "oracle_check") {
    cfg.oracle_check = parse_bool(value, key);
  } else if (key == "full_newton_debug") {
    cfg.full_newton_debug = parse_bool(value, key);
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(lineno) + " is not 'key = value'");
    }
    apply_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "level = " << cfg.level << "\n";
  if (cfg.divisions) {
    out << "divisions = " << (*cfg.divisions)[0] << ' ' << (*cfg.divisions)[1] << ' '
        << (*cfg.divisions)[2] << "\n";
  }
  out << "domain = " << fmt_double(cfg.domain.x_range[0]) << ' '
      << fmt_double(cfg.domain.x_range[1]) << ' ' << fmt_double(cfg.domain.y_range[0]) << ' '
      << fmt_double(cfg.domain.y_range[1]) << ' ' << fmt_double(cfg.domain.z_range[0]) << ' '
      << fmt_double(cfg.domain.z_range[1]) << "\n";
  out << "foundation_z = " << fmt_double(cfg.domain.foundation_z) << "\n";
  out << "youngs_modulus = " << fmt_double(cfg.youngs_modulus) << "\n";
  out << "poisson_ratio = " << fmt_double(cfg.poisson_ratio) << "\n";
  out << "phi = " << fmt_double(cfg.phi) << "\n";
  out << "eps = " << fmt_double(cfg.eps) << "\n";
  out << "max_iter = " << cfg.max_iter << "\n";
  out << "traction_right = " << fmt_double(cfg.traction_right.x()) << ' '
      << fmt_double(cfg.traction_right.y()) << ' ' << fmt_double(cfg.traction_right.z())
      << "\n";
  out << "traction_top = " << fmt_double(cfg.traction_top.x()) << ' '
      << fmt_double(cfg.traction_top.y()) << ' ' << fmt_double(cfg.traction_top.z()) << "\n";
  if (!cfg.export_vtk_path.empty()) out << "export_vtk = " << cfg.export_vtk_path << "\n";
  if (!cfg.log_csv_path.empty()) out << "log_csv = " << cfg.log_csv_path << "\n";
  out << "oracle_check = " << (cfg.oracle_check ? "true" : "false") << "\n";
  out << "full_newton_debug = " << (cfg.full_newton_debug ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace tresca
