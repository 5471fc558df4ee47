// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wgpencil/eigensolver.hpp"
#include "wgpencil/mesh.hpp"
#include "wgpencil/oracle.hpp"

namespace wgp {

enum class GeometryKind { kSlab, kHomogeneous, kFile };

struct GeometryConfig {
  GeometryKind kind = GeometryKind::kSlab;
  double width = 0.0;
  double height = 0.0;
  double interface_x = 0.0;
  int nx = 8;
  int ny = 8;
  int refinement = 1;  // multiplies nx and ny
  std::filesystem::path mesh_file;
};

enum class OracleKind { kNone, kHomogeneous, kSlab };

struct OracleConfig {
  OracleKind kind = OracleKind::kNone;
  std::vector<OracleFamily> families{OracleFamily::kLse};
  std::vector<int> transverse_n{0};
  double max_abs_gamma = 4.0;
  int samples = 2000;
  double rel_tol = 0.02;
  double zero_abs_tol = 0.05;
  double exclusion_margin = 0.1;  // negative disables the exclusion filter
};

struct SweepConfig {
  double eps2_from = 1.0;
  double eps2_to = 1.0;
  int steps = 2;
  double track_radius = 4.0;
};

struct OutputConfig {
  std::filesystem::path dir = "out";
  std::string spectrum = "spectrum.json";
  std::string report = "report.json";
  std::string oracle = "oracle_comparison.csv";
  std::string plot = "plot.csv";
  std::string dispersion = "dispersion.csv";
};

/// Everything a run needs. Parsed from an INI-style file:
///
///     [geometry]
///     kind = slab          # slab | homogeneous | file
///     width = pi
///     ...
struct SolverConfig {
  GeometryConfig geometry;
  double eps1 = 1.0;
  double eps2 = 1.0;
  Backend backend = Backend::kAuto;
  double classification_tol = 1e-6;
  double residual_tol = 1e-8;
  double pairing_tol = 1e-8;
  int qr_sweep_cap = 30;
  double vector_radius = 4.0;
  int max_vectors = 64;
  OracleConfig oracle;
  SweepConfig sweep;
  OutputConfig output;

  int nx() const { return geometry.nx * geometry.refinement; }
  int ny() const { return geometry.ny * geometry.refinement; }
};

/// Parses a number: decimal literals, `pi`, and products or quotients of
/// those such as `pi/2` or `-0.5*pi`.
double parse_number(std::string_view text);

/// Throws ConfigError carrying the offending line number. Relative
/// mesh_file paths are resolved against `base_dir`.
SolverConfig parse_config(std::string_view text,
                          const std::filesystem::path& base_dir = {});
SolverConfig load_config(const std::filesystem::path& path);

/// Builds the mesh described by the geometry section.
Mesh make_mesh(const SolverConfig& config);

/// Interface abscissa after snapping to the grid.
double snapped_interface(const SolverConfig& config);

}  // namespace wgp
