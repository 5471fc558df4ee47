// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "wgpencil/analysis.hpp"
#include "wgpencil/assembly.hpp"
#include "wgpencil/config.hpp"
#include "wgpencil/mesh.hpp"
#include "wgpencil/oracle.hpp"
#include "wgpencil/pencil.hpp"
#include "wgpencil/spaces.hpp"

namespace wgp {

/// Deliberate corruption used to check that verification catches it.
enum class Fault { kNone, kFlipEdge, kNegateK };
Fault fault_from_string(std::string_view name);

/// Mesh, spaces, matrices and pencil of one configuration.
struct Problem {
  Mesh mesh;
  FieldSpaces spaces;
  PencilMatrices matrices;
  Pencil pencil;
};

Problem build_problem(const SolverConfig& config, Fault fault = Fault::kNone);

/// Oracle roots requested by the config (empty when disabled).
std::vector<OracleRoot> oracle_roots(const SolverConfig& config);

struct RunOptions {
  bool write_files = true;
  bool deterministic = false;  // omit timings from the JSON outputs
  Fault fault = Fault::kNone;
  bool solve = true;  // false: structural checks only
};

struct RunResult {
  int exit_code = 0;
  PropertyReport report;
  Spectrum spectrum;
  bool solved = false;
  std::vector<OracleMatch> matches;
  bool oracle_pass = true;
  std::string error;  // set when the run aborted
};

/// mesh -> assemble -> solve -> analyze -> compare, writing spectrum, report,
/// oracle comparison and plot files into config.output.dir. The exit code is
/// nonzero iff a property check or an oracle comparison failed.
RunResult run(const SolverConfig& config, const RunOptions& options = {});

nlohmann::json spectrum_json(const Spectrum& s, const Problem& p,
                             const std::string& backend);

struct SweepResult {
  int exit_code = 0;
  std::vector<double> eps2;
  std::vector<Spectrum> spectra;
  // branch id per (step, tracked eigenvalue); -1 for untracked entries.
  std::vector<std::vector<int>> branch;
};

/// One independent solve per eps2 value, run concurrently, plus a combined
/// dispersion table tracking branches by nearest-neighbour continuation
/// within a fixed quadrant of the complex plane.
SweepResult sweep(const SolverConfig& config, const RunOptions& options = {});

/// Quadrant label (sign of Re, sign of Im, each -1, 0 or +1 within tol).
std::pair<int, int> quadrant(cdouble g, double tol);

}  // namespace wgp
