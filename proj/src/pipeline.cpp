// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#include "wgpencil/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <thread>

#include "wgpencil/error.hpp"

namespace wgp {

Fault fault_from_string(std::string_view name) {
  if (name == "none") return Fault::kNone;
  if (name == "flip-edge") return Fault::kFlipEdge;
  if (name == "negate-k") return Fault::kNegateK;
  throw Error("unknown fault '" + std::string(name) +
              "' (expected none, flip-edge or negate-k)");
}

Problem build_problem(const SolverConfig& config, Fault fault) {
  Mesh mesh = make_mesh(config);
  AssemblyOptions opts;
  if (fault == Fault::kFlipEdge) {
    if (mesh.interface_edges().empty()) {
      throw Error("cannot flip an interface edge: the mesh has none");
    }
    mesh = mesh.with_flipped_interface_edge(0);
    opts.check_orientation = false;
  }
  FieldSpaces spaces = build_spaces(mesh);
  PencilMatrices m = assemble_all(spaces, mesh, config.eps1, config.eps2, opts);
  if (fault == Fault::kNegateK) m.K(0, 0) = -m.K(0, 0);
  Pencil pencil = make_pencil(m);
  return Problem{std::move(mesh), std::move(spaces), std::move(m), std::move(pencil)};
}

std::vector<OracleRoot> oracle_roots(const SolverConfig& config) {
  const auto& o = config.oracle;
  const auto& g = config.geometry;
  std::vector<OracleRoot> roots;
  if (o.kind == OracleKind::kHomogeneous) {
    const double r2 = o.max_abs_gamma * o.max_abs_gamma;
    for (const auto& r : homogeneous_rect_spectrum(g.width, g.height, config.eps1,
                                                   config.eps1 + r2)) {
      if (std::abs(r.gamma) <= o.max_abs_gamma) roots.push_back(r);
    }
  } else if (o.kind == OracleKind::kSlab) {
    SlabSearch search;
    search.max_abs_gamma = o.max_abs_gamma;
    search.samples = o.samples;
    const double d = snapped_interface(config);
    for (OracleFamily fam : o.families) {
      for (int n : o.transverse_n) {
        auto part = slab_dispersion_roots(g.width, g.height, d, config.eps1,
                                          config.eps2, n, fam, search);
        roots.insert(roots.end(), part.begin(), part.end());
      }
    }
  }
  return roots;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

// Recovers pencil vectors for the trusted eigenvalues closest to the origin.
void recover_vectors(const Problem& p, const SolverConfig& config,
                     Spectrum& s) {
  const auto deg = s.exclusion.degeneration_points();
  std::vector<std::size_t> picks;
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    const auto& e = s.entries[i];
    if (std::abs(e.gamma) > config.vector_radius) continue;
    if (e.cls == WaveClass::kInExclusion || e.cls == WaveClass::kDegenerationAdjacent) {
      continue;
    }
    bool near_degeneration = false;
    for (double r : deg) {
      if (std::abs(std::abs(e.gamma) - r) <= 1e-3 * (1.0 + r) &&
          std::abs(e.gamma.imag()) <= 1e-3 * (1.0 + r)) {
        near_degeneration = true;
      }
    }
    if (!near_degeneration) picks.push_back(i);
  }
  std::stable_sort(picks.begin(), picks.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(s.entries[a].gamma) < std::abs(s.entries[b].gamma);
  });
  if (picks.size() > static_cast<std::size_t>(config.max_vectors)) {
    picks.resize(static_cast<std::size_t>(config.max_vectors));
  }
  for (std::size_t i : picks) {
    const PencilVector v = eigenvector(p.pencil, s.entries[i].gamma, config.residual_tol);
    s.entries[i].residual = v.residual;
  }
}

}  // namespace

nlohmann::json spectrum_json(const Spectrum& s, const Problem& p,
                             const std::string& backend) {
  nlohmann::json j;
  j["eps1"] = p.pencil.eps1();
  j["eps2"] = p.pencil.eps2();
  j["dim"] = p.pencil.dim();
  j["pi_dim"] = p.pencil.pi_dim();
  j["nodes"] = p.mesh.num_nodes();
  j["triangles"] = p.mesh.num_triangles();
  j["backend"] = backend;
  j["exclusion"] = {{"delta", s.exclusion.delta},
                    {"lower", s.exclusion.lower},
                    {"upper", s.exclusion.upper},
                    {"p", s.exclusion.p}};
  const auto deg = s.exclusion.degeneration_points();
  j["degeneration_points"] = {-deg[1], -deg[0], deg[0], deg[1]};
  j["max_abs_re"] = s.max_abs_re;
  j["classification_tol"] = s.classification_tol;
  nlohmann::json counts = nlohmann::json::object();
  for (int c = 0; c < 5; ++c) {
    counts[std::string(to_string(static_cast<WaveClass>(c)))] = s.counts[c];
  }
  j["counts"] = counts;
  j["symmetry"] = {{"max_mismatch_negation", s.pairing.max_mismatch[0]},
                   {"max_mismatch_conjugation", s.pairing.max_mismatch[1]},
                   {"max_mismatch_negated_conjugation", s.pairing.max_mismatch[2]},
                   {"violations", s.pairing.violations},
                   {"incomplete_quadruples", s.pairing.incomplete_quadruples},
                   {"tol", s.pairing.tol}};
  nlohmann::json clusters = nlohmann::json::array();
  for (const auto& c : s.clusters) {
    clusters.push_back({{"re", c.center.real()},
                        {"im", c.center.imag()},
                        {"size", c.size},
                        {"diameter", c.diameter}});
  }
  j["clusters"] = clusters;
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : s.entries) {
    entries.push_back({{"re", e.gamma.real()},
                       {"im", e.gamma.imag()},
                       {"residual", number_or_null(e.residual)},
                       {"class", std::string(to_string(e.cls))},
                       {"converged", e.converged},
                       {"partners", {e.partners[0], e.partners[1], e.partners[2]}}});
  }
  j["entries"] = entries;
  return j;
}

RunResult run(const SolverConfig& config, const RunOptions& options) {
  using Clock = std::chrono::steady_clock;
  RunResult res;
  nlohmann::json timings = nlohmann::json::object();
  auto t0 = Clock::now();
  auto lap = [&](const char* name) {
    const auto t1 = Clock::now();
    timings[name] = std::chrono::duration<double>(t1 - t0).count();
    t0 = t1;
  };

  Problem p = build_problem(config, options.fault);
  lap("assembly_seconds");

  VerifyOptions vopt;
  vopt.symmetry_tol = config.pairing_tol;
  vopt.residual_tol = config.residual_tol;

  std::string backend = "none";
  if (options.solve) {
    try {
      SolverOptions sopt;
      sopt.backend = config.backend;
      sopt.sweep_cap = config.qr_sweep_cap;
      sopt.residual_tol = config.residual_tol;
      const EigenReport rep = solve_pencil(p.pencil, sopt);
      backend = rep.backend;
      lap("eigensolve_seconds");
      res.spectrum = build_spectrum(rep, p.pencil.exclusion(),
                                    config.classification_tol, config.pairing_tol);
      recover_vectors(p, config, res.spectrum);
      lap("eigenvector_seconds");
      res.solved = true;
    } catch (const FactorizationError& e) {
      res.error = e.what();
    }
  }
  res.report = verify_all(p.mesh, p.spaces, p.matrices, p.pencil,
                          res.solved ? &res.spectrum : nullptr, vopt);
  if (options.solve && !res.solved) {
    res.report.checks.push_back({"companion_factorization", 1.0, 0.0, -1.0, false,
                                 res.error});
  }
  lap("verify_seconds");

  if (res.solved && config.oracle.kind != OracleKind::kNone) {
    const auto roots = oracle_roots(config);
    res.matches = match_oracle(roots, res.spectrum.values(), res.spectrum.exclusion,
                               config.oracle.rel_tol, config.oracle.zero_abs_tol,
                               config.oracle.exclusion_margin);
    for (const auto& m : res.matches) {
      if (m.used && !m.pass) res.oracle_pass = false;
    }
  }

  res.exit_code = (res.report.all_pass() && res.oracle_pass) ? 0 : 1;

  if (options.write_files) {
    const auto& out = config.output;
    std::filesystem::create_directories(out.dir);
    nlohmann::json report = res.report.to_json();
    report["oracle_pass"] = res.oracle_pass;
    report["exit_code"] = res.exit_code;
    if (!options.deterministic) report["timings"] = timings;
    write_text(out.dir / out.report, report.dump(2) + "\n");
    if (res.solved) {
      write_text(out.dir / out.spectrum,
                 spectrum_json(res.spectrum, p, backend).dump(2) + "\n");
      std::string plot = "re_gamma,im_gamma,class\n";
      for (const auto& e : res.spectrum.entries) {
        plot += fmt17(e.gamma.real()) + "," + fmt17(e.gamma.imag()) + "," +
                std::string(to_string(e.cls)) + "\n";
      }
      write_text(out.dir / out.plot, plot);
    }
    if (!res.matches.empty()) {
      std::string csv =
          "family,m,n,re_oracle,im_oracle,re_fem,im_fem,gap,used,pass\n";
      for (const auto& m : res.matches) {
        csv += std::string(to_string(m.root.family)) + "," + std::to_string(m.root.m) +
               "," + std::to_string(m.root.n) + "," + fmt17(m.root.gamma.real()) +
               "," + fmt17(m.root.gamma.imag()) + "," + fmt17(m.nearest.real()) +
               "," + fmt17(m.nearest.imag()) + "," + fmt17(m.gap) + "," +
               (m.used ? "1" : "0") + "," + (m.pass ? "1" : "0") + "\n";
      }
      write_text(out.dir / out.oracle, csv);
    }
  }
  return res;
}

std::pair<int, int> quadrant(cdouble g, double tol) {
  const double r = tol * (1.0 + std::abs(g));
  auto sign = [r](double x) { return x > r ? 1 : (x < -r ? -1 : 0); };
  return {sign(g.real()), sign(g.imag())};
}

SweepResult sweep(const SolverConfig& config, const RunOptions& options) {
  const int steps = config.sweep.steps;
  SweepResult res;
  res.eps2.resize(steps);
  for (int k = 0; k < steps; ++k) {
    res.eps2[k] = config.sweep.eps2_from +
                  (config.sweep.eps2_to - config.sweep.eps2_from) * k / (steps - 1);
  }
  res.spectra.resize(steps);
  std::vector<int> codes(steps, 0);
  std::vector<std::string> errors(steps);

  auto one = [&](int k) {
    SolverConfig c = config;
    c.eps2 = res.eps2[k];
    c.oracle.kind = OracleKind::kNone;
    char dir[32];
    std::snprintf(dir, sizeof dir, "step_%03d", k);
    c.output.dir = config.output.dir / dir;
    try {
      RunResult r = run(c, options);
      codes[k] = r.exit_code;
      res.spectra[k] = std::move(r.spectrum);
    } catch (const std::exception& e) {
      codes[k] = 2;
      errors[k] = e.what();
    }
  };
  const int workers = std::max(1, std::min(default_workers(), steps));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int k = w; k < steps; k += workers) one(k);
    });
  }
  for (auto& t : pool) t.join();
  for (int k = 0; k < steps; ++k) {
    if (!errors[k].empty()) throw Error("sweep step " + std::to_string(k) + ": " + errors[k]);
    res.exit_code = std::max(res.exit_code, codes[k]);
  }

  // Branch continuation: nearest unmatched predecessor in the same quadrant.
  const double radius = config.sweep.track_radius;
  const double qtol = config.classification_tol;
  int next_branch = 0;
  std::vector<cdouble> prev_vals;
  std::vector<int> prev_branch;
  res.branch.resize(steps);
  for (int k = 0; k < steps; ++k) {
    const auto& entries = res.spectra[k].entries;
    auto& br = res.branch[k];
    br.assign(entries.size(), -1);
    std::vector<std::size_t> tracked;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (std::abs(entries[i].gamma) <= radius) tracked.push_back(i);
    }
    std::vector<char> used(prev_vals.size(), 0);
    std::vector<cdouble> vals;
    std::vector<int> ids;
    for (std::size_t i : tracked) {
      const cdouble g = entries[i].gamma;
      const auto q = quadrant(g, qtol);
      double best = std::numeric_limits<double>::infinity();
      int best_j = -1;
      for (std::size_t j = 0; j < prev_vals.size(); ++j) {
        if (used[j] || quadrant(prev_vals[j], qtol) != q) continue;
        const double d = std::abs(prev_vals[j] - g);
        if (d < best) {
          best = d;
          best_j = static_cast<int>(j);
        }
      }
      int id;
      if (best_j >= 0) {
        used[best_j] = 1;
        id = prev_branch[best_j];
      } else {
        id = next_branch++;
      }
      br[i] = id;
      vals.push_back(g);
      ids.push_back(id);
    }
    prev_vals = std::move(vals);
    prev_branch = std::move(ids);
  }

  if (options.write_files) {
    std::filesystem::create_directories(config.output.dir);
    std::string csv = "step,eps2,branch,re_gamma,im_gamma,class\n";
    for (int k = 0; k < steps; ++k) {
      const auto& entries = res.spectra[k].entries;
      for (std::size_t i = 0; i < entries.size(); ++i) {
        if (res.branch[k][i] < 0) continue;
        csv += std::to_string(k) + "," + fmt17(res.eps2[k]) + "," +
               std::to_string(res.branch[k][i]) + "," +
               fmt17(entries[i].gamma.real()) + "," + fmt17(entries[i].gamma.imag()) +
               "," + std::string(to_string(entries[i].cls)) + "\n";
      }
    }
    write_text(config.output.dir / config.output.dispersion, csv);
  }
  return res;
}

}  // namespace wgp
