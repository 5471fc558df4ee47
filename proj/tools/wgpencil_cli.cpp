// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: mesh, solve, verify, oracle and sweep.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "wgpencil/config.hpp"
#include "wgpencil/error.hpp"
#include "wgpencil/oracle.hpp"
#include "wgpencil/pipeline.hpp"

namespace {

struct CommonArgs {
  std::string config;
  std::string out;
  int refine = 0;
  bool deterministic = false;
  std::string fault = "none";
};

wgp::SolverConfig load(const CommonArgs& a) {
  wgp::SolverConfig c = wgp::load_config(a.config);
  if (a.refine > 0) c.geometry.refinement = a.refine;
  if (!a.out.empty()) c.output.dir = a.out;
  return c;
}

void print_report(const wgp::PropertyReport& r) {
  for (const auto& c : r.checks) {
    std::printf("%-4s %-34s value=%.6g threshold=%.6g\n", c.pass ? "ok" : "FAIL",
                c.name.c_str(), c.value, c.threshold);
  }
}

int cmd_mesh(const CommonArgs& a) {
  const auto c = load(a);
  const auto mesh = wgp::make_mesh(c);
  std::filesystem::create_directories(c.output.dir);
  const auto path = c.output.dir / "mesh.txt";
  wgp::save_mesh_file(mesh, path);
  std::printf("wrote %s (%zu nodes, %zu triangles, %zu interface edges)\n",
              path.string().c_str(), mesh.num_nodes(), mesh.num_triangles(),
              mesh.interface_edges().size());
  return 0;
}

int cmd_run(const CommonArgs& a, bool solve) {
  const auto c = load(a);
  wgp::RunOptions opt;
  opt.deterministic = a.deterministic;
  opt.fault = wgp::fault_from_string(a.fault);
  opt.solve = solve;
  const auto r = wgp::run(c, opt);
  print_report(r.report);
  if (r.solved) {
    const auto& s = r.spectrum;
    std::printf("eigenvalues: %zu  exclusion interval [%.6g, %.6g]  max|Re gamma| %.6g\n",
                s.entries.size(), s.exclusion.lower, s.exclusion.upper, s.max_abs_re);
    for (int k = 0; k < 5; ++k) {
      std::printf("  %-22s %d\n",
                  std::string(wgp::to_string(static_cast<wgp::WaveClass>(k))).c_str(),
                  s.counts[k]);
    }
  }
  if (!r.matches.empty()) {
    int used = 0, failed = 0;
    for (const auto& m : r.matches) {
      used += m.used;
      failed += m.used && !m.pass;
    }
    std::printf("oracle: %d roots compared, %d outside tolerance\n", used, failed);
  }
  std::printf("outputs in %s\n", c.output.dir.string().c_str());
  return r.exit_code;
}

int cmd_oracle(const CommonArgs& a) {
  const auto c = load(a);
  if (c.oracle.kind == wgp::OracleKind::kNone) {
    std::fprintf(stderr, "the config has no [oracle] kind\n");
    return 2;
  }
  const auto roots = wgp::oracle_roots(c);
  std::filesystem::create_directories(c.output.dir);
  const auto path = c.output.dir / "oracle_roots.csv";
  std::ofstream out(path);
  if (!out) throw wgp::Error("cannot write " + path.string());
  wgp::write_oracle_csv(out, roots);
  std::printf("wrote %zu roots to %s\n", roots.size(), path.string().c_str());
  return 0;
}

int cmd_sweep(const CommonArgs& a) {
  const auto c = load(a);
  wgp::RunOptions opt;
  opt.deterministic = a.deterministic;
  const auto r = wgp::sweep(c, opt);
  std::printf("%zu steps, dispersion table in %s\n", r.eps2.size(),
              (c.output.dir / c.output.dispersion).string().c_str());
  return r.exit_code;
}

void add_common(CLI::App* sub, CommonArgs& a, bool with_fault) {
  sub->add_option("--config", a.config, "Configuration file")->required();
  sub->add_option("--out", a.out, "Output directory (overrides [output] dir)");
  sub->add_option("--refine", a.refine, "Refinement level (multiplies nx, ny)")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--deterministic", a.deterministic,
                "Byte-reproducible outputs (no timings)");
  if (with_fault) {
    sub->add_option("--inject-fault", a.fault, "Corrupt the assembly on purpose")
        ->check(CLI::IsMember({"none", "flip-edge", "negate-k"}));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal-wave spectra of shielded waveguides with dielectric inclusions"};
  app.require_subcommand(1);
  CommonArgs args;
  auto* mesh = app.add_subcommand("mesh", "Generate and save the mesh");
  auto* solve = app.add_subcommand("solve", "Solve, analyze and compare with oracles");
  auto* verify = app.add_subcommand("verify", "Structural property checks only");
  auto* oracle = app.add_subcommand("oracle", "Write analytic oracle roots");
  auto* sweep = app.add_subcommand("sweep", "Sweep eps2 and track branches");
  add_common(mesh, args, false);
  add_common(solve, args, true);
  add_common(verify, args, true);
  add_common(oracle, args, false);
  add_common(sweep, args, false);
  CLI11_PARSE(app, argc, argv);

  try {
    if (*mesh) return cmd_mesh(args);
    if (*solve) return cmd_run(args, true);
    if (*verify) return cmd_run(args, false);
    if (*oracle) return cmd_oracle(args);
    if (*sweep) return cmd_sweep(args);
  } catch (const wgp::ConfigError& e) {
    std::fprintf(stderr, "%s: config error: %s\n", args.config.c_str(), e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
