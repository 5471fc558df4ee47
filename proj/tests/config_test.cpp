// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#include "wgpencil/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "wgpencil/error.hpp"

namespace wgp {
namespace {

constexpr double kPi = std::numbers::pi;

const std::string kMinimal =
    "[geometry]\n"
    "kind = slab\n"
    "width = pi\n"
    "height = pi\n"
    "interface_x = pi/2\n"
    "[material]\n"
    "eps1 = 1\n"
    "eps2 = 4\n";

int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

TEST(ParseNumber, Expressions) {
  EXPECT_DOUBLE_EQ(parse_number("pi"), kPi);
  EXPECT_DOUBLE_EQ(parse_number("pi/2"), kPi / 2);
  EXPECT_DOUBLE_EQ(parse_number("-0.5*pi"), -kPi / 2);
  EXPECT_DOUBLE_EQ(parse_number("2*pi/3"), 2 * kPi / 3);
  EXPECT_DOUBLE_EQ(parse_number("1e-6"), 1e-6);
  EXPECT_DOUBLE_EQ(parse_number(" 4 "), 4.0);
  EXPECT_THROW(parse_number("four"), ConfigError);
  EXPECT_THROW(parse_number(""), ConfigError);
  EXPECT_THROW(parse_number("pi/"), ConfigError);
  EXPECT_THROW(parse_number("1e999"), ConfigError);
}

TEST(ParseConfig, MinimalDefaults) {
  const SolverConfig c = parse_config(kMinimal);
  EXPECT_EQ(c.geometry.kind, GeometryKind::kSlab);
  EXPECT_DOUBLE_EQ(c.geometry.width, kPi);
  EXPECT_DOUBLE_EQ(c.geometry.interface_x, kPi / 2);
  EXPECT_EQ(c.nx(), 8);
  EXPECT_DOUBLE_EQ(c.eps2, 4.0);
  EXPECT_EQ(c.backend, Backend::kAuto);
  EXPECT_DOUBLE_EQ(c.classification_tol, 1e-6);
  EXPECT_EQ(c.oracle.kind, OracleKind::kNone);
}

TEST(ParseConfig, FullFileWithComments) {
  const SolverConfig c = parse_config(kMinimal +
                                      "; solver section\n"
                                      "[solver]\n"
                                      "backend = lapack   # dense dgeev\n"
                                      "residual_tol = 1e-9\n"
                                      "[oracle]\n"
                                      "kind = slab\n"
                                      "families = LSE, lsm\n"
                                      "transverse_n = 0, 1\n"
                                      "[sweep]\n"
                                      "eps2_from = 1\n"
                                      "eps2_to = 9\n"
                                      "steps = 5\n"
                                      "[output]\n"
                                      "dir = results\n");
  EXPECT_EQ(c.backend, Backend::kLapack);
  EXPECT_DOUBLE_EQ(c.residual_tol, 1e-9);
  ASSERT_EQ(c.oracle.families.size(), 2u);
  EXPECT_EQ(c.oracle.families[1], OracleFamily::kLsm);
  EXPECT_EQ(c.oracle.transverse_n, (std::vector<int>{0, 1}));
  EXPECT_EQ(c.sweep.steps, 5);
  EXPECT_EQ(c.output.dir, std::filesystem::path("results"));
}

TEST(ParseConfig, RefinementMultipliesGrid) {
  const SolverConfig c =
      parse_config(kMinimal + "[geometry]\nnx = 4\nny = 6\nrefinement = 3\n");
  EXPECT_EQ(c.nx(), 12);
  EXPECT_EQ(c.ny(), 18);
}

TEST(ParseConfig, PermittivityBelowOneReportsItsLine) {
  std::string text = kMinimal;
  text.replace(text.find("eps2 = 4"), 8, "eps2 = 0.5");
  EXPECT_EQ(error_line(text), 8);
  try {
    parse_config(text);
    FAIL() << "expected a ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 8"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("material.eps2"), std::string::npos);
  }
}

TEST(ParseConfig, SyntaxErrorsAreLinePrecise) {
  EXPECT_EQ(error_line("[geometry\n"), 1);
  EXPECT_EQ(error_line("\n[colors]\n"), 2);
  EXPECT_EQ(error_line("width = 1\n"), 1);
  EXPECT_EQ(error_line(kMinimal + "colour = red\n"), 9);
  EXPECT_EQ(error_line(kMinimal + "eps1 = 2\n"), 9);
  EXPECT_EQ(error_line(kMinimal + "[solver]\nbackend =\n"), 10);
  EXPECT_EQ(error_line(kMinimal + "[solver]\nbackend = arpack\n"), 10);
  EXPECT_EQ(error_line(kMinimal + "[geometry]\nnx = 2.5\n"), 10);
  EXPECT_EQ(error_line(kMinimal + "[solver]\njunk\n"), 10);
}

TEST(ParseConfig, SemanticValidation) {
  EXPECT_THROW(parse_config(kMinimal + "[geometry]\nrefinement = 0\n"), ConfigError);
  EXPECT_THROW(parse_config(kMinimal + "[solver]\nresidual_tol = 0\n"), ConfigError);
  EXPECT_THROW(parse_config(kMinimal + "[oracle]\nkind = homogeneous\n"), ConfigError);
  EXPECT_THROW(parse_config(kMinimal + "[sweep]\nsteps = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("[geometry]\nkind = slab\nwidth = 1\nheight = 1\n"
                            "interface_x = 1\n"),
               ConfigError);
  EXPECT_THROW(parse_config("[geometry]\nkind = file\n"), ConfigError);
}

TEST(ParseConfig, MeshFileIsRelativeToConfig) {
  const SolverConfig c =
      parse_config("[geometry]\nkind = file\nmesh_file = m.txt\n", "/data/run");
  EXPECT_EQ(c.geometry.mesh_file, std::filesystem::path("/data/run/m.txt"));
}

TEST(MakeMesh, SnapsInterfaceAndBuildsGrid) {
  const SolverConfig c =
      parse_config("[geometry]\nkind = slab\nwidth = 1\nheight = 1\n"
                   "interface_x = 0.3\nnx = 4\nny = 4\n");
  EXPECT_DOUBLE_EQ(snapped_interface(c), 0.25);
  EXPECT_EQ(make_mesh(c).num_nodes(), 25u);
}

TEST(LoadConfig, ShippedConfigsParse) {
  const std::filesystem::path dir = std::filesystem::path(WGP_SOURCE_DIR) / "configs";
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".ini") continue;
    EXPECT_NO_THROW(load_config(entry.path())) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 3);
  EXPECT_THROW(load_config(dir / "missing.ini"), ConfigError);
}

}  // namespace
}  // namespace wgp
