// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#include "wgpencil/mesh.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "wgpencil/error.hpp"

namespace wgp {
namespace {

constexpr double kPi = std::numbers::pi;

int count_tag(const Mesh& m, EdgeTag tag) {
  int n = 0;
  for (const auto& e : m.edges()) n += e.tag == tag;
  return n;
}

TEST(Mesh, SlabCountsMatchStructuredGrid) {
  const Mesh m = generate_rect_slab(kPi, kPi, kPi / 2, 8, 8);
  EXPECT_EQ(m.num_nodes(), 81u);
  EXPECT_EQ(m.num_triangles(), 128u);
  EXPECT_EQ(count_tag(m, EdgeTag::kGamma), 8);
  EXPECT_EQ(count_tag(m, EdgeTag::kGamma0), 32);
  EXPECT_EQ(count_tag(m, EdgeTag::kGammaPrime), 0);
  EXPECT_EQ(m.interface_edges().size(), 8u);
  EXPECT_NEAR(m.total_area(), kPi * kPi, 1e-12);
}

TEST(Mesh, RegionsFollowInterfacePosition) {
  const Mesh m = generate_rect_slab(kPi, kPi, kPi / 2, 8, 8);
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const Point c = m.centroid(t);
    EXPECT_EQ(m.triangles()[t].region, c.x < kPi / 2 ? 2 : 1) << "triangle " << t;
  }
}

TEST(Mesh, InterfaceTangentAndNormalAreOriented) {
  const Mesh m = generate_rect_slab(kPi, kPi, kPi / 2, 8, 8);
  for (std::size_t k = 0; k < m.interface_edges().size(); ++k) {
    const auto& e = m.interface_edges()[k];
    EXPECT_TRUE(m.interface_orientation_consistent(k));
    EXPECT_NEAR(std::hypot(e.tangent.x, e.tangent.y), 1.0, 1e-15);
    EXPECT_NEAR(e.tangent.x * e.normal.y - e.tangent.y * e.normal.x, 1.0, 1e-15);
    // Region 2 is on the left, so the normal points in +x.
    EXPECT_NEAR(e.normal.x, 1.0, 1e-15);
    EXPECT_NEAR(e.length, kPi / 8, 1e-14);
    EXPECT_EQ(m.triangles()[e.region1_triangle].region, 1);
    EXPECT_EQ(m.triangles()[e.region2_triangle].region, 2);
  }
}

TEST(Mesh, FlippedEdgeIsDetectedAsInconsistent) {
  const Mesh m = generate_rect_slab(kPi, kPi, kPi / 2, 4, 4);
  const Mesh bad = m.with_flipped_interface_edge(0);
  EXPECT_FALSE(bad.interface_orientation_consistent(0));
  for (std::size_t k = 1; k < bad.interface_edges().size(); ++k) {
    EXPECT_TRUE(bad.interface_orientation_consistent(k));
  }
}

TEST(Mesh, SaveLoadRoundTripIsExact) {
  const Mesh m = generate_rect_slab(kPi, 2.0, 1.1, 6, 5);
  const Mesh back = load_mesh(save_mesh(m));
  EXPECT_TRUE(back == m);
  EXPECT_EQ(save_mesh(back), save_mesh(m));
}

TEST(Mesh, HomogeneousGridKeepsInterface) {
  const Mesh m = generate_homogeneous_rect(kPi, kPi, 16, 16, kPi / 2);
  EXPECT_EQ(m.num_nodes(), 289u);
  EXPECT_EQ(count_tag(m, EdgeTag::kGamma), 16);
}

TEST(Mesh, InterfaceSnapsToGridLine) {
  const Mesh m = generate_rect_slab(1.0, 1.0, 0.3, 4, 4);
  for (const auto& e : m.interface_edges()) {
    EXPECT_DOUBLE_EQ(m.nodes()[e.from].x, 0.25);
  }
}

TEST(Mesh, RejectsDegenerateGenerators) {
  EXPECT_THROW(generate_rect_slab(0.0, 1.0, 0.5, 4, 4), MeshError);
  EXPECT_THROW(generate_rect_slab(1.0, 1.0, 0.5, 1, 4), MeshError);
  EXPECT_THROW(generate_rect_slab(1.0, 1.0, 1.0, 4, 4), MeshError);
  EXPECT_THROW(generate_rect_slab(1.0, 1.0, 0.05, 4, 4), MeshError);
}

TEST(Mesh, RejectsClockwiseTriangle) {
  const std::string text =
      "nodes 3\n0 0\n1 0\n0 1\ntriangles 1\n0 2 1 1\nedges 3\n"
      "0 1 gamma0\n1 2 gamma0\n2 0 gamma0\n";
  EXPECT_THROW(load_mesh(text), MeshError);
}

TEST(Mesh, RejectsUntaggedBoundaryEdge) {
  const std::string text =
      "nodes 3\n0 0\n1 0\n0 1\ntriangles 1\n0 1 2 1\nedges 2\n"
      "0 1 gamma0\n1 2 gamma0\n";
  EXPECT_THROW(load_mesh(text), MeshError);
}

TEST(Mesh, RejectsUntaggedRegionBoundary) {
  const Mesh m = testing::two_cell_slab();
  std::vector<TaggedEdge> edges = m.edges();
  edges.pop_back();
  EXPECT_THROW(Mesh(m.nodes(), m.triangles(), edges), MeshError);
}

TEST(Mesh, RejectsGammaOnOuterBoundary) {
  const Mesh m = testing::two_cell_slab();
  std::vector<TaggedEdge> edges = m.edges();
  edges[0].tag = EdgeTag::kGamma;
  EXPECT_THROW(Mesh(m.nodes(), m.triangles(), edges), MeshError);
}

TEST(Mesh, RejectsBadRegionAndNodeIndices) {
  const Mesh m = testing::two_cell_slab();
  auto tris = m.triangles();
  tris[0].region = 3;
  EXPECT_THROW(Mesh(m.nodes(), tris, m.edges()), MeshError);
  tris = m.triangles();
  tris[0].nodes[0] = 99;
  EXPECT_THROW(Mesh(m.nodes(), tris, m.edges()), MeshError);
}

TEST(Mesh, RejectsUnknownTagAndDuplicates) {
  EXPECT_THROW(edge_tag_from_string("wall"), MeshError);
  const Mesh m = testing::two_cell_slab();
  auto edges = m.edges();
  edges.push_back(edges.front());
  EXPECT_THROW(Mesh(m.nodes(), m.triangles(), edges), MeshError);
}

TEST(Mesh, SlitMeshLoadsWithDuplicatedNodes) {
  int duplicated = 0;
  const Mesh m = testing::slit_mesh(&duplicated);
  EXPECT_EQ(duplicated, 2);
  EXPECT_EQ(m.num_nodes(), 27u);
  EXPECT_EQ(count_tag(m, EdgeTag::kGammaPrime), 4);
  EXPECT_EQ(count_tag(m, EdgeTag::kGamma), 2);
  const Mesh back = load_mesh(save_mesh(m));
  EXPECT_TRUE(back == m);
}

TEST(Mesh, SlitWithoutPartnerIsRejected) {
  const Mesh m = testing::slit_mesh();
  auto edges = m.edges();
  for (auto it = edges.begin(); it != edges.end(); ++it) {
    if (it->tag == EdgeTag::kGammaPrime) {
      it->tag = EdgeTag::kGamma0;
      break;
    }
  }
  EXPECT_THROW(Mesh(m.nodes(), m.triangles(), edges), MeshError);
}

TEST(Mesh, ShieldedNodesCoverWallsAndSlit) {
  const Mesh m = testing::slit_mesh();
  const auto shielded = m.shielded_nodes();
  int free_nodes = 0;
  for (std::size_t i = 0; i < m.num_nodes(); ++i) {
    const Point p = m.nodes()[i];
    const bool wall = p.x == 0 || p.x == 4 || p.y == 0 || p.y == 4;
    const bool slit = p.x == 2 && p.y <= 2;
    EXPECT_EQ(shielded[i], wall || slit) << "node " << i;
    free_nodes += !shielded[i];
  }
  EXPECT_EQ(free_nodes, 7);
}

// Property: random structured slabs have consistent counts and area.
TEST(MeshProperty, RandomSlabsAreValid) {
  testing::Gen gen(11);
  for (int trial = 0; trial < 25; ++trial) {
    const int nx = gen.integer(2, 12);
    const int ny = gen.integer(2, 12);
    const double w = gen.uniform(0.5, 4.0);
    const double h = gen.uniform(0.5, 4.0);
    const double x = w * (gen.integer(1, nx - 1) + 0.1) / nx;
    const Mesh m = generate_rect_slab(w, h, x, nx, ny);
    EXPECT_EQ(m.num_nodes(), static_cast<std::size_t>((nx + 1) * (ny + 1)));
    EXPECT_EQ(m.num_triangles(), static_cast<std::size_t>(2 * nx * ny));
    EXPECT_EQ(count_tag(m, EdgeTag::kGamma), ny);
    EXPECT_NEAR(m.total_area(), w * h, 1e-12 * w * h);
    for (std::size_t k = 0; k < m.interface_edges().size(); ++k) {
      EXPECT_TRUE(m.interface_orientation_consistent(k));
    }
  }
}

}  // namespace
}  // namespace wgp
