// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace wgp {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Boundary and interface classification of mesh edges.
///   kGamma0     perfectly conducting outer shield
///   kGamma      dielectric interface between region 2 and region 1
///   kGammaPrime shielded part of the interface (a slit with duplicated nodes)
enum class EdgeTag { kGamma0, kGamma, kGammaPrime };

std::string_view to_string(EdgeTag tag);
EdgeTag edge_tag_from_string(std::string_view name);

struct Triangle {
  std::array<int, 3> nodes{};
  int region = 1;  // 1 or 2

  friend bool operator==(const Triangle&, const Triangle&) = default;
};

/// An edge as listed in a mesh file. For kGamma edges the node order is the
/// stored orientation of the interface tangent (a -> b).
struct TaggedEdge {
  int a = 0;
  int b = 0;
  EdgeTag tag = EdgeTag::kGamma0;

  friend bool operator==(const TaggedEdge&, const TaggedEdge&) = default;
};

/// Oriented piece of the interface. The tangent runs from `from` to `to`; the
/// normal is the tangent rotated counterclockwise by 90 degrees, so that
/// tangent x normal = +1 and the normal points out of region 2 into region 1.
struct InterfaceEdge {
  int from = 0;
  int to = 0;
  Point tangent;
  Point normal;
  double length = 0.0;
  int region1_triangle = -1;
  int region2_triangle = -1;
  std::size_t edge_index = 0;  // position in Mesh::edges()
};

/// Triangulated waveguide cross-section with region and edge tags.
///
/// Construction validates every structural invariant and orients the interface
/// edges so that the region-1 triangle lies to the left of the tangent.
/// Instances are immutable afterwards.
class Mesh {
 public:
  Mesh(std::vector<Point> nodes, std::vector<Triangle> triangles,
       std::vector<TaggedEdge> edges);

  const std::vector<Point>& nodes() const { return nodes_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<TaggedEdge>& edges() const { return edges_; }
  const std::vector<InterfaceEdge>& interface_edges() const {
    return interface_edges_;
  }

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }

  double signed_area(std::size_t triangle) const;
  double total_area() const;
  Point centroid(std::size_t triangle) const;
  bool has_region(int region) const;

  /// Nodes touching a kGamma0 or kGammaPrime edge, where the electric
  /// longitudinal component is pinned to zero.
  std::vector<bool> shielded_nodes() const;

  /// True when the stored tangent of interface edge `k` has the region-1
  /// triangle on its left.
  bool interface_orientation_consistent(std::size_t k) const;

  /// Copy of this mesh with the stored orientation of interface edge `k`
  /// reversed, skipping validation. Used to inject faults into the interface
  /// assembly.
  Mesh with_flipped_interface_edge(std::size_t k) const;

  friend bool operator==(const Mesh& lhs, const Mesh& rhs) {
    return lhs.nodes_ == rhs.nodes_ && lhs.triangles_ == rhs.triangles_ &&
           lhs.edges_ == rhs.edges_;
  }

 private:
  void validate_and_orient();

  std::vector<Point> nodes_;
  std::vector<Triangle> triangles_;
  std::vector<TaggedEdge> edges_;
  std::vector<InterfaceEdge> interface_edges_;
};

/// Structured triangulation of [0,width]x[0,height] with region 2 on the left
/// of the vertical interface at slab_x (snapped to the nearest grid line) and
/// region 1 on the right. Each cell is split along its lower-left to
/// upper-right diagonal.
Mesh generate_rect_slab(double width, double height, double slab_x, int nx,
                        int ny);

/// Same triangulation as generate_rect_slab; the interface is kept so the
/// coupling term can still be assembled when both permittivities are equal.
Mesh generate_homogeneous_rect(double width, double height, int nx, int ny,
                               double interface_x);

/// Line-oriented text format:
///
///     nodes <N>
///     <x> <y>
///     triangles <M>
///     <i> <j> <k> <region>
///     edges <E>
///     <i> <j> <gamma0|gamma|gammaprime>
Mesh load_mesh(std::string_view text);
std::string save_mesh(const Mesh& mesh);

Mesh load_mesh_file(const std::filesystem::path& path);
void save_mesh_file(const Mesh& mesh, const std::filesystem::path& path);

}  // namespace wgp
