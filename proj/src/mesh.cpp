// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#include "wgpencil/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "wgpencil/error.hpp"

namespace wgp {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey make_key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

std::string describe(const TaggedEdge& e) {
  std::ostringstream os;
  os << "edge (" << e.a << ", " << e.b << ") tagged " << to_string(e.tag);
  return os.str();
}

// True if a -> b is one of the counterclockwise sides of the triangle.
bool traverses(const Triangle& t, int a, int b) {
  for (int k = 0; k < 3; ++k) {
    if (t.nodes[k] == a && t.nodes[(k + 1) % 3] == b) return true;
  }
  return false;
}

bool same_point(const Point& p, const Point& q, double scale) {
  return std::abs(p.x - q.x) <= 1e-12 * scale &&
         std::abs(p.y - q.y) <= 1e-12 * scale;
}

void check_rect_args(double width, double height, int nx, int ny) {
  if (!(width > 0.0) || !(height > 0.0)) {
    throw MeshError("rectangle dimensions must be positive");
  }
  if (nx < 2 || ny < 2) {
    throw MeshError("grid needs nx >= 2 and ny >= 2");
  }
}

}  // namespace

std::string_view to_string(EdgeTag tag) {
  switch (tag) {
    case EdgeTag::kGamma0:
      return "gamma0";
    case EdgeTag::kGamma:
      return "gamma";
    case EdgeTag::kGammaPrime:
      return "gammaprime";
  }
  return "gamma0";
}

EdgeTag edge_tag_from_string(std::string_view name) {
  if (name == "gamma0") return EdgeTag::kGamma0;
  if (name == "gamma") return EdgeTag::kGamma;
  if (name == "gammaprime") return EdgeTag::kGammaPrime;
  throw MeshError("unknown edge tag '" + std::string(name) + "'");
}

Mesh::Mesh(std::vector<Point> nodes, std::vector<Triangle> triangles,
           std::vector<TaggedEdge> edges)
    : nodes_(std::move(nodes)),
      triangles_(std::move(triangles)),
      edges_(std::move(edges)) {
  validate_and_orient();
}

void Mesh::validate_and_orient() {
  const int n = static_cast<int>(nodes_.size());
  if (n == 0) throw MeshError("mesh has no nodes");
  if (triangles_.empty()) throw MeshError("mesh has no triangles");

  std::map<EdgeKey, std::vector<int>> adjacency;
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    for (int v : tri.nodes) {
      if (v < 0 || v >= n) {
        throw MeshError("triangle " + std::to_string(t) +
                        " references missing node " + std::to_string(v));
      }
    }
    if (tri.nodes[0] == tri.nodes[1] || tri.nodes[1] == tri.nodes[2] ||
        tri.nodes[0] == tri.nodes[2]) {
      throw MeshError("triangle " + std::to_string(t) + " repeats a node");
    }
    if (tri.region != 1 && tri.region != 2) {
      throw MeshError("triangle " + std::to_string(t) + " has region " +
                      std::to_string(tri.region) + " (expected 1 or 2)");
    }
    if (!(signed_area(t) > 0.0)) {
      throw MeshError("triangle " + std::to_string(t) +
                      " is not counterclockwise with positive area");
    }
    for (int k = 0; k < 3; ++k) {
      adjacency[make_key(tri.nodes[k], tri.nodes[(k + 1) % 3])].push_back(
          static_cast<int>(t));
    }
  }
  for (const auto& [key, tris] : adjacency) {
    if (tris.size() > 2) {
      throw MeshError("edge (" + std::to_string(key.first) + ", " +
                      std::to_string(key.second) +
                      ") is shared by more than two triangles");
    }
  }

  std::map<EdgeKey, std::size_t> tagged;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n || e.a == e.b) {
      throw MeshError(describe(e) + " references an invalid node");
    }
    const auto key = make_key(e.a, e.b);
    const auto it = adjacency.find(key);
    if (it == adjacency.end()) {
      throw MeshError(describe(e) + " is not a side of any triangle");
    }
    if (!tagged.emplace(key, i).second) {
      throw MeshError(describe(e) + " is listed more than once");
    }
    const auto& tris = it->second;
    if (e.tag == EdgeTag::kGamma) {
      if (tris.size() != 2) {
        throw MeshError(describe(e) + " lies on the mesh boundary");
      }
      if (triangles_[tris[0]].region == triangles_[tris[1]].region) {
        throw MeshError(describe(e) + " is interior to region " +
                        std::to_string(triangles_[tris[0]].region));
      }
    } else if (tris.size() != 1) {
      throw MeshError(describe(e) + " is not a boundary edge");
    }
  }

  for (const auto& [key, tris] : adjacency) {
    const bool is_tagged = tagged.count(key) > 0;
    if (tris.size() == 1 && !is_tagged) {
      throw MeshError("untagged boundary edge (" + std::to_string(key.first) +
                      ", " + std::to_string(key.second) + ")");
    }
    if (tris.size() == 2 &&
        triangles_[tris[0]].region != triangles_[tris[1]].region &&
        !is_tagged) {
      throw MeshError("edge (" + std::to_string(key.first) + ", " +
                      std::to_string(key.second) +
                      ") separates the regions but is not tagged gamma");
    }
  }

  // Shielded interface edges come in geometrically coincident pairs, one per
  // side of the slit.
  double scale = 0.0;
  for (const auto& p : nodes_) {
    scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  }
  scale = std::max(scale, 1.0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.tag != EdgeTag::kGammaPrime) continue;
    bool twin = false;
    for (std::size_t j = 0; j < edges_.size() && !twin; ++j) {
      const auto& f = edges_[j];
      if (j == i || f.tag != EdgeTag::kGammaPrime) continue;
      if (make_key(e.a, e.b) == make_key(f.a, f.b)) continue;
      const bool straight = same_point(nodes_[e.a], nodes_[f.a], scale) &&
                            same_point(nodes_[e.b], nodes_[f.b], scale);
      const bool crossed = same_point(nodes_[e.a], nodes_[f.b], scale) &&
                           same_point(nodes_[e.b], nodes_[f.a], scale);
      twin = straight || crossed;
    }
    if (!twin) {
      throw MeshError(describe(e) +
                      " has no coincident partner on the other side of the slit");
    }
  }

  interface_edges_.clear();
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto& e = edges_[i];
    if (e.tag != EdgeTag::kGamma) continue;
    const auto& tris = adjacency.at(make_key(e.a, e.b));
    const int t1 = triangles_[tris[0]].region == 1 ? tris[0] : tris[1];
    const int t2 = t1 == tris[0] ? tris[1] : tris[0];
    if (!traverses(triangles_[t1], e.a, e.b)) std::swap(e.a, e.b);

    InterfaceEdge ie;
    ie.from = e.a;
    ie.to = e.b;
    const double dx = nodes_[e.b].x - nodes_[e.a].x;
    const double dy = nodes_[e.b].y - nodes_[e.a].y;
    ie.length = std::hypot(dx, dy);
    ie.tangent = {dx / ie.length, dy / ie.length};
    ie.normal = {-ie.tangent.y, ie.tangent.x};
    ie.region1_triangle = t1;
    ie.region2_triangle = t2;
    ie.edge_index = i;
    interface_edges_.push_back(ie);
  }
}

double Mesh::signed_area(std::size_t triangle) const {
  const auto& t = triangles_.at(triangle);
  const Point& p = nodes_[t.nodes[0]];
  const Point& q = nodes_[t.nodes[1]];
  const Point& r = nodes_[t.nodes[2]];
  return 0.5 * ((q.x - p.x) * (r.y - p.y) - (r.x - p.x) * (q.y - p.y));
}

double Mesh::total_area() const {
  double sum = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) sum += signed_area(t);
  return sum;
}

Point Mesh::centroid(std::size_t triangle) const {
  const auto& t = triangles_.at(triangle);
  Point c;
  for (int v : t.nodes) {
    c.x += nodes_[v].x / 3.0;
    c.y += nodes_[v].y / 3.0;
  }
  return c;
}

bool Mesh::has_region(int region) const {
  return std::any_of(triangles_.begin(), triangles_.end(),
                     [region](const Triangle& t) { return t.region == region; });
}

std::vector<bool> Mesh::shielded_nodes() const {
  std::vector<bool> shielded(nodes_.size(), false);
  for (const auto& e : edges_) {
    if (e.tag == EdgeTag::kGamma) continue;
    shielded[e.a] = true;
    shielded[e.b] = true;
  }
  return shielded;
}

bool Mesh::interface_orientation_consistent(std::size_t k) const {
  const auto& ie = interface_edges_.at(k);
  const Point c = centroid(ie.region1_triangle);
  const Point& a = nodes_[ie.from];
  const Point& b = nodes_[ie.to];
  const Point mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  const double along_normal =
      (c.x - mid.x) * ie.normal.x + (c.y - mid.y) * ie.normal.y;
  return traverses(triangles_[ie.region1_triangle], ie.from, ie.to) &&
         along_normal > 0.0;
}

Mesh Mesh::with_flipped_interface_edge(std::size_t k) const {
  Mesh copy = *this;
  auto& ie = copy.interface_edges_.at(k);
  std::swap(ie.from, ie.to);
  ie.tangent = {-ie.tangent.x, -ie.tangent.y};
  ie.normal = {-ie.normal.x, -ie.normal.y};
  auto& e = copy.edges_[ie.edge_index];
  std::swap(e.a, e.b);
  return copy;
}

Mesh generate_rect_slab(double width, double height, double slab_x, int nx,
                        int ny) {
  check_rect_args(width, height, nx, ny);
  if (!(slab_x > 0.0) || !(slab_x < width)) {
    throw MeshError("interface position must lie strictly inside (0, width)");
  }
  const long k = std::lround(slab_x / width * nx);
  if (k < 1 || k > nx - 1) {
    throw MeshError("interface position snaps onto the outer wall at nx = " +
                    std::to_string(nx));
  }

  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  std::vector<Point> nodes;
  nodes.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int j = 0; j <= ny; ++j) {
    const double y = j == ny ? height : height * j / ny;
    for (int i = 0; i <= nx; ++i) {
      const double x = i == nx ? width : width * i / nx;
      nodes.push_back({x, y});
    }
  }

  std::vector<Triangle> triangles;
  triangles.reserve(static_cast<std::size_t>(2 * nx * ny));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int region = i < k ? 2 : 1;
      const int p00 = id(i, j), p10 = id(i + 1, j);
      const int p01 = id(i, j + 1), p11 = id(i + 1, j + 1);
      triangles.push_back({{p00, p10, p11}, region});
      triangles.push_back({{p00, p11, p01}, region});
    }
  }

  std::vector<TaggedEdge> edges;
  for (int i = 0; i < nx; ++i) {
    edges.push_back({id(i, 0), id(i + 1, 0), EdgeTag::kGamma0});
  }
  for (int j = 0; j < ny; ++j) {
    edges.push_back({id(nx, j), id(nx, j + 1), EdgeTag::kGamma0});
  }
  for (int i = nx; i > 0; --i) {
    edges.push_back({id(i, ny), id(i - 1, ny), EdgeTag::kGamma0});
  }
  for (int j = ny; j > 0; --j) {
    edges.push_back({id(0, j), id(0, j - 1), EdgeTag::kGamma0});
  }
  for (int j = ny; j > 0; --j) {
    edges.push_back({id(static_cast<int>(k), j), id(static_cast<int>(k), j - 1),
                     EdgeTag::kGamma});
  }
  return Mesh(std::move(nodes), std::move(triangles), std::move(edges));
}

Mesh generate_homogeneous_rect(double width, double height, int nx, int ny,
                               double interface_x) {
  return generate_rect_slab(width, height, interface_x, nx, ny);
}

}  // namespace wgp
