// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Core>

#include "wgpencil/mesh.hpp"

namespace wgp {

/// Linear nodal triangle: area and the (constant) gradients of the three
/// barycentric basis functions.
struct LinearTriangle {
  double area = 0.0;
  std::array<Eigen::Vector2d, 3> grad;

  static LinearTriangle from_mesh(const Mesh& mesh, std::size_t t) {
    const auto& tri = mesh.triangles()[t];
    const Point& p0 = mesh.nodes()[tri.nodes[0]];
    const Point& p1 = mesh.nodes()[tri.nodes[1]];
    const Point& p2 = mesh.nodes()[tri.nodes[2]];
    const double twice_area =
        (p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y);
    LinearTriangle e;
    e.area = 0.5 * twice_area;
    // grad(lambda_i) = rot(opposite edge) / (2A)
    e.grad[0] = Eigen::Vector2d(p1.y - p2.y, p2.x - p1.x) / twice_area;
    e.grad[1] = Eigen::Vector2d(p2.y - p0.y, p0.x - p2.x) / twice_area;
    e.grad[2] = Eigen::Vector2d(p0.y - p1.y, p1.x - p0.x) / twice_area;
    return e;
  }

  double stiffness(int i, int j) const { return area * grad[i].dot(grad[j]); }

  // Exact integral of lambda_i * lambda_j.
  double mass(int i, int j) const { return area * (i == j ? 2.0 : 1.0) / 12.0; }
};

}  // namespace wgp
