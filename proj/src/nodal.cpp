// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#include "wgpencil/nodal.hpp"

#include <cstdlib>
#include <string>

#include "element_loop.hpp"
#include "wgpencil/element.hpp"

namespace wgp {

int default_workers() {
  const char* env = std::getenv("WGPENCIL_WORKERS");
  if (env == nullptr || *env == '\0') return 1;
  try {
    const int n = std::stoi(env);
    return n >= 1 ? n : 1;
  } catch (const std::exception&) {
    return 1;
  }
}

namespace {

template <class Local>
SparseMatrix nodal_form(const Mesh& mesh, RegionWeights weights, int workers,
                        Local local) {
  const auto n = static_cast<Eigen::Index>(mesh.num_nodes());
  return detail::assemble_elements(
      mesh, n, n, workers, [&](std::size_t t, detail::Triplets& out) {
        const auto& tri = mesh.triangles()[t];
        const auto e = LinearTriangle::from_mesh(mesh, t);
        const double w = weights(tri.region);
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            out.emplace_back(tri.nodes[i], tri.nodes[j], w * local(e, i, j));
          }
        }
      });
}

}  // namespace

SparseMatrix nodal_stiffness(const Mesh& mesh, RegionWeights weights,
                             int workers) {
  return nodal_form(mesh, weights, workers,
                    [](const LinearTriangle& e, int i, int j) {
                      return e.stiffness(i, j);
                    });
}

SparseMatrix nodal_mass(const Mesh& mesh, RegionWeights weights, int workers) {
  return nodal_form(mesh, weights, workers,
                    [](const LinearTriangle& e, int i, int j) {
                      return e.mass(i, j);
                    });
}

Eigen::VectorXd nodal_mean(const Mesh& mesh) {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(mesh.num_nodes());
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const double third = mesh.signed_area(t) / 3.0;
    for (int v : mesh.triangles()[t].nodes) m[v] += third;
  }
  return m;
}

}  // namespace wgp
