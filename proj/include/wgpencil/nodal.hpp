// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "wgpencil/mesh.hpp"

namespace wgp {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Piecewise-constant coefficient taking one value per region.
struct RegionWeights {
  double region1 = 1.0;
  double region2 = 1.0;

  double operator()(int region) const { return region == 1 ? region1 : region2; }
};

/// Worker count for element loops, read from WGPENCIL_WORKERS (default 1).
int default_workers();

/// Nodal stiffness matrix of sum_r w_r * int_{Omega_r} grad(u) . grad(v).
///
/// Element contributions are produced in contiguous triangle chunks and
/// concatenated in mesh order, so the result is bitwise identical for any
/// worker count.
SparseMatrix nodal_stiffness(const Mesh& mesh, RegionWeights weights = {},
                             int workers = 0);

/// Nodal mass matrix of sum_r w_r * int_{Omega_r} u v (exact integration).
SparseMatrix nodal_mass(const Mesh& mesh, RegionWeights weights = {},
                        int workers = 0);

/// Integrals of the nodal basis functions over the whole cross-section.
Eigen::VectorXd nodal_mean(const Mesh& mesh);

}  // namespace wgp
