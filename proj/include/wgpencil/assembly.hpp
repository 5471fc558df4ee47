// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

#include <Eigen/Core>

#include "wgpencil/mesh.hpp"
#include "wgpencil/spaces.hpp"

namespace wgp {

/// Discrete operators over the product space, Pi block first. All entries are
/// real; the matrices are symmetric by construction.
struct PencilMatrices {
  Eigen::MatrixXd K;
  Eigen::MatrixXd A1;
  Eigen::MatrixXd A2;
  Eigen::MatrixXd S;
  double eps1 = 1.0;
  double eps2 = 1.0;
  Eigen::MatrixXd gram;
  Eigen::Index pi_dim = 0;

  Eigen::Index dim() const { return K.rows(); }
  double eps_max() const { return eps1 > eps2 ? eps1 : eps2; }
};

struct AssemblyOptions {
  /// Reject interface edges whose stored tangent does not have region 1 on
  /// its left. Disabled only to inject orientation faults.
  bool check_orientation = true;
  int workers = 0;  // 0: default_workers()
};

/// a1(f,g) = int eps grad f1 . grad g1 + grad f2 . grad g2
Eigen::MatrixXd assemble_a1(const FieldSpaces& spaces, const Mesh& mesh,
                            double eps1, double eps2, int workers = 0);
/// a2(f,g) = int grad f1 . grad g1 + (1/eps) grad f2 . grad g2
Eigen::MatrixXd assemble_a2(const FieldSpaces& spaces, const Mesh& mesh,
                            double eps1, double eps2, int workers = 0);
/// k(f,g) = int eps f1 g1 + f2 g2
Eigen::MatrixXd assemble_k(const FieldSpaces& spaces, const Mesh& mesh,
                           double eps1, double eps2, int workers = 0);

/// s(f,g) = int_Gamma (d f1/d tau) g2 - (d f2/d tau) g1, integrated exactly
/// edge by edge along the stored interface orientation.
Eigen::MatrixXd assemble_s_line(const FieldSpaces& spaces, const Mesh& mesh,
                                bool check_orientation = true);

/// The same form written as a volume integral with weight +1/2 on region 1 and
/// -1/2 on region 2 of the rotated gradient pairing. Independent of the stored
/// interface orientation.
Eigen::MatrixXd assemble_s_volume(const FieldSpaces& spaces, const Mesh& mesh,
                                  int workers = 0);

PencilMatrices assemble_all(const FieldSpaces& spaces, const Mesh& mesh,
                            double eps1, double eps2,
                            const AssemblyOptions& options = {});

/// Writes the nonzero entries as "row col value" lines (17 significant
/// digits), zero-based.
void write_triplets(std::ostream& out, const Eigen::MatrixXd& m);

}  // namespace wgp
