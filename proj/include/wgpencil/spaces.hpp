// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "wgpencil/mesh.hpp"
#include "wgpencil/nodal.hpp"

namespace wgp {

/// Orthonormal basis N of the complement of the mean functional, built from a
/// single Householder reflector H = I - beta w w^T with H m = -sign(m0)|m| e0.
/// N consists of columns 1..n-1 of H, so m^T N = 0 and N^T N = I.
class ZeroMeanBasis {
 public:
  ZeroMeanBasis() = default;
  explicit ZeroMeanBasis(Eigen::VectorXd mean);

  Eigen::Index nodal_dim() const { return mean_.size(); }
  Eigen::Index reduced_dim() const { return mean_.size() - 1; }
  const Eigen::VectorXd& mean() const { return mean_; }

  /// Nodal values N y of reduced coordinates y.
  Eigen::VectorXcd expand(const Eigen::VectorXcd& y) const;
  /// Reduced coordinates N^T f of a nodal vector f.
  Eigen::VectorXcd restrict(const Eigen::VectorXcd& f) const;

  Eigen::MatrixXd dense() const;

  /// N^T M N. The result is exactly symmetric whenever M is.
  Eigen::MatrixXd reduce_symmetric(const SparseMatrix& m) const;
  Eigen::MatrixXd reduce_symmetric(const Eigen::MatrixXd& m) const;
  /// N^T X (nodal rows reduced).
  Eigen::MatrixXd reduce_rows(const Eigen::MatrixXd& x) const;
  /// Y N (nodal columns reduced). reduce_cols(X^T) == reduce_rows(X)^T exactly.
  Eigen::MatrixXd reduce_cols(const Eigen::MatrixXd& y) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::VectorXd w_;
  double beta_ = 0.0;
};

/// Nodal Pi and Psi values of a product-space vector.
struct NodalFields {
  Eigen::VectorXcd pi;   // zero on shielded nodes
  Eigen::VectorXcd psi;  // zero mean
};

/// Discrete product space: H_0^1 for the electric longitudinal component (Pi,
/// zero on the shield and on both sides of a slit) times the zero-mean H^1
/// space for the magnetic one (Psi). Coordinates are ordered Pi block first,
/// then the reduced Psi block.
struct FieldSpaces {
  std::size_t num_nodes = 0;
  std::vector<int> pi_index;  // node -> Pi coordinate, -1 when pinned
  std::vector<int> pi_nodes;  // Pi coordinate -> node
  ZeroMeanBasis psi_basis;
  /// Gradient inner product on the product space, diag(G_pi, G_psi).
  Eigen::MatrixXd gram;

  Eigen::Index pi_dim() const { return static_cast<Eigen::Index>(pi_nodes.size()); }
  Eigen::Index psi_dim() const { return psi_basis.reduced_dim(); }
  Eigen::Index dim() const { return pi_dim() + psi_dim(); }

  /// Restricts a nodal matrix (shielded rows/columns dropped) to the Pi block.
  Eigen::MatrixXd restrict_pi(const SparseMatrix& nodal) const;

  /// N^T M N for a symmetric nodal matrix over all Psi nodes.
  Eigen::MatrixXd zero_mean_transform(const SparseMatrix& nodal) const;
  Eigen::MatrixXd zero_mean_transform(const Eigen::MatrixXd& nodal) const;

  NodalFields to_nodal(const Eigen::VectorXcd& x) const;
  Eigen::VectorXcd from_nodal(const Eigen::VectorXcd& pi,
                              const Eigen::VectorXcd& psi) const;
};

FieldSpaces build_spaces(const Mesh& mesh);

}  // namespace wgp
