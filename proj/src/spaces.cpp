// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#include "wgpencil/spaces.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "wgpencil/error.hpp"

namespace wgp {

ZeroMeanBasis::ZeroMeanBasis(Eigen::VectorXd mean) : mean_(std::move(mean)) {
  if (mean_.size() < 2) {
    throw AssemblyError("zero-mean basis needs at least two nodal values");
  }
  const double norm = mean_.norm();
  if (!(norm > 0.0)) throw AssemblyError("mean vector is zero");
  w_ = mean_;
  w_[0] += (mean_[0] < 0.0 ? -norm : norm);
  beta_ = 2.0 / w_.squaredNorm();
}

Eigen::VectorXcd ZeroMeanBasis::expand(const Eigen::VectorXcd& y) const {
  if (y.size() != reduced_dim()) {
    throw AssemblyError("zero-mean coordinates have the wrong length");
  }
  const Eigen::Index n = nodal_dim();
  std::complex<double> s = 0.0;
  for (Eigen::Index k = 1; k < n; ++k) s += w_[k] * y[k - 1];
  Eigen::VectorXcd x(n);
  x[0] = -beta_ * w_[0] * s;
  for (Eigen::Index k = 1; k < n; ++k) x[k] = y[k - 1] - beta_ * w_[k] * s;
  return x;
}

Eigen::VectorXcd ZeroMeanBasis::restrict(const Eigen::VectorXcd& f) const {
  if (f.size() != nodal_dim()) {
    throw AssemblyError("nodal vector has the wrong length");
  }
  const Eigen::Index n = nodal_dim();
  std::complex<double> s = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) s += w_[k] * f[k];
  Eigen::VectorXcd y(n - 1);
  for (Eigen::Index k = 1; k < n; ++k) y[k - 1] = f[k] - beta_ * w_[k] * s;
  return y;
}

Eigen::MatrixXd ZeroMeanBasis::dense() const {
  const Eigen::Index n = nodal_dim();
  Eigen::MatrixXd h = -beta_ * w_ * w_.transpose();
  h.diagonal().array() += 1.0;
  return h.rightCols(n - 1);
}

Eigen::MatrixXd ZeroMeanBasis::reduce_symmetric(const SparseMatrix& m) const {
  return reduce_symmetric(Eigen::MatrixXd(m));
}

Eigen::MatrixXd ZeroMeanBasis::reduce_symmetric(const Eigen::MatrixXd& m) const {
  const Eigen::Index n = nodal_dim();
  if (m.rows() != n || m.cols() != n) {
    throw AssemblyError("nodal matrix is " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + ", expected " +
                        std::to_string(n) + "x" + std::to_string(n));
  }
  const Eigen::VectorXd u = m * w_;
  const double c = w_.dot(u);
  const double bb = beta_ * beta_ * c;
  Eigen::MatrixXd r(n - 1, n - 1);
  for (Eigen::Index j = 1; j < n; ++j) {
    for (Eigen::Index i = 1; i < n; ++i) {
      r(i - 1, j - 1) = m(i, j) - beta_ * (w_[i] * u[j] + u[i] * w_[j]) +
                        bb * (w_[i] * w_[j]);
    }
  }
  return r;
}

Eigen::MatrixXd ZeroMeanBasis::reduce_rows(const Eigen::MatrixXd& x) const {
  const Eigen::Index n = nodal_dim();
  if (x.rows() != n) throw AssemblyError("row count does not match basis");
  Eigen::MatrixXd out(n - 1, x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    double t = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) t += w_[k] * x(k, j);
    for (Eigen::Index i = 1; i < n; ++i) {
      out(i - 1, j) = x(i, j) - beta_ * (w_[i] * t);
    }
  }
  return out;
}

Eigen::MatrixXd ZeroMeanBasis::reduce_cols(const Eigen::MatrixXd& y) const {
  const Eigen::Index n = nodal_dim();
  if (y.cols() != n) throw AssemblyError("column count does not match basis");
  Eigen::MatrixXd out(y.rows(), n - 1);
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    double t = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) t += w_[k] * y(i, k);
    for (Eigen::Index j = 1; j < n; ++j) {
      out(i, j - 1) = y(i, j) - beta_ * (w_[j] * t);
    }
  }
  return out;
}

Eigen::MatrixXd FieldSpaces::restrict_pi(const SparseMatrix& nodal) const {
  if (static_cast<std::size_t>(nodal.rows()) != num_nodes ||
      static_cast<std::size_t>(nodal.cols()) != num_nodes) {
    throw AssemblyError("nodal matrix does not match the mesh");
  }
  const Eigen::Index n = pi_dim();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < nodal.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(nodal, k); it; ++it) {
      const int r = pi_index[it.row()];
      const int c = pi_index[it.col()];
      if (r >= 0 && c >= 0) out(r, c) = it.value();
    }
  }
  return out;
}

Eigen::MatrixXd FieldSpaces::zero_mean_transform(const SparseMatrix& nodal) const {
  return psi_basis.reduce_symmetric(nodal);
}

Eigen::MatrixXd FieldSpaces::zero_mean_transform(
    const Eigen::MatrixXd& nodal) const {
  return psi_basis.reduce_symmetric(nodal);
}

NodalFields FieldSpaces::to_nodal(const Eigen::VectorXcd& x) const {
  if (x.size() != dim()) {
    throw AssemblyError("product-space vector has the wrong length");
  }
  NodalFields f;
  f.pi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(num_nodes));
  for (std::size_t k = 0; k < pi_nodes.size(); ++k) {
    f.pi[pi_nodes[k]] = x[static_cast<Eigen::Index>(k)];
  }
  f.psi = psi_basis.expand(x.tail(psi_dim()));
  return f;
}

Eigen::VectorXcd FieldSpaces::from_nodal(const Eigen::VectorXcd& pi,
                                         const Eigen::VectorXcd& psi) const {
  const auto n = static_cast<Eigen::Index>(num_nodes);
  if (pi.size() != n || psi.size() != n) {
    throw AssemblyError("nodal field has the wrong length");
  }
  Eigen::VectorXcd x(dim());
  for (std::size_t k = 0; k < pi_nodes.size(); ++k) {
    x[static_cast<Eigen::Index>(k)] = pi[pi_nodes[k]];
  }
  x.tail(psi_dim()) = psi_basis.restrict(psi);
  return x;
}

FieldSpaces build_spaces(const Mesh& mesh) {
  FieldSpaces s;
  s.num_nodes = mesh.num_nodes();
  const auto shielded = mesh.shielded_nodes();
  s.pi_index.assign(s.num_nodes, -1);
  for (std::size_t v = 0; v < s.num_nodes; ++v) {
    if (!shielded[v]) {
      s.pi_index[v] = static_cast<int>(s.pi_nodes.size());
      s.pi_nodes.push_back(static_cast<int>(v));
    }
  }
  if (s.pi_nodes.empty()) {
    throw MeshError("mesh has no interior nodes for the electric field; refine it");
  }
  s.psi_basis = ZeroMeanBasis(nodal_mean(mesh));

  const SparseMatrix stiff = nodal_stiffness(mesh);
  const Eigen::Index np = s.pi_dim();
  s.gram = Eigen::MatrixXd::Zero(s.dim(), s.dim());
  s.gram.topLeftCorner(np, np) = s.restrict_pi(stiff);
  s.gram.bottomRightCorner(s.psi_dim(), s.psi_dim()) =
      s.zero_mean_transform(stiff);
  return s;
}

}  // namespace wgp
