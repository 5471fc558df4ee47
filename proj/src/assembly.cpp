// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#include "wgpencil/assembly.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "element_loop.hpp"
#include "wgpencil/element.hpp"
#include "wgpencil/error.hpp"

namespace wgp {

namespace {

void check_permittivity(double eps1, double eps2) {
  for (double e : {eps1, eps2}) {
    if (!std::isfinite(e) || e < 1.0) {
      throw AssemblyError("relative permittivity must be a real number >= 1, got " +
                          std::to_string(e));
    }
  }
}

Eigen::MatrixXd block_diagonal(const FieldSpaces& spaces,
                               const SparseMatrix& pi_nodal,
                               const SparseMatrix& psi_nodal) {
  const Eigen::Index np = spaces.pi_dim();
  const Eigen::Index ns = spaces.psi_dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(spaces.dim(), spaces.dim());
  m.topLeftCorner(np, np) = spaces.restrict_pi(pi_nodal);
  m.bottomRightCorner(ns, ns) = spaces.zero_mean_transform(psi_nodal);
  return m;
}

// Places the nodal coupling blocks X = [psi node, pi dof] and
// Y = [pi dof, psi node] into the off-diagonal blocks of the product space.
Eigen::MatrixXd off_diagonal(const FieldSpaces& spaces, const Eigen::MatrixXd& x,
                             const Eigen::MatrixXd& y) {
  const Eigen::Index np = spaces.pi_dim();
  const Eigen::Index ns = spaces.psi_dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(spaces.dim(), spaces.dim());
  m.bottomLeftCorner(ns, np) = spaces.psi_basis.reduce_rows(x);
  m.topRightCorner(np, ns) = spaces.psi_basis.reduce_cols(y);
  return m;
}

}  // namespace

Eigen::MatrixXd assemble_a1(const FieldSpaces& spaces, const Mesh& mesh,
                            double eps1, double eps2, int workers) {
  check_permittivity(eps1, eps2);
  return block_diagonal(spaces, nodal_stiffness(mesh, {eps1, eps2}, workers),
                        nodal_stiffness(mesh, {1.0, 1.0}, workers));
}

Eigen::MatrixXd assemble_a2(const FieldSpaces& spaces, const Mesh& mesh,
                            double eps1, double eps2, int workers) {
  check_permittivity(eps1, eps2);
  return block_diagonal(spaces, nodal_stiffness(mesh, {1.0, 1.0}, workers),
                        nodal_stiffness(mesh, {1.0 / eps1, 1.0 / eps2}, workers));
}

Eigen::MatrixXd assemble_k(const FieldSpaces& spaces, const Mesh& mesh,
                           double eps1, double eps2, int workers) {
  check_permittivity(eps1, eps2);
  return block_diagonal(spaces, nodal_mass(mesh, {eps1, eps2}, workers),
                        nodal_mass(mesh, {1.0, 1.0}, workers));
}

Eigen::MatrixXd assemble_s_line(const FieldSpaces& spaces, const Mesh& mesh,
                                bool check_orientation) {
  const auto nn = static_cast<Eigen::Index>(spaces.num_nodes);
  const Eigen::Index np = spaces.pi_dim();
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(nn, np);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(np, nn);
  const auto& edges = mesh.interface_edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (check_orientation && !mesh.interface_orientation_consistent(k)) {
      throw AssemblyError("interface edge " + std::to_string(edges[k].from) +
                          "-" + std::to_string(edges[k].to) +
                          " is not oriented with region 1 on its left");
    }
    // Along a -> b: d(phi_a)/d tau = -1/h, d(phi_b)/d tau = +1/h, and each
    // trace integrates to h/2, so every entry is +-1/2.
    const int nodes[2] = {edges[k].from, edges[k].to};
    const double sgn[2] = {-1.0, 1.0};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const int pj = spaces.pi_index[nodes[j]];
        if (pj >= 0) x(nodes[i], pj) += 0.5 * sgn[j];
        const int pi = spaces.pi_index[nodes[i]];
        if (pi >= 0) y(pi, nodes[j]) -= 0.5 * sgn[j];
      }
    }
  }
  return off_diagonal(spaces, x, y);
}

Eigen::MatrixXd assemble_s_volume(const FieldSpaces& spaces, const Mesh& mesh,
                                  int workers) {
  const auto nn = static_cast<Eigen::Index>(spaces.num_nodes);
  // Nodal curl pairing c(i, j) = (xi/2) int d2(phi_j) d1(phi_i) - d1(phi_j) d2(phi_i);
  // the psi-test/pi-trial block is c and the pi-test/psi-trial block is c^T.
  const SparseMatrix c = detail::assemble_elements(
      mesh, nn, nn, workers, [&](std::size_t t, detail::Triplets& out) {
        const auto& tri = mesh.triangles()[t];
        const auto e = LinearTriangle::from_mesh(mesh, t);
        const double xi = tri.region == 1 ? 0.5 : -0.5;
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            const double v = e.grad[j].y() * e.grad[i].x() -
                             e.grad[j].x() * e.grad[i].y();
            out.emplace_back(tri.nodes[i], tri.nodes[j], xi * e.area * v);
          }
        }
      });
  const Eigen::Index np = spaces.pi_dim();
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(nn, np);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(np, nn);
  for (int k = 0; k < c.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(c, k); it; ++it) {
      const int pj = spaces.pi_index[it.col()];
      if (pj >= 0) {
        x(it.row(), pj) = it.value();
        y(pj, it.row()) = it.value();
      }
    }
  }
  return off_diagonal(spaces, x, y);
}

PencilMatrices assemble_all(const FieldSpaces& spaces, const Mesh& mesh,
                            double eps1, double eps2,
                            const AssemblyOptions& options) {
  check_permittivity(eps1, eps2);
  const int w = options.workers;
  const SparseMatrix stiff = nodal_stiffness(mesh, {1.0, 1.0}, w);
  const SparseMatrix stiff_eps = nodal_stiffness(mesh, {eps1, eps2}, w);
  const SparseMatrix stiff_inv =
      nodal_stiffness(mesh, {1.0 / eps1, 1.0 / eps2}, w);
  PencilMatrices m;
  m.eps1 = eps1;
  m.eps2 = eps2;
  m.pi_dim = spaces.pi_dim();
  m.gram = spaces.gram;
  m.A1 = block_diagonal(spaces, stiff_eps, stiff);
  m.A2 = block_diagonal(spaces, stiff, stiff_inv);
  m.K = block_diagonal(spaces, nodal_mass(mesh, {eps1, eps2}, w),
                       nodal_mass(mesh, {1.0, 1.0}, w));
  m.S = assemble_s_line(spaces, mesh, options.check_orientation);
  return m;
}

void write_triplets(std::ostream& out, const Eigen::MatrixXd& m) {
  char buf[96];
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) == 0.0) continue;
      std::snprintf(buf, sizeof buf, "%ld %ld %.17g\n", static_cast<long>(i),
                    static_cast<long>(j), m(i, j));
      out << buf;
    }
  }
}

}  // namespace wgp
