// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#include "wgpencil/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "wgpencil/error.hpp"

namespace wgp {

bool ExclusionInterval::contains(double x, double margin) const {
  const double a = std::abs(x);
  return a >= lower - margin && a <= upper + margin;
}

std::array<double, 2> ExclusionInterval::degeneration_points() const {
  return {std::sqrt(eps1), std::sqrt(eps2)};
}

ExclusionInterval exclusion_interval(double eps1, double eps2) {
  ExclusionInterval e;
  e.eps1 = eps1;
  e.eps2 = eps2;
  e.delta = 0.5 * (eps2 - eps1);
  const double d = std::abs(e.delta);
  // Roots of |gamma^2 - p^2| = |delta| (1 + |gamma|). Written with eps1 and
  // eps2 this assumes eps2 >= eps1; min/max keeps it valid for either order.
  const double lo = std::min(eps1, eps2);
  const double hi = std::max(eps1, eps2);
  e.lower = 0.5 * (std::sqrt(e.delta * e.delta + 4.0 * lo) - d);
  e.upper = 0.5 * (std::sqrt(e.delta * e.delta + 4.0 * hi) + d);
  e.p = std::sqrt(0.5 * (eps1 + eps2));
  return e;
}

Pencil::Pencil(std::array<Eigen::MatrixXd, 5> coefficients, double eps1,
               double eps2, Eigen::Index pi_dim)
    : c_(std::move(coefficients)), eps1_(eps1), eps2_(eps2), pi_dim_(pi_dim) {
  const Eigen::Index n = c_[0].rows();
  for (int k = 0; k < 5; ++k) {
    if (c_[k].rows() != n || c_[k].cols() != n) {
      throw AssemblyError("pencil coefficient C" + std::to_string(k) +
                          " has mismatched dimensions");
    }
    norms_[k] = c_[k].norm();
  }
  if (pi_dim < 0 || pi_dim > n) throw AssemblyError("invalid Pi block size");
}

double Pencil::max_coefficient_norm() const {
  return *std::max_element(norms_.begin(), norms_.end());
}

Eigen::MatrixXcd Pencil::evaluate(cdouble gamma) const {
  const cdouble g2 = gamma * gamma;
  const cdouble g4 = g2 * g2;
  const cdouble pw[5] = {1.0, gamma, g2, g2 * gamma, g4};
  const Eigen::Index n = dim();
  Eigen::MatrixXd re = c_[0];
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < 5; ++k) {
    if (norms_[k] == 0.0) continue;
    re += pw[k].real() * c_[k];
    im += pw[k].imag() * c_[k];
  }
  Eigen::MatrixXcd out(n, n);
  out.real() = re;
  out.imag() = im;
  return out;
}

double Pencil::scale(cdouble gamma) const {
  const double a = std::abs(gamma);
  double s = 0.0;
  double pw = 1.0;
  for (int k = 0; k < 5; ++k) {
    s += pw * norms_[k];
    pw *= a;
  }
  return s;
}

double Pencil::residual(cdouble gamma, const Eigen::VectorXcd& v) const {
  const double nv = v.norm();
  if (!(nv > 0.0)) throw Error("residual of a zero vector is undefined");
  if (v.size() != dim()) throw AssemblyError("vector length does not match pencil");
  return (evaluate(gamma) * v).norm() / (nv * scale(gamma));
}

Pencil make_pencil(const PencilMatrices& m) {
  const Eigen::Index n = m.K.rows();
  for (const auto* x : {&m.A1, &m.A2, &m.S}) {
    if (x->rows() != n || x->cols() != n) {
      throw AssemblyError("pencil matrices have mismatched dimensions");
    }
  }
  const double e1 = m.eps1;
  const double e2 = m.eps2;
  std::array<Eigen::MatrixXd, 5> c;
  c[0] = (e1 * e2) * (m.K - m.A2);
  c[1] = (e1 - e2) * m.S;
  c[2] = m.A1 - (e1 + e2) * m.K;
  c[3] = Eigen::MatrixXd::Zero(n, n);
  c[4] = m.K;
  return Pencil(std::move(c), e1, e2, m.pi_dim);
}

Eigen::VectorXcd apply_parity(const Eigen::VectorXcd& v, Eigen::Index pi_dim) {
  Eigen::VectorXcd out = v;
  out.head(pi_dim) = -out.head(pi_dim);
  return out;
}

Eigen::MatrixXcd apply_parity(const Eigen::MatrixXcd& m, Eigen::Index pi_dim) {
  Eigen::MatrixXcd out = m;
  const Eigen::Index r = m.rows() - pi_dim;
  out.topRightCorner(pi_dim, r) = -out.topRightCorner(pi_dim, r);
  out.bottomLeftCorner(r, pi_dim) = -out.bottomLeftCorner(r, pi_dim);
  return out;
}

Eigen::MatrixXd linearize(const Pencil& pencil, double scale) {
  if (!(scale > 0.0)) throw Error("companion scale must be positive");
  const Eigen::Index n = pencil.dim();
  const Eigen::LLT<Eigen::MatrixXd> llt(pencil.coefficient(4));
  if (llt.info() != Eigen::Success) {
    throw FactorizationError(
        "leading coefficient K is not positive definite; assembly is broken");
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  for (int b = 0; b < 3; ++b) {
    a.block(b * n, (b + 1) * n, n, n).setIdentity();
  }
  for (int k = 0; k < 4; ++k) {
    if (pencil.coefficient_norm(k) == 0.0) continue;
    const double s = std::pow(scale, 4 - k);
    a.block(3 * n, k * n, n, n) = -llt.solve(pencil.coefficient(k)) / s;
  }
  return a;
}

}  // namespace wgp
