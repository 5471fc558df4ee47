// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

#include "wgpencil/assembly.hpp"

namespace wgp {

using cdouble = std::complex<double>;

/// Real band around the degeneration points in which isolation of the
/// eigenvalues is not guaranteed.
struct ExclusionInterval {
  double eps1 = 1.0;
  double eps2 = 1.0;
  double delta = 0.0;  // (eps2 - eps1) / 2
  double lower = 1.0;
  double upper = 1.0;
  double p = 1.0;  // sqrt((eps1 + eps2) / 2), the natural scale of gamma

  /// True when |x| lies in [lower - margin, upper + margin].
  bool contains(double x, double margin = 0.0) const;
  /// sqrt(eps1), sqrt(eps2)
  std::array<double, 2> degeneration_points() const;
};

ExclusionInterval exclusion_interval(double eps1, double eps2);

/// k~^2 = eps - gamma^2
inline cdouble k_tilde_squared(double eps, cdouble gamma) {
  return eps - gamma * gamma;
}

/// L(gamma) = gamma^4 C4 + gamma^2 C2 + gamma C1 + C0 with
///   C0 = eps1 eps2 (K - A2), C1 = (eps1 - eps2) S, C2 = A1 - (eps1 + eps2) K,
///   C3 = 0, C4 = K.
class Pencil {
 public:
  Pencil(std::array<Eigen::MatrixXd, 5> coefficients, double eps1, double eps2,
         Eigen::Index pi_dim);

  const Eigen::MatrixXd& coefficient(int k) const { return c_.at(k); }
  /// Frobenius norm of C_k.
  double coefficient_norm(int k) const { return norms_.at(k); }
  double max_coefficient_norm() const;

  Eigen::Index dim() const { return c_[0].rows(); }
  Eigen::Index pi_dim() const { return pi_dim_; }
  double eps1() const { return eps1_; }
  double eps2() const { return eps2_; }
  ExclusionInterval exclusion() const { return exclusion_interval(eps1_, eps2_); }

  /// Real and imaginary parts are accumulated separately from the real
  /// coefficients, so L(conj g) == conj(L(g)) and P L(g) P == L(-g) hold
  /// bit for bit.
  Eigen::MatrixXcd evaluate(cdouble gamma) const;

  /// sum_k |gamma|^k ||C_k||_F
  double scale(cdouble gamma) const;

  /// ||L(gamma) v|| / (||v|| scale(gamma)). Throws on a zero vector.
  double residual(cdouble gamma, const Eigen::VectorXcd& v) const;

 private:
  std::array<Eigen::MatrixXd, 5> c_;
  std::array<double, 5> norms_{};
  double eps1_;
  double eps2_;
  Eigen::Index pi_dim_;
};

Pencil make_pencil(const PencilMatrices& m);

/// P v with P = diag(-I_pi, I_psi).
Eigen::VectorXcd apply_parity(const Eigen::VectorXcd& v, Eigen::Index pi_dim);
/// P M P
Eigen::MatrixXcd apply_parity(const Eigen::MatrixXcd& m, Eigen::Index pi_dim);

/// First companion form of the monic quartic in z = gamma / scale:
///   z^4 + z^2 K^-1 C2 / s^2 + z K^-1 C1 / s^3 + K^-1 C0 / s^4.
/// Eigenvalues are z; the first block of an eigenvector is the pencil vector.
/// Throws FactorizationError when the Cholesky factorization of C4 fails.
Eigen::MatrixXd linearize(const Pencil& pencil, double scale = 1.0);

}  // namespace wgp
