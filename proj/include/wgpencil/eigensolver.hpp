// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "wgpencil/pencil.hpp"

namespace wgp {

struct Balanced {
  Eigen::MatrixXd matrix;  // D^-1 A D
  Eigen::VectorXd scaling;  // diagonal of D, powers of two
};

/// Diagonal similarity scaling by powers of two that equalizes off-diagonal
/// row and column norms.
Balanced balance(const Eigen::MatrixXd& a);

struct HessenbergForm {
  Eigen::MatrixXcd h;
  Eigen::MatrixXcd q;  // empty unless accumulated; q^H a q = h
};

/// Householder reduction to upper Hessenberg form.
HessenbergForm hessenberg(const Eigen::MatrixXcd& a, bool accumulate = true);

struct QrResult {
  std::vector<cdouble> eigenvalues;
  std::vector<bool> converged;
  long sweeps = 0;
  bool all_converged() const;
};

/// Complex single-shift QR on an upper Hessenberg matrix, eigenvalues only.
/// Wilkinson shifts, exceptional shifts after 10 and 20 sweeps, and at most
/// `sweep_cap` sweeps per deflation; eigenvalues left in an undeflated window
/// are reported with converged = false.
QrResult qr_eigenvalues(Eigen::MatrixXcd h, int sweep_cap = 30);

/// Eigenvalues of a real matrix with the builtin balance/Hessenberg/QR path.
QrResult builtin_eigenvalues(const Eigen::MatrixXd& a, int sweep_cap = 30);

/// Eigenvalues of a real matrix via LAPACK dgeev.
QrResult lapack_eigenvalues(const Eigen::MatrixXd& a);

enum class Backend { kAuto, kBuiltin, kLapack };
std::string_view to_string(Backend b);
Backend backend_from_string(std::string_view name);

struct SolverOptions {
  Backend backend = Backend::kAuto;
  /// Largest companion dimension handled by the builtin path under kAuto.
  Eigen::Index builtin_max_dim = 1200;
  Eigen::Index max_companion_dim = 5000;
  int sweep_cap = 30;
  double residual_tol = 1e-8;
  int vector_max_iterations = 8;
  /// Selects eigenvalues whose pencil vectors are recovered. Empty: none.
  std::function<bool(cdouble)> want_vector;
};

/// Output of one pencil solve. `vectors[i]` is empty when no vector was
/// requested for eigenvalue i; its residual is then NaN.
struct EigenReport {
  std::vector<cdouble> eigenvalues;
  std::vector<bool> converged;
  std::vector<Eigen::VectorXcd> vectors;
  std::vector<double> residuals;
  std::vector<int> vector_iterations;
  std::vector<bool> vector_converged;
  long qr_sweeps = 0;
  std::string backend;
  double scale = 1.0;
};

EigenReport solve_pencil(const Pencil& pencil, const SolverOptions& options = {});

struct PencilVector {
  Eigen::VectorXcd v;  // unit 2-norm
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Inverse iteration on L(gamma + delta) with a tiny relative shift delta.
PencilVector eigenvector(const Pencil& pencil, cdouble gamma,
                         double tol = 1e-8, int max_iterations = 8);

/// Orthonormal basis of the numerical null space of L(gamma): singular
/// directions with singular value <= rel_tol * scale(gamma), at most `cap`.
Eigen::MatrixXcd nullspace(const Pencil& pencil, cdouble gamma,
                           double rel_tol = 1e-8, Eigen::Index cap = 64);

/// Number of singular values of L(gamma) at or below rel_tol * scale(gamma).
Eigen::Index numerical_nullity(const Pencil& pencil, cdouble gamma,
                               double rel_tol = 1e-8);

/// Inverse iteration for a plain matrix eigenpair (unit vector).
Eigen::VectorXcd matrix_eigenvector(const Eigen::MatrixXd& a, cdouble lambda,
                                    int iterations = 3);

}  // namespace wgp
