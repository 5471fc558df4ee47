// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#include "wgpencil/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <gtest/gtest.h>

#include "test_support.hpp"
#include "wgpencil/assembly.hpp"
#include "wgpencil/error.hpp"
#include "wgpencil/spaces.hpp"

namespace wgp {
namespace {

constexpr double kPi = std::numbers::pi;

Pencil scalar_pencil(double c4, double c2, double c1, double c0) {
  auto m = [](double v) { return Eigen::MatrixXd::Constant(1, 1, v); };
  return Pencil({m(c0), m(c1), m(c2), m(0.0), m(c4)}, 1.0, 1.0, 1);
}

Pencil slab_pencil(int n, double e1, double e2) {
  const Mesh m = generate_rect_slab(kPi, kPi, kPi / 2, n, n);
  return make_pencil(assemble_all(build_spaces(m), m, e1, e2));
}

// Largest distance from a value in `a` to its nearest counterpart in `b`,
// matched one to one greedily.
double matched_gap(std::vector<cdouble> a, std::vector<cdouble> b) {
  EXPECT_EQ(a.size(), b.size());
  double worst = 0.0;
  for (const cdouble z : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](cdouble x, cdouble y) {
      return std::abs(x - z) < std::abs(y - z);
    });
    worst = std::max(worst, std::abs(*it - z));
    b.erase(it);
  }
  return worst;
}

std::vector<cdouble> reference_eigenvalues(const Eigen::MatrixXcd& a) {
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, false);
  return {es.eigenvalues().begin(), es.eigenvalues().end()};
}

Eigen::MatrixXcd random_complex(testing::Gen& gen, int n) {
  Eigen::MatrixXcd a(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) a(i, j) = gen.complex_in_box(1.0);
  }
  return a;
}

TEST(Balance, ScalingIsPowersOfTwoAndSimilar) {
  testing::Gen gen(1);
  Eigen::MatrixXd a = gen.matrix(6, 6);
  a.row(0) *= 1e6;
  a.col(3) *= 1e-5;
  const Balanced b = balance(a);
  for (double d : b.scaling) {
    int e = 0;
    EXPECT_EQ(std::frexp(d, &e), 0.5);
  }
  const Eigen::MatrixXd back =
      b.scaling.asDiagonal() * b.matrix * b.scaling.cwiseInverse().asDiagonal();
  EXPECT_LT((back - a).cwiseAbs().maxCoeff(), 1e-12 * a.cwiseAbs().maxCoeff());
  EXPECT_LT(b.matrix.norm(), a.norm());
}

TEST(Hessenberg, ReducesRandomMatrix) {
  testing::Gen gen(8);
  const Eigen::MatrixXcd a = random_complex(gen, 8);
  const HessenbergForm f = hessenberg(a);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(8, 8);
  EXPECT_LT((f.q.adjoint() * f.q - eye).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((f.q.adjoint() * a * f.q - f.h).cwiseAbs().maxCoeff(), 1e-13);
  for (int j = 0; j < 8; ++j) {
    for (int i = j + 2; i < 8; ++i) EXPECT_EQ(f.h(i, j), cdouble(0.0));
  }
  EXPECT_EQ(hessenberg(a, false).q.size(), 0);
  EXPECT_THROW(hessenberg(Eigen::MatrixXcd::Zero(2, 3)), Error);
}

TEST(QrEigenvalues, DiagonalMatrix) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
  d.diagonal() << 1.0, 2.0, 3.0;
  const QrResult r = qr_eigenvalues(d);
  ASSERT_TRUE(r.all_converged());
  std::vector<double> re;
  for (auto z : r.eigenvalues) re.push_back(z.real());
  std::sort(re.begin(), re.end());
  EXPECT_EQ(re, (std::vector<double>{1.0, 2.0, 3.0}));
}

TEST(QrEigenvalues, JordanBlockAndRotation) {
  Eigen::MatrixXd rot(2, 2);
  rot << 0.0, -1.0, 1.0, 0.0;
  const QrResult r = builtin_eigenvalues(rot);
  ASSERT_TRUE(r.all_converged());
  EXPECT_LT(matched_gap(r.eigenvalues, {cdouble(0, 1), cdouble(0, -1)}), 1e-15);
  Eigen::MatrixXd j(3, 3);
  j << 2, 1, 0, 0, 2, 1, 0, 0, 2;
  const QrResult rj = builtin_eigenvalues(j);
  ASSERT_TRUE(rj.all_converged());
  // Defective triple root: perturbation of order ulp^(1/3).
  for (auto z : rj.eigenvalues) EXPECT_NEAR(std::abs(z - 2.0), 0.0, 1e-5);
}

// Property: builtin eigenvalues match an independent solver, and are
// invariant under unitary similarity.
TEST(QrEigenvaluesProperty, MatchesReferenceAndUnitaryInvariant) {
  testing::Gen gen(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = gen.integer(2, 40);
    const Eigen::MatrixXcd a = random_complex(gen, n);
    const QrResult r = qr_eigenvalues(hessenberg(a, false).h);
    ASSERT_TRUE(r.all_converged());
    const auto ref = reference_eigenvalues(a);
    EXPECT_LT(matched_gap(r.eigenvalues, ref), 1e-11);
    const Eigen::MatrixXcd u =
        Eigen::HouseholderQR<Eigen::MatrixXcd>(random_complex(gen, n)).householderQ();
    const Eigen::MatrixXcd b = u.adjoint() * a * u;
    const QrResult rb = qr_eigenvalues(hessenberg(b, false).h);
    EXPECT_LT(matched_gap(rb.eigenvalues, r.eigenvalues), 1e-11);
  }
}

TEST(QrEigenvaluesProperty, BuiltinMatchesLapackOnRealMatrices) {
  testing::Gen gen(47);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = gen.integer(3, 60);
    const Eigen::MatrixXd a = gen.matrix(n, n);
    const QrResult b = builtin_eigenvalues(a);
    const QrResult l = lapack_eigenvalues(a);
    ASSERT_TRUE(b.all_converged());
    EXPECT_LT(matched_gap(b.eigenvalues, l.eigenvalues), 1e-11);
  }
}

TEST(QrEigenvalues, SweepCapFlagsUnconverged) {
  testing::Gen gen(3);
  const Eigen::MatrixXcd a = random_complex(gen, 30);
  const QrResult r = qr_eigenvalues(hessenberg(a, false).h, 0);
  EXPECT_FALSE(r.all_converged());
  EXPECT_EQ(r.eigenvalues.size(), 30u);
}

TEST(Backend, StringRoundTrip) {
  for (Backend b : {Backend::kAuto, Backend::kBuiltin, Backend::kLapack}) {
    EXPECT_EQ(backend_from_string(to_string(b)), b);
  }
  EXPECT_THROW(backend_from_string("arpack"), Error);
}

TEST(SolvePencil, ScalarQuarticWithVectors) {
  const Pencil p = scalar_pencil(2.0, -3.0, 0.0, 1.0);
  SolverOptions opt;
  opt.backend = Backend::kBuiltin;
  opt.want_vector = [](cdouble) { return true; };
  const EigenReport r = solve_pencil(p, opt);
  const double s = 1.0 / std::sqrt(2.0);
  ASSERT_EQ(r.eigenvalues.size(), 4u);
  EXPECT_LT(matched_gap(r.eigenvalues, {-1.0, -s, s, 1.0}), 1e-14);
  for (std::size_t i = 0; i + 1 < r.eigenvalues.size(); ++i) {
    EXPECT_LE(r.eigenvalues[i].real(), r.eigenvalues[i + 1].real());
  }
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_TRUE(r.converged[i]);
    EXPECT_TRUE(r.vector_converged[i]);
    EXPECT_LE(r.residuals[i], 1e-8);
  }
  EXPECT_EQ(r.backend, "builtin");
}

TEST(SolvePencil, BackendsAgreeOnSlab) {
  const Pencil p = slab_pencil(4, 1.0, 4.0);
  SolverOptions b;
  b.backend = Backend::kBuiltin;
  SolverOptions l;
  l.backend = Backend::kLapack;
  const EigenReport rb = solve_pencil(p, b);
  const EigenReport rl = solve_pencil(p, l);
  ASSERT_EQ(rb.eigenvalues.size(), static_cast<std::size_t>(4 * p.dim()));
  EXPECT_LT(matched_gap(rb.eigenvalues, rl.eigenvalues), 1e-10);
  EXPECT_EQ(rl.backend, "lapack");
  EXPECT_NEAR(rb.scale, std::sqrt(2.5), 1e-15);
}

TEST(SolvePencil, EnforcesDimensionCap) {
  const Pencil p = slab_pencil(4, 1.0, 4.0);
  SolverOptions opt;
  opt.max_companion_dim = 4 * p.dim() - 1;
  EXPECT_THROW(solve_pencil(p, opt), Error);
}

TEST(SolvePencil, RecoveredVectorsHaveSmallResiduals) {
  const Pencil p = slab_pencil(6, 1.0, 4.0);
  SolverOptions opt;
  opt.want_vector = [](cdouble g) {
    return std::abs(g) < 3.0 && std::abs(g.imag()) > 0.1;
  };
  const EigenReport r = solve_pencil(p, opt);
  int checked = 0;
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    if (std::isnan(r.residuals[i])) continue;
    ++checked;
    EXPECT_LE(r.residuals[i], 1e-8) << r.eigenvalues[i];
    EXPECT_NEAR(p.residual(r.eigenvalues[i], r.vectors[i]), r.residuals[i], 1e-12);
  }
  EXPECT_GT(checked, 4);
}

TEST(Nullity, HomogeneousPencilCollapsesAtDegeneration) {
  const Pencil p = slab_pencil(4, 2.0, 2.0);
  const double r = std::sqrt(2.0);
  EXPECT_LE(p.evaluate(r).norm() / p.max_coefficient_norm(), 1e-14);
  EXPECT_EQ(numerical_nullity(p, r), p.dim());
  EXPECT_EQ(numerical_nullity(p, -r), p.dim());
  EXPECT_EQ(numerical_nullity(p, 0.3), 0);
  EXPECT_EQ(numerical_nullity(p, cdouble(0.3, 0.2)), 0);
}

TEST(Nullity, NullspaceOfScalarPencil) {
  const Pencil p = scalar_pencil(2.0, -3.0, 0.0, 1.0);
  EXPECT_EQ(nullspace(p, 1.0).cols(), 1);
  EXPECT_EQ(nullspace(p, 0.5).cols(), 0);
}

TEST(Eigenvector, InverseIterationOnSlab) {
  const Pencil p = slab_pencil(5, 1.0, 4.0);
  SolverOptions opt;
  opt.backend = Backend::kLapack;
  const EigenReport r = solve_pencil(p, opt);
  const auto it = std::find_if(r.eigenvalues.begin(), r.eigenvalues.end(),
                               [](cdouble g) { return std::abs(g.imag()) > 1.0; });
  ASSERT_NE(it, r.eigenvalues.end());
  const PencilVector v = eigenvector(p, *it);
  EXPECT_TRUE(v.converged);
  EXPECT_NEAR(v.v.norm(), 1.0, 1e-14);
  EXPECT_LE(v.residual, 1e-8);
}

TEST(Eigenvector, PlainMatrix) {
  Eigen::MatrixXd a(2, 2);
  a << 2.0, 1.0, 1.0, 2.0;
  const Eigen::VectorXcd v = matrix_eigenvector(a, 3.0);
  EXPECT_LT((a.cast<cdouble>() * v - 3.0 * v).norm(), 1e-12);
}

}  // namespace
}  // namespace wgp
