// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#include "wgpencil/spaces.hpp"

#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "test_support.hpp"
#include "wgpencil/error.hpp"
#include "wgpencil/nodal.hpp"

namespace wgp {
namespace {

using cdouble = std::complex<double>;
constexpr double kPi = std::numbers::pi;

TEST(Nodal, StiffnessAnnihilatesConstants) {
  const Mesh m = generate_rect_slab(kPi, kPi, kPi / 2, 6, 5);
  const SparseMatrix g = nodal_stiffness(m, {1.0, 4.0});
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m.num_nodes());
  EXPECT_LT((g * ones).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Nodal, MassAndMeanIntegrateArea) {
  const Mesh m = generate_rect_slab(2.0, 3.0, 1.0, 4, 6);
  const SparseMatrix mass = nodal_mass(m);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m.num_nodes());
  EXPECT_NEAR(ones.dot(mass * ones), 6.0, 1e-13);
  EXPECT_NEAR(nodal_mean(m).sum(), 6.0, 1e-13);
  // Region weights scale each half separately.
  const SparseMatrix weighted = nodal_mass(m, {1.0, 0.0});
  EXPECT_NEAR(ones.dot(weighted * ones), 3.0, 1e-13);
}

TEST(Nodal, WorkerCountDoesNotChangeBits) {
  const Mesh m = generate_rect_slab(kPi, kPi, kPi / 2, 12, 12);
  const Eigen::MatrixXd one = Eigen::MatrixXd(nodal_stiffness(m, {1.0, 4.0}, 1));
  const Eigen::MatrixXd three = Eigen::MatrixXd(nodal_stiffness(m, {1.0, 4.0}, 3));
  EXPECT_TRUE(one == three);
}

TEST(ZeroMeanBasis, OrthonormalAndMeanFree) {
  testing::Gen gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(2, 30);
    Eigen::VectorXd mean(n);
    for (int i = 0; i < n; ++i) mean(i) = gen.uniform(0.01, 2.0);
    if (trial % 2) mean(0) = -mean(0);
    const ZeroMeanBasis basis(mean);
    const Eigen::MatrixXd nb = basis.dense();
    ASSERT_EQ(nb.rows(), n);
    ASSERT_EQ(nb.cols(), n - 1);
    EXPECT_LT((nb.transpose() * nb - Eigen::MatrixXd::Identity(n - 1, n - 1))
                  .cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((mean.transpose() * nb).cwiseAbs().maxCoeff(), 1e-14 * mean.norm());
  }
}

TEST(ZeroMeanBasis, ReductionsAgreeWithDenseProducts) {
  testing::Gen gen(5);
  const int n = 17;
  Eigen::VectorXd mean(n);
  for (int i = 0; i < n; ++i) mean(i) = gen.uniform(0.1, 1.0);
  const ZeroMeanBasis basis(mean);
  const Eigen::MatrixXd nb = basis.dense();
  const Eigen::MatrixXd x = gen.matrix(n, 6);
  Eigen::MatrixXd m = gen.matrix(n, n);
  m = (m + m.transpose()).eval();

  const Eigen::MatrixXd r = basis.reduce_symmetric(m);
  EXPECT_TRUE(r == r.transpose());
  EXPECT_LT((r - nb.transpose() * m * nb).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT((basis.reduce_rows(x) - nb.transpose() * x).cwiseAbs().maxCoeff(), 1e-14);
  const Eigen::MatrixXd xt = x.transpose();
  EXPECT_TRUE(basis.reduce_cols(xt) == basis.reduce_rows(x).transpose());
  const SparseMatrix sparse = m.sparseView();
  EXPECT_LT((basis.reduce_symmetric(sparse) - r).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ZeroMeanBasis, MeanOuterProductReducesToZero) {
  const Mesh m = generate_rect_slab(1.0, 1.0, 0.5, 5, 5);
  const Eigen::VectorXd mean = nodal_mean(m);
  const ZeroMeanBasis basis(mean);
  const Eigen::MatrixXd outer = mean * mean.transpose();
  EXPECT_LT(basis.reduce_symmetric(outer).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ZeroMeanBasis, ExpandRestrictRoundTrip) {
  testing::Gen gen(8);
  Eigen::VectorXd mean(9);
  for (int i = 0; i < 9; ++i) mean(i) = gen.uniform(0.1, 1.0);
  const ZeroMeanBasis basis(mean);
  const Eigen::VectorXcd y = gen.complex_vector(8);
  const Eigen::VectorXcd f = basis.expand(y);
  EXPECT_LT(std::abs(mean.cast<cdouble>().dot(f)), 1e-14);
  EXPECT_LT((basis.restrict(f) - y).norm(), 1e-14);
}

TEST(ZeroMeanBasis, RejectsMismatchedMatrix) {
  const ZeroMeanBasis basis(Eigen::VectorXd::Ones(4));
  EXPECT_THROW(basis.reduce_symmetric(Eigen::MatrixXd::Zero(5, 5)), AssemblyError);
}

TEST(FieldSpaces, SmallestGridCounts) {
  const Mesh m = generate_rect_slab(1.0, 1.0, 0.5, 2, 2);
  const FieldSpaces s = build_spaces(m);
  EXPECT_EQ(s.pi_dim(), 1);
  EXPECT_EQ(s.psi_dim(), 8);
  EXPECT_EQ(s.dim(), 9);
  EXPECT_EQ(s.gram.rows(), 9);
}

TEST(FieldSpaces, SlabCounts) {
  const Mesh m = generate_rect_slab(kPi, kPi, kPi / 2, 8, 8);
  const FieldSpaces s = build_spaces(m);
  EXPECT_EQ(s.pi_dim(), 49);
  EXPECT_EQ(s.psi_dim(), 80);
  for (int node : s.pi_nodes) EXPECT_FALSE(m.shielded_nodes()[node]);
}

TEST(FieldSpaces, GramIsBlockDiagonalAndPositive) {
  const Mesh m = generate_rect_slab(kPi, kPi, kPi / 2, 6, 6);
  const FieldSpaces s = build_spaces(m);
  const auto p = s.pi_dim();
  EXPECT_EQ(s.gram.block(0, p, p, s.psi_dim()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_TRUE(s.gram == s.gram.transpose());
  const Eigen::LLT<Eigen::MatrixXd> llt(s.gram);
  EXPECT_EQ(llt.info(), Eigen::Success);
  const SparseMatrix g = nodal_stiffness(m);
  EXPECT_LT((s.gram.topLeftCorner(p, p) - s.restrict_pi(g)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(FieldSpaces, NodalRoundTrip) {
  const Mesh m = generate_rect_slab(kPi, kPi, kPi / 2, 5, 4);
  const FieldSpaces s = build_spaces(m);
  testing::Gen gen(21);
  const Eigen::VectorXcd x = gen.complex_vector(s.dim());
  const NodalFields f = s.to_nodal(x);
  const auto shielded = m.shielded_nodes();
  for (std::size_t i = 0; i < m.num_nodes(); ++i) {
    if (shielded[i]) {
      EXPECT_EQ(f.pi(i), cdouble(0.0));
    }
  }
  EXPECT_LT(std::abs(nodal_mean(m).cast<cdouble>().dot(f.psi)), 1e-14);
  EXPECT_LT((s.from_nodal(f.pi, f.psi) - x).norm(), 1e-13);
}

TEST(FieldSpaces, SlitDuplicatesPsiAndPinsPi) {
  int duplicated = 0;
  const Mesh slit = testing::slit_mesh(&duplicated);
  const Mesh base = generate_rect_slab(4.0, 4.0, 2.0, 4, 4);
  const FieldSpaces s = build_spaces(slit);
  const FieldSpaces b = build_spaces(base);
  EXPECT_EQ(s.psi_dim(), b.psi_dim() + duplicated);
  // The interior slit node and the slit tip lie on the shield.
  EXPECT_EQ(b.pi_dim(), 9);
  EXPECT_EQ(s.pi_dim(), 7);
}

TEST(FieldSpaces, FullyShieldedMeshIsRejected) {
  const std::string text =
      "nodes 3\n0 0\n1 0\n0 1\ntriangles 1\n0 1 2 1\nedges 3\n"
      "0 1 gamma0\n1 2 gamma0\n2 0 gamma0\n";
  EXPECT_THROW(build_spaces(load_mesh(text)), MeshError);
}

}  // namespace
}  // namespace wgp
