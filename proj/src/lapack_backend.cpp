// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#include <lapacke.h>

#include <string>
#include <vector>

#include "wgpencil/eigensolver.hpp"
#include "wgpencil/error.hpp"

namespace wgp {

QrResult lapack_eigenvalues(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw Error("eigenvalues: matrix is not square");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::MatrixXd work = a;  // column major, overwritten by dgeev
  std::vector<double> wr(static_cast<std::size_t>(n));
  std::vector<double> wi(static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, wr.data(),
                    wi.data(), nullptr, 1, nullptr, 1);
  if (info < 0) {
    throw Error("dgeev rejected argument " + std::to_string(-info));
  }
  QrResult res;
  res.eigenvalues.resize(static_cast<std::size_t>(n));
  res.converged.assign(static_cast<std::size_t>(n), true);
  for (lapack_int i = 0; i < n; ++i) {
    res.eigenvalues[i] = cdouble(wr[i], wi[i]);
    // On failure eigenvalues info..n-1 are converged; the rest are not.
    if (info > 0 && i < info) res.converged[i] = false;
  }
  return res;
}

}  // namespace wgp
