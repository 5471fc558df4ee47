// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

#include <Eigen/SparseCore>

#include "wgpencil/mesh.hpp"
#include "wgpencil/nodal.hpp"

namespace wgp::detail {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Runs `emit(t, out)` for every triangle and assembles the concatenated
// triplets. Chunks are contiguous and joined in triangle order, so the
// summation order of duplicate entries does not depend on `workers`.
template <class Emit>
SparseMatrix assemble_elements(const Mesh& mesh, Eigen::Index rows,
                               Eigen::Index cols, int workers, Emit emit) {
  const std::size_t n = mesh.num_triangles();
  if (workers <= 0) workers = default_workers();
  const std::size_t chunks =
      std::max<std::size_t>(1, std::min<std::size_t>(workers, n / 64 + 1));
  std::vector<Triplets> parts(chunks);
  auto run = [&](std::size_t c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    parts[c].reserve((end - begin) * 9);
    for (std::size_t t = begin; t < end; ++t) emit(t, parts[c]);
  };
  if (chunks == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t c = 0; c < chunks; ++c) pool.emplace_back(run, c);
    for (auto& th : pool) th.join();
  }
  Triplets all;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  all.reserve(total);
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  SparseMatrix m(rows, cols);
  m.setFromTriplets(all.begin(), all.end());
  return m;
}

}  // namespace wgp::detail
