// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#include "wgpencil/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "wgpencil/error.hpp"

namespace wgp {

namespace {

constexpr double kUlp = std::numeric_limits<double>::epsilon();

template <class Scalar>
Scalar unit_phase(Scalar x) {
  const double a = std::abs(x);
  return a == 0.0 ? Scalar(1.0) : x / a;
}

template <class Matrix>
void reduce_to_hessenberg(Matrix& h, Matrix* q) {
  using Scalar = typename Matrix::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = h.rows();
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    Vector v = h.col(k).tail(m);
    const double xnorm = v.norm();
    if (xnorm == 0.0) continue;
    const Scalar alpha = -unit_phase(v[0]) * xnorm;
    v[0] -= alpha;
    const double vnorm = v.norm();
    if (vnorm == 0.0) continue;
    v /= vnorm;
    // H <- (I - 2 v v^H) H (I - 2 v v^H)
    const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> row =
        v.adjoint() * h.bottomRows(m);
    h.bottomRows(m).noalias() -= Scalar(2.0) * v * row;
    const Vector col = h.rightCols(m) * v;
    h.rightCols(m).noalias() -= Scalar(2.0) * col * v.adjoint();
    h(k + 1, k) = alpha;
    h.col(k).tail(m - 1).setZero();
    if (q != nullptr) {
      const Vector qc = q->rightCols(m) * v;
      q->rightCols(m).noalias() -= Scalar(2.0) * qc * v.adjoint();
    }
  }
}

// Givens rotation [c s; -conj(s) c] mapping (a, b) to (r, 0).
struct Givens {
  double c = 1.0;
  cdouble s = 0.0;
};

Givens make_givens(cdouble a, cdouble b) {
  const double na = std::abs(a);
  const double nb = std::abs(b);
  Givens g;
  if (nb == 0.0) return g;
  if (na == 0.0) {
    g.c = 0.0;
    g.s = std::conj(b) / nb;
    return g;
  }
  const double r = std::hypot(na, nb);
  g.c = na / r;
  g.s = (a / na) * std::conj(b) / r;
  return g;
}

cdouble wilkinson_shift(cdouble a, cdouble b, cdouble c, cdouble d) {
  // Eigenvalue of [a b; c d] closer to d.
  const cdouble tr_half = 0.5 * (a + d);
  const cdouble det = a * d - b * c;
  const cdouble disc = std::sqrt(tr_half * tr_half - det);
  const cdouble l1 = tr_half + disc;
  const cdouble l2 = tr_half - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

Balanced balance(const Eigen::MatrixXd& a) {
  constexpr double radix = 2.0;
  constexpr double radix2 = radix * radix;
  Balanced out{a, Eigen::VectorXd::Ones(a.rows())};
  Eigen::MatrixXd& m = out.matrix;
  const Eigen::Index n = m.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = m.col(i).cwiseAbs().sum() - std::abs(m(i, i));
      double r = m.row(i).cwiseAbs().sum() - std::abs(m(i, i));
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix2;
      }
      g = r * radix;
      while (c >= g) {
        f /= radix;
        c /= radix2;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        out.scaling[i] *= f;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
  return out;
}

HessenbergForm hessenberg(const Eigen::MatrixXcd& a, bool accumulate) {
  if (a.rows() != a.cols()) throw Error("hessenberg: matrix is not square");
  HessenbergForm f;
  f.h = a;
  if (accumulate) {
    f.q = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    reduce_to_hessenberg(f.h, &f.q);
  } else {
    reduce_to_hessenberg<Eigen::MatrixXcd>(f.h, nullptr);
  }
  return f;
}

bool QrResult::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool b) { return b; });
}

QrResult qr_eigenvalues(Eigen::MatrixXcd h, int sweep_cap) {
  const Eigen::Index n = h.rows();
  QrResult res;
  res.eigenvalues.assign(n, cdouble(0.0));
  res.converged.assign(n, true);
  const double hnorm = std::max(h.norm(), std::numeric_limits<double>::min());
  std::vector<Givens> rot;
  Eigen::Index hi = n - 1;
  int its = 0;
  while (hi >= 0) {
    // Locate the start of the trailing unreduced block.
    Eigen::Index lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      double ref = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (ref == 0.0) ref = hnorm;
      // Local test, or a normwise one: a tight cluster keeps the subdiagonal
      // at the rounding floor of the whole matrix.
      if (sub <= kUlp * ref || sub <= kUlp * hnorm) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      res.eigenvalues[hi] = h(hi, hi);
      --hi;
      its = 0;
      continue;
    }
    if (its >= sweep_cap) {
      for (Eigen::Index k = lo; k <= hi; ++k) {
        res.eigenvalues[k] = h(k, k);
        res.converged[k] = false;
      }
      hi = lo - 1;
      its = 0;
      continue;
    }
    ++its;
    ++res.sweeps;
    cdouble shift;
    if (its == 10 || its == 20) {
      shift = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
    } else {
      shift = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1),
                              h(hi, hi));
    }
    // Explicit single-shift QR step on the window [lo, hi].
    for (Eigen::Index k = lo; k <= hi; ++k) h(k, k) -= shift;
    rot.assign(static_cast<std::size_t>(hi - lo), Givens{});
    for (Eigen::Index k = lo; k < hi; ++k) {
      const Givens g = make_givens(h(k, k), h(k + 1, k));
      rot[static_cast<std::size_t>(k - lo)] = g;
      for (Eigen::Index j = k; j <= hi; ++j) {
        const cdouble x = h(k, j);
        const cdouble y = h(k + 1, j);
        h(k, j) = g.c * x + g.s * y;
        h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
      h(k + 1, k) = 0.0;
    }
    for (Eigen::Index k = lo; k < hi; ++k) {
      const Givens& g = rot[static_cast<std::size_t>(k - lo)];
      const Eigen::Index last = std::min(k + 1, hi);
      for (Eigen::Index i = lo; i <= last; ++i) {
        const cdouble x = h(i, k);
        const cdouble y = h(i, k + 1);
        h(i, k) = g.c * x + y * std::conj(g.s);
        h(i, k + 1) = -x * g.s + g.c * y;
      }
    }
    for (Eigen::Index k = lo; k <= hi; ++k) h(k, k) += shift;
  }
  return res;
}

QrResult builtin_eigenvalues(const Eigen::MatrixXd& a, int sweep_cap) {
  if (a.rows() != a.cols()) throw Error("eigenvalues: matrix is not square");
  Eigen::MatrixXd b = balance(a).matrix;
  reduce_to_hessenberg<Eigen::MatrixXd>(b, nullptr);
  return qr_eigenvalues(b.cast<cdouble>(), sweep_cap);
}

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::kAuto:
      return "auto";
    case Backend::kBuiltin:
      return "builtin";
    case Backend::kLapack:
      return "lapack";
  }
  return "auto";
}

Backend backend_from_string(std::string_view name) {
  if (name == "auto") return Backend::kAuto;
  if (name == "builtin") return Backend::kBuiltin;
  if (name == "lapack") return Backend::kLapack;
  throw Error("unknown eigensolver backend '" + std::string(name) +
              "' (expected auto, builtin or lapack)");
}

PencilVector eigenvector(const Pencil& pencil, cdouble gamma, double tol,
                         int max_iterations) {
  const Eigen::Index n = pencil.dim();
  const cdouble shifted = gamma + 64.0 * kUlp * (1.0 + std::abs(gamma));
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(pencil.evaluate(shifted));
  const Eigen::MatrixXcd l = pencil.evaluate(gamma);
  const double scale = pencil.scale(gamma);

  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> dist;
  Eigen::VectorXcd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = cdouble(dist(rng), dist(rng));
  x.normalize();

  PencilVector out;
  out.v = x;
  out.residual = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= max_iterations; ++it) {
    Eigen::VectorXcd y = lu.solve(x);
    const double ny = y.norm();
    if (!std::isfinite(ny) || ny == 0.0) break;
    x = y / ny;
    const double r = (l * x).norm() / scale;
    out.iterations = it;
    if (r < out.residual) {
      out.residual = r;
      out.v = x;
    }
    if (r <= tol && it >= 2) break;
  }
  out.converged = out.residual <= tol;
  return out;
}

namespace {

// Singular values (ascending) and right singular vectors of L(gamma). For
// real gamma L is real symmetric, so eigenvalue magnitudes are used.
void singular_spectrum(const Pencil& pencil, cdouble gamma, Eigen::VectorXd& s,
                       Eigen::MatrixXcd& v) {
  const Eigen::MatrixXcd l = pencil.evaluate(gamma);
  if (gamma.imag() == 0.0) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l.real());
    const Eigen::VectorXd ev = es.eigenvalues().cwiseAbs();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(ev.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return ev[a] < ev[b]; });
    s.resize(ev.size());
    v.resize(l.rows(), ev.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      s[static_cast<Eigen::Index>(k)] = ev[order[k]];
      v.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(order[k]).cast<cdouble>();
    }
    return;
  }
  const Eigen::BDCSVD<Eigen::MatrixXcd> svd(l, Eigen::ComputeFullV);
  s = svd.singularValues().reverse();
  v = svd.matrixV().rowwise().reverse();
}

}  // namespace

Eigen::MatrixXcd nullspace(const Pencil& pencil, cdouble gamma, double rel_tol,
                           Eigen::Index cap) {
  Eigen::VectorXd s;
  Eigen::MatrixXcd v;
  singular_spectrum(pencil, gamma, s, v);
  const double thr = rel_tol * pencil.scale(gamma);
  Eigen::Index k = 0;
  while (k < s.size() && k < cap && s[k] <= thr) ++k;
  return v.leftCols(k);
}

Eigen::Index numerical_nullity(const Pencil& pencil, cdouble gamma,
                               double rel_tol) {
  const double thr = rel_tol * pencil.scale(gamma);
  if (gamma.imag() == 0.0) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        pencil.evaluate(gamma).real(), Eigen::EigenvaluesOnly);
    return static_cast<Eigen::Index>(
        (es.eigenvalues().array().abs() <= thr).count());
  }
  const Eigen::BDCSVD<Eigen::MatrixXcd> svd(pencil.evaluate(gamma));
  const Eigen::VectorXd s = svd.singularValues();
  return static_cast<Eigen::Index>((s.array() <= thr).count());
}

Eigen::VectorXcd matrix_eigenvector(const Eigen::MatrixXd& a, cdouble lambda,
                                    int iterations) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXcd shifted = a.cast<cdouble>();
  const double a_norm = std::max(a.norm(), 1.0);
  shifted.diagonal().array() -= lambda + 64.0 * kUlp * a_norm;
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
  Eigen::VectorXcd x = Eigen::VectorXcd::Ones(n) / std::sqrt(double(n));
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXcd y = lu.solve(x);
    const double ny = y.norm();
    if (!std::isfinite(ny) || ny == 0.0) break;
    x = y / ny;
  }
  return x;
}

EigenReport solve_pencil(const Pencil& pencil, const SolverOptions& options) {
  const Eigen::Index n4 = 4 * pencil.dim();
  if (n4 > options.max_companion_dim) {
    throw Error("companion dimension " + std::to_string(n4) +
                " exceeds the dense solver cap of " +
                std::to_string(options.max_companion_dim));
  }
  EigenReport rep;
  rep.scale = pencil.exclusion().p;
  const Eigen::MatrixXd companion = linearize(pencil, rep.scale);

  Backend b = options.backend;
  if (b == Backend::kAuto) {
    b = n4 <= options.builtin_max_dim ? Backend::kBuiltin : Backend::kLapack;
  }
  QrResult qr = b == Backend::kBuiltin
                    ? builtin_eigenvalues(companion, options.sweep_cap)
                    : lapack_eigenvalues(companion);
  rep.backend = std::string(to_string(b));
  rep.qr_sweeps = qr.sweeps;

  // Deterministic ordering: by real part, then imaginary part.
  std::vector<std::size_t> order(qr.eigenvalues.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
    const cdouble x = qr.eigenvalues[a];
    const cdouble y = qr.eigenvalues[c];
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  const std::size_t m = order.size();
  rep.eigenvalues.resize(m);
  rep.converged.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    rep.eigenvalues[k] = rep.scale * qr.eigenvalues[order[k]];
    rep.converged[k] = qr.converged[order[k]];
  }
  rep.vectors.assign(m, Eigen::VectorXcd());
  rep.residuals.assign(m, std::numeric_limits<double>::quiet_NaN());
  rep.vector_iterations.assign(m, 0);
  rep.vector_converged.assign(m, false);
  if (options.want_vector) {
    for (std::size_t k = 0; k < m; ++k) {
      if (!options.want_vector(rep.eigenvalues[k])) continue;
      PencilVector pv = eigenvector(pencil, rep.eigenvalues[k],
                                    options.residual_tol,
                                    options.vector_max_iterations);
      rep.vectors[k] = std::move(pv.v);
      rep.residuals[k] = pv.residual;
      rep.vector_iterations[k] = pv.iterations;
      rep.vector_converged[k] = pv.converged;
    }
  }
  return rep;
}

}  // namespace wgp
