// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#include "wgpencil/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "wgpencil/element.hpp"
#include "wgpencil/error.hpp"

namespace wgp {

std::string_view to_string(WaveClass c) {
  switch (c) {
    case WaveClass::kPropagating:
      return "PROPAGATING";
    case WaveClass::kEvanescent:
      return "EVANESCENT";
    case WaveClass::kComplex:
      return "COMPLEX";
    case WaveClass::kDegenerationAdjacent:
      return "DEGENERATION_ADJACENT";
    case WaveClass::kInExclusion:
      return "IN_EXCLUSION";
  }
  return "COMPLEX";
}

WaveClass classify(cdouble gamma, const ExclusionInterval& exclusion, double tol) {
  for (double root : exclusion.degeneration_points()) {
    const double r = tol * (1.0 + root);
    if (std::abs(gamma - root) <= r || std::abs(gamma + root) <= r) {
      return WaveClass::kDegenerationAdjacent;
    }
  }
  const double a = std::abs(gamma);
  if (std::abs(gamma.imag()) <= tol * (1.0 + a)) {
    return exclusion.contains(gamma.real()) ? WaveClass::kInExclusion
                                            : WaveClass::kPropagating;
  }
  if (std::abs(gamma.real()) <= tol * (1.0 + a)) return WaveClass::kEvanescent;
  return WaveClass::kComplex;
}

double PairingReport::worst() const {
  return *std::max_element(max_mismatch.begin(), max_mismatch.end());
}

namespace {

cdouble image(int map, cdouble g) {
  switch (map) {
    case 0:
      return -g;
    case 1:
      return std::conj(g);
    default:
      return -std::conj(g);
  }
}

// Greedy nearest-unused matching of targets against values. Values are
// scanned outward from the target's real part in real-sorted order.
std::vector<int> match_nearest(const std::vector<cdouble>& values,
                               const std::vector<cdouble>& targets) {
  const std::size_t n = values.size();
  std::vector<int> sorted(n);
  std::iota(sorted.begin(), sorted.end(), 0);
  std::stable_sort(sorted.begin(), sorted.end(), [&](int a, int b) {
    return values[a].real() < values[b].real();
  });
  std::vector<double> re(n);
  for (std::size_t k = 0; k < n; ++k) re[k] = values[sorted[k]].real();
  std::vector<char> used(n, 0);
  std::vector<int> out(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const cdouble t = targets[i];
    const auto start = static_cast<std::ptrdiff_t>(
        std::lower_bound(re.begin(), re.end(), t.real()) - re.begin());
    double best = std::numeric_limits<double>::infinity();
    std::ptrdiff_t best_k = -1;
    for (std::ptrdiff_t k = start; k < static_cast<std::ptrdiff_t>(n); ++k) {
      if (re[k] - t.real() > best) break;
      if (used[k]) continue;
      const double d = std::abs(values[sorted[k]] - t);
      if (d < best) {
        best = d;
        best_k = k;
      }
    }
    for (std::ptrdiff_t k = start - 1; k >= 0; --k) {
      if (t.real() - re[k] > best) break;
      if (used[k]) continue;
      const double d = std::abs(values[sorted[k]] - t);
      if (d < best) {
        best = d;
        best_k = k;
      }
    }
    if (best_k >= 0) {
      used[best_k] = 1;
      out[i] = sorted[best_k];
    }
  }
  return out;
}

}  // namespace

PairingReport symmetry_pairing(const std::vector<cdouble>& values, double tol,
                               const std::vector<WaveClass>* classes) {
  PairingReport rep;
  rep.tol = tol;
  const std::size_t n = values.size();
  std::vector<char> bad(n, 0);
  for (int m = 0; m < 3; ++m) {
    std::vector<cdouble> targets(n);
    for (std::size_t i = 0; i < n; ++i) targets[i] = image(m, values[i]);
    rep.partner[m] = match_nearest(values, targets);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const int j = rep.partner[m][i];
      const double mis = j < 0 ? std::numeric_limits<double>::infinity()
                               : std::abs(values[j] - targets[i]) /
                                     (1.0 + std::abs(values[i]));
      worst = std::max(worst, mis);
      if (!(mis <= tol)) bad[i] = 1;
    }
    rep.max_mismatch[m] = worst;
  }
  rep.violations = static_cast<int>(std::count(bad.begin(), bad.end(), 1));
  if (classes != nullptr) {
    for (std::size_t i = 0; i < n; ++i) {
      if ((*classes)[i] != WaveClass::kComplex) continue;
      std::set<int> members{static_cast<int>(i)};
      for (int m = 0; m < 3; ++m) members.insert(rep.partner[m][i]);
      if (members.size() != 4 || members.count(-1) != 0 || bad[i]) {
        ++rep.incomplete_quadruples;
      }
    }
  }
  return rep;
}

std::vector<Cluster> find_clusters(const std::vector<cdouble>& values,
                                   double tol) {
  const std::size_t n = values.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a].real() < values[b].real();
  });
  for (std::size_t p = 0; p < n; ++p) {
    const cdouble a = values[order[p]];
    const double r = tol * (1.0 + std::abs(a));
    for (std::size_t q = p + 1; q < n; ++q) {
      const cdouble b = values[order[q]];
      if (b.real() - a.real() > r) break;
      if (std::abs(a - b) <= r) parent[root(order[p])] = root(order[q]);
    }
  }
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[root(i)].push_back(i);
  std::vector<Cluster> out;
  for (const auto& g : groups) {
    if (g.size() < 2) continue;
    Cluster c;
    c.size = static_cast<int>(g.size());
    for (std::size_t i : g) c.center += values[i];
    c.center /= static_cast<double>(g.size());
    for (std::size_t i : g) {
      for (std::size_t j : g) {
        c.diameter = std::max(c.diameter, std::abs(values[i] - values[j]));
      }
    }
    out.push_back(c);
  }
  std::stable_sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
  });
  return out;
}

std::vector<cdouble> Spectrum::values() const {
  std::vector<cdouble> v;
  v.reserve(entries.size());
  for (const auto& e : entries) v.push_back(e.gamma);
  return v;
}

Spectrum build_spectrum(const EigenReport& report,
                        const ExclusionInterval& exclusion,
                        double classification_tol, double pairing_tol) {
  Spectrum s;
  s.exclusion = exclusion;
  s.classification_tol = classification_tol;
  const std::size_t n = report.eigenvalues.size();
  s.entries.resize(n);
  std::vector<WaveClass> classes(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& e = s.entries[i];
    e.gamma = report.eigenvalues[i];
    e.residual = i < report.residuals.size()
                     ? report.residuals[i]
                     : std::numeric_limits<double>::quiet_NaN();
    e.converged = i < report.converged.size() ? report.converged[i] : true;
    e.cls = classify(e.gamma, exclusion, classification_tol);
    classes[i] = e.cls;
    ++s.counts[static_cast<int>(e.cls)];
    s.max_abs_re = std::max(s.max_abs_re, std::abs(e.gamma.real()));
  }
  const auto values = s.values();
  s.pairing = symmetry_pairing(values, pairing_tol, &classes);
  for (std::size_t i = 0; i < n; ++i) {
    for (int m = 0; m < 3; ++m) s.entries[i].partners[m] = s.pairing.partner[m][i];
  }
  s.clusters = find_clusters(values, classification_tol);
  return s;
}

int count_real_outside_exclusion(const Spectrum& s, double margin) {
  int count = 0;
  for (const auto& e : s.entries) {
    if (e.cls == WaveClass::kPropagating && !s.exclusion.contains(e.gamma.real(), margin)) {
      ++count;
    }
  }
  return count;
}

int count_in_disk(const Spectrum& s, double radius, double band) {
  int count = 0;
  for (const auto& e : s.entries) {
    if (std::abs(e.gamma) > radius) continue;
    const bool real = e.cls == WaveClass::kPropagating ||
                      e.cls == WaveClass::kInExclusion ||
                      e.cls == WaveClass::kDegenerationAdjacent;
    if (real && s.exclusion.contains(e.gamma.real(), band)) continue;
    ++count;
  }
  return count;
}

DegenerationScan degeneration_scan(const std::vector<const Pencil*>& levels,
                                   double rel_tol) {
  if (levels.size() < 2) {
    throw Error("degeneration scan needs at least two refinement levels");
  }
  DegenerationScan scan;
  std::vector<double> points;
  {
    const auto d = levels.front()->exclusion().degeneration_points();
    std::set<double> uniq(d.begin(), d.end());
    for (double r : uniq) {
      points.push_back(-r);
      points.push_back(r);
    }
    std::sort(points.begin(), points.end());
  }
  std::vector<Eigen::Index> previous(points.size(), -1);
  for (std::size_t lvl = 0; lvl < levels.size(); ++lvl) {
    const Pencil& p = *levels[lvl];
    for (std::size_t k = 0; k < points.size(); ++k) {
      DegenerationRow row;
      row.level = static_cast<int>(lvl);
      row.gamma = points[k];
      row.dim = p.dim();
      row.nullity = numerical_nullity(p, points[k], rel_tol);
      if (row.nullity < previous[k]) scan.nondecreasing = false;
      if (p.eps1() == p.eps2() && row.nullity != row.dim) {
        scan.full_when_homogeneous = false;
      }
      previous[k] = row.nullity;
      scan.rows.push_back(row);
    }
  }
  return scan;
}

DecayFit k_decay_fit(const PencilMatrices& matrices, double fraction) {
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
      matrices.K, matrices.gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw FactorizationError("generalized eigensolve of (K, G) failed");
  }
  DecayFit fit;
  fit.eigenvalues.assign(es.eigenvalues().begin(), es.eigenvalues().end());
  std::sort(fit.eigenvalues.begin(), fit.eigenvalues.end(), std::greater<>());
  const int n = static_cast<int>(fit.eigenvalues.size());
  fit.used = std::max(2, static_cast<int>(std::floor(fraction * n)));
  if (fit.used > n) throw Error("not enough eigenvalues for a decay fit");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 0; k < fit.used; ++k) {
    const double x = std::log(k + 1.0);
    const double y = std::log(fit.eigenvalues[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = fit.used;
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / m;
  return fit;
}

std::vector<TransverseField> transverse_fields(const Mesh& mesh,
                                               const Eigen::VectorXcd& pi,
                                               const Eigen::VectorXcd& psi,
                                               cdouble gamma, double eps1,
                                               double eps2, double tol) {
  const auto nn = static_cast<Eigen::Index>(mesh.num_nodes());
  if (pi.size() != nn || psi.size() != nn) {
    throw Error("nodal field length does not match the mesh");
  }
  const cdouble g2 = gamma * gamma;
  for (int region : {1, 2}) {
    const double eps = region == 1 ? eps1 : eps2;
    if (mesh.has_region(region) && std::abs(eps - g2) <= tol * (1.0 + eps)) {
      throw DegenerationError(
          "gamma^2 coincides with the permittivity of region " +
          std::to_string(region) + "; transverse fields are undefined");
    }
  }
  const cdouble i(0.0, 1.0);
  std::vector<TransverseField> out(mesh.num_triangles());
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const auto e = LinearTriangle::from_mesh(mesh, t);
    cdouble dp1 = 0.0, dp2 = 0.0, ds1 = 0.0, ds2 = 0.0;
    for (int k = 0; k < 3; ++k) {
      dp1 += pi[tri.nodes[k]] * e.grad[k].x();
      dp2 += pi[tri.nodes[k]] * e.grad[k].y();
      ds1 += psi[tri.nodes[k]] * e.grad[k].x();
      ds2 += psi[tri.nodes[k]] * e.grad[k].y();
    }
    const double eps = tri.region == 1 ? eps1 : eps2;
    const cdouble f = i / k_tilde_squared(eps, gamma);
    out[t].e1 = f * (gamma * dp1 - ds2);
    out[t].e2 = f * (gamma * dp2 + ds1);
    out[t].h1 = f * (eps * dp2 + gamma * ds1);
    out[t].h2 = f * (-eps * dp1 + gamma * ds2);
  }
  return out;
}

bool PropertyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const PropertyCheck& c) { return c.pass; });
}

const PropertyCheck* PropertyReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

nlohmann::json PropertyReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j{{"name", c.name},         {"value", c.value},
                     {"threshold", c.threshold}, {"margin", c.margin},
                     {"pass", c.pass}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(std::move(j));
  }
  return nlohmann::json{{"all_pass", all_pass()}, {"checks", std::move(arr)}};
}

namespace {

void at_most(PropertyReport& r, std::string name, double value, double threshold,
             std::string detail = {}) {
  const bool pass = std::isfinite(value) && value <= threshold;
  r.checks.push_back({std::move(name), value, threshold, threshold - value, pass,
                      std::move(detail)});
}

void at_least(PropertyReport& r, std::string name, double value,
              double threshold, std::string detail = {}) {
  const bool pass = std::isfinite(value) && value >= threshold;
  r.checks.push_back({std::move(name), value, threshold, value - threshold, pass,
                      std::move(detail)});
}

double asymmetry(const Eigen::MatrixXd& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

// Extreme generalized eigenvalues of (a, g), g symmetric positive definite.
std::pair<double, double> rayleigh_extremes(const Eigen::MatrixXd& a,
                                            const Eigen::MatrixXd& g) {
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
      a, g, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

}  // namespace

PropertyReport verify_all(const Mesh& mesh, const FieldSpaces& spaces,
                          const PencilMatrices& m, const Pencil& pencil,
                          const Spectrum* spectrum, const VerifyOptions& opt) {
  PropertyReport r;
  const double ht = opt.hermitian_tol;
  at_most(r, "symmetric_K", asymmetry(m.K), ht);
  at_most(r, "symmetric_A1", asymmetry(m.A1), ht);
  at_most(r, "symmetric_A2", asymmetry(m.A2), ht);
  at_most(r, "symmetric_S", asymmetry(m.S), ht);

  {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.K,
                                                            Eigen::EigenvaluesOnly);
    const Eigen::LLT<Eigen::MatrixXd> llt(m.K);
    const double lmin = es.eigenvalues().minCoeff();
    const bool pass = llt.info() == Eigen::Success && lmin > 0.0;
    r.checks.push_back({"K_positive_definite", lmin, 0.0, lmin, pass,
                        "smallest eigenvalue of K"});
  }

  const double emax = m.eps_max();
  const double bt = opt.bound_tol;
  {
    const auto [lo, hi] = rayleigh_extremes(m.A1, m.gram);
    at_least(r, "a1_rayleigh_lower", lo, 1.0 - bt);
    at_most(r, "a1_rayleigh_upper", hi, emax + bt);
  }
  {
    const auto [lo, hi] = rayleigh_extremes(m.A2, m.gram);
    at_least(r, "a2_rayleigh_lower", lo, 1.0 / emax - bt);
    at_most(r, "a2_rayleigh_upper", hi, 1.0 + bt);
  }
  {
    const auto [lo, hi] = rayleigh_extremes(m.S, m.gram);
    at_least(r, "s_rayleigh_lower", lo, -0.5 - bt);
    at_most(r, "s_rayleigh_upper", hi, 0.5 + bt);
  }

  {
    const Eigen::Index np = m.pi_dim;
    const Eigen::Index ns = m.dim() - np;
    double off = 0.0;
    for (const auto* x : {&m.K, &m.A1, &m.A2}) {
      if (np > 0 && ns > 0) {
        off = std::max(off, x->topRightCorner(np, ns).cwiseAbs().maxCoeff());
        off = std::max(off, x->bottomLeftCorner(ns, np).cwiseAbs().maxCoeff());
      }
    }
    double diag = 0.0;
    if (np > 0) diag = std::max(diag, m.S.topLeftCorner(np, np).cwiseAbs().maxCoeff());
    if (ns > 0) diag = std::max(diag, m.S.bottomRightCorner(ns, ns).cwiseAbs().maxCoeff());
    at_most(r, "parity_block_structure", std::max(off, diag), 0.0,
            "off-diagonal blocks of K, A1, A2 and diagonal blocks of S");
  }

  if (opt.check_s_volume) {
    const Eigen::MatrixXd sv = assemble_s_volume(spaces, mesh);
    at_most(r, "s_line_volume_agreement", (m.S - sv).cwiseAbs().maxCoeff(),
            opt.s_agreement_tol);
  }

  {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    double self_adj = 0.0;
    double parity = 0.0;
    for (int k = 0; k < opt.identity_samples; ++k) {
      const cdouble g(u(rng), u(rng));
      const Eigen::MatrixXcd l = pencil.evaluate(g);
      const double nl = std::max(l.norm(), std::numeric_limits<double>::min());
      self_adj = std::max(
          self_adj, (l.adjoint() - pencil.evaluate(std::conj(g))).norm() / nl);
      parity = std::max(
          parity, (apply_parity(l, pencil.pi_dim()) - pencil.evaluate(-g)).norm() / nl);
    }
    at_most(r, "self_adjoint_identity", self_adj, opt.identity_tol,
            "max ||L(g)^H - L(conj g)|| / ||L(g)|| over seeded samples");
    at_most(r, "parity_identity", parity, opt.identity_tol,
            "max ||P L(g) P - L(-g)|| / ||L(g)|| over seeded samples");
  }

  if (pencil.eps1() == pencil.eps2()) {
    const double root = std::sqrt(pencil.eps1());
    const double cmax = pencil.max_coefficient_norm();
    const double collapse = std::max(pencil.evaluate(root).norm(),
                                     pencil.evaluate(-root).norm()) / cmax;
    at_most(r, "degeneration_collapse", collapse, opt.degeneration_tol,
            "||L(+-sqrt(eps))|| / max ||C_k||");
  }

  if (spectrum != nullptr) {
    const auto& s = *spectrum;
    const int unconverged = static_cast<int>(std::count_if(
        s.entries.begin(), s.entries.end(),
        [](const SpectrumEntry& e) { return !e.converged; }));
    at_most(r, "eigenvalues_converged", unconverged, 0.0);
    at_most(r, "spectrum_symmetry", s.pairing.worst(), opt.symmetry_tol,
            "worst relative mismatch to -g, conj g, -conj g");
    at_most(r, "complex_quadruples", s.pairing.incomplete_quadruples, 0.0,
            "complex eigenvalues without a full quadruple");
    double worst_res = 0.0;
    int with_vectors = 0;
    for (const auto& e : s.entries) {
      if (std::isnan(e.residual)) continue;
      ++with_vectors;
      worst_res = std::max(worst_res, e.residual);
    }
    at_most(r, "eigenpair_residuals", worst_res, opt.residual_tol,
            std::to_string(with_vectors) + " recovered vectors");
    if (pencil.eps1() == pencil.eps2()) {
      double worst = 0.0;
      for (const auto& e : s.entries) {
        const cdouble g2 = e.gamma * e.gamma;
        worst = std::max(worst, std::abs(g2.imag()) / (1.0 + std::norm(e.gamma)));
      }
      at_most(r, "homogeneous_real_gamma_squared", worst, opt.homogeneous_tol);
    }
  }
  return r;
}

}  // namespace wgp
