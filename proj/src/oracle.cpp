// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#include "wgpencil/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "wgpencil/error.hpp"

namespace wgp {

std::string_view to_string(OracleFamily f) {
  switch (f) {
    case OracleFamily::kDirichletDerived:
      return "DIRICHLET_DERIVED";
    case OracleFamily::kNeumannDerived:
      return "NEUMANN_DERIVED";
    case OracleFamily::kLse:
      return "LSE";
    case OracleFamily::kLsm:
      return "LSM";
  }
  return "LSE";
}

OracleFamily oracle_family_from_string(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (s == "LSE") return OracleFamily::kLse;
  if (s == "LSM") return OracleFamily::kLsm;
  if (s == "DIRICHLET_DERIVED") return OracleFamily::kDirichletDerived;
  if (s == "NEUMANN_DERIVED") return OracleFamily::kNeumannDerived;
  throw Error("unknown oracle family '" + std::string(name) + "'");
}

namespace {

// Appends +-sqrt(g2) with the given metadata.
void push_pair(std::vector<OracleRoot>& out, OracleRoot base, double g2) {
  const cdouble g = g2 >= 0.0 ? cdouble(std::sqrt(g2), 0.0)
                              : cdouble(0.0, std::sqrt(-g2));
  base.gamma = g;
  out.push_back(base);
  base.gamma = -g;
  out.push_back(base);
}

// cos(kL) continued to k^2 = q < 0.
double cos_q(double q, double len) {
  if (q > 0.0) return std::cos(std::sqrt(q) * len);
  if (q < 0.0) return std::cosh(std::sqrt(-q) * len);
  return 1.0;
}

// sin(kL)/k, entire in q = k^2.
double sinc_q(double q, double len) {
  const double x2 = q * len * len;
  if (std::abs(x2) < 1e-8) return len * (1.0 - x2 / 6.0);
  if (q > 0.0) {
    const double k = std::sqrt(q);
    return std::sin(k * len) / k;
  }
  const double k = std::sqrt(-q);
  return std::sinh(k * len) / k;
}

// k sin(kL), entire in q = k^2.
double ksin_q(double q, double len) {
  if (q > 0.0) {
    const double k = std::sqrt(q);
    return k * std::sin(k * len);
  }
  if (q < 0.0) {
    const double k = std::sqrt(-q);
    return -k * std::sinh(k * len);
  }
  return 0.0;
}

}  // namespace

std::vector<OracleRoot> homogeneous_rect_spectrum(double a, double b, double eps,
                                                  double max_lambda) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error("rectangle sides must be positive");
  if (!(eps >= 1.0)) throw Error("permittivity must be >= 1");
  std::vector<OracleRoot> out;
  const double ka = std::numbers::pi / a;
  const double kb = std::numbers::pi / b;
  const int mmax = static_cast<int>(std::floor(std::sqrt(std::max(max_lambda, 0.0)) / ka));
  const int nmax = static_cast<int>(std::floor(std::sqrt(std::max(max_lambda, 0.0)) / kb));
  for (int dirichlet = 1; dirichlet >= 0; --dirichlet) {
    const int start = dirichlet ? 1 : 0;
    for (int m = start; m <= mmax; ++m) {
      for (int n = start; n <= nmax; ++n) {
        if (m == 0 && n == 0) continue;
        const double lambda = (m * ka) * (m * ka) + (n * kb) * (n * kb);
        if (lambda > max_lambda) continue;
        OracleRoot r;
        r.family = dirichlet ? OracleFamily::kDirichletDerived
                             : OracleFamily::kNeumannDerived;
        r.m = m;
        r.n = n;
        r.bracket_lo = r.bracket_hi = eps - lambda;
        push_pair(out, r, eps - lambda);
      }
    }
  }
  return out;
}

double slab_determinant(OracleFamily family, double gamma2, double a, double b,
                        double d, double eps1, double eps2, int n) {
  const double cut = (n * std::numbers::pi / b) * (n * std::numbers::pi / b);
  const double q1 = eps1 - gamma2 - cut;
  const double q2 = eps2 - gamma2 - cut;
  const double len = a - d;
  switch (family) {
    case OracleFamily::kLse:
      return sinc_q(q2, d) * cos_q(q1, len) + sinc_q(q1, len) * cos_q(q2, d);
    case OracleFamily::kLsm:
      return ksin_q(q2, d) * cos_q(q1, len) / eps2 +
             ksin_q(q1, len) * cos_q(q2, d) / eps1;
    default:
      throw Error("slab determinant needs the LSE or LSM family");
  }
}

std::vector<OracleRoot> slab_dispersion_roots(double a, double b, double d,
                                              double eps1, double eps2, int n,
                                              OracleFamily family,
                                              const SlabSearch& search) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error("rectangle sides must be positive");
  if (!(d > 0.0) || !(d < a)) throw Error("slab width must lie in (0, a)");
  if (search.samples < 2) throw Error("oracle search needs at least 2 samples");
  auto f = [&](double q) {
    return slab_determinant(family, q, a, b, d, eps1, eps2, n);
  };
  const double qmax = search.max_abs_gamma * search.max_abs_gamma;
  const int steps = 2 * search.samples;
  // Uniform gamma^2 grid over [-qmax, qmax]; the determinant is entire, so a
  // sign change always brackets a root and never a pole.
  std::vector<double> qs(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    qs[i] = -qmax + 2.0 * qmax * static_cast<double>(i) / steps;
  }
  qs[search.samples] = 0.0;

  struct Found {
    double q, lo, hi, res;
  };
  std::vector<Found> found;
  double flo = f(qs[0]);
  if (flo == 0.0) found.push_back({qs[0], qs[0], qs[0], 0.0});
  for (int i = 0; i < steps; ++i) {
    double lo = qs[i];
    double hi = qs[i + 1];
    const double fhi = f(hi);
    if (fhi == 0.0) {
      found.push_back({hi, hi, hi, 0.0});
      flo = fhi;
      continue;
    }
    if (flo == 0.0 || (flo > 0.0) == (fhi > 0.0)) {
      flo = fhi;
      continue;
    }
    const double bracket_lo = lo;
    const double bracket_hi = hi;
    double fl = flo;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = f(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm > 0.0) == (fl > 0.0)) {
        lo = mid;
        fl = fm;
      } else {
        hi = mid;
      }
    }
    double q = std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
    double fq = f(q);
    for (int it = 0; it < 3 && fq != 0.0; ++it) {
      const double h = 1e-7 * (1.0 + std::abs(q));
      const double slope = (f(q + h) - f(q - h)) / (2.0 * h);
      if (slope == 0.0 || !std::isfinite(slope)) break;
      const double next = q - fq / slope;
      const double fn = f(next);
      if (!(std::abs(fn) < std::abs(fq)) || next < bracket_lo || next > bracket_hi) break;
      q = next;
      fq = fn;
    }
    found.push_back({q, bracket_lo, bracket_hi, std::abs(fq)});
    flo = fhi;
  }
  if (family == OracleFamily::kLsm && n == 0 && eps1 == eps2) {
    // kx = 0 in both regions with no y variation is the constant field.
    std::erase_if(found, [&](const Found& r) {
      return std::abs(r.q - eps1) <= 1e-9 * (1.0 + eps1);
    });
  }

  std::sort(found.begin(), found.end(),
            [](const Found& x, const Found& y) { return x.q > y.q; });
  const ExclusionInterval ex = exclusion_interval(eps1, eps2);
  std::vector<OracleRoot> out;
  int m = 0;
  for (const auto& r : found) {
    OracleRoot root;
    root.family = family;
    root.m = ++m;
    root.n = n;
    root.bracket_lo = r.lo;
    root.bracket_hi = r.hi;
    root.residual = r.res;
    root.in_exclusion = r.q >= 0.0 && ex.contains(std::sqrt(r.q));
    push_pair(out, root, r.q);
  }
  return out;
}

void write_oracle_csv(std::ostream& out, const std::vector<OracleRoot>& roots) {
  out << "family,m,n,re_gamma,im_gamma,residual\n";
  char buf[160];
  for (const auto& r : roots) {
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%.17g,%.17g,%.17g\n",
                  std::string(to_string(r.family)).c_str(), r.m, r.n,
                  r.gamma.real(), r.gamma.imag(), r.residual);
    out << buf;
  }
}

std::vector<OracleMatch> match_oracle(const std::vector<OracleRoot>& roots,
                                      const std::vector<cdouble>& computed,
                                      const ExclusionInterval& exclusion,
                                      double rel_tol, double abs_tol_at_zero,
                                      double exclusion_margin) {
  std::vector<OracleMatch> out;
  out.reserve(roots.size());
  for (const auto& r : roots) {
    OracleMatch mt;
    mt.root = r;
    double best = std::numeric_limits<double>::infinity();
    for (const cdouble& g : computed) {
      const double dist = std::abs(g - r.gamma);
      if (dist < best) {
        best = dist;
        mt.nearest = g;
      }
    }
    const double mag = std::abs(r.gamma);
    const bool is_real = r.gamma.imag() == 0.0;
    mt.used = !(exclusion_margin >= 0.0 && is_real &&
                exclusion.contains(r.gamma.real(), exclusion_margin));
    if (mag == 0.0) {
      mt.gap = best;
      mt.pass = best <= abs_tol_at_zero;
    } else {
      mt.gap = best / mag;
      mt.pass = mt.gap <= rel_tol;
    }
    out.push_back(mt);
  }
  return out;
}

}  // namespace wgp
