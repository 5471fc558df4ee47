// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "wgpencil/pencil.hpp"

namespace wgp {

enum class OracleFamily { kDirichletDerived, kNeumannDerived, kLse, kLsm };

std::string_view to_string(OracleFamily f);
OracleFamily oracle_family_from_string(std::string_view name);

/// Closed-form or transverse-resonance propagation constant. Both signs of
/// every root are listed; gamma is real or purely imaginary.
struct OracleRoot {
  cdouble gamma;
  OracleFamily family = OracleFamily::kLse;
  int m = 0;
  int n = 0;
  double bracket_lo = 0.0;  // gamma^2 interval that isolated the root
  double bracket_hi = 0.0;
  double residual = 0.0;  // |determinant| at the root
  bool in_exclusion = false;
};

/// Homogeneous a x b rectangle: gamma^2 = eps - lambda with Dirichlet
/// eigenvalues (m, n >= 1) for the electric component and nonzero Neumann
/// eigenvalues for the magnetic one, lambda = (m pi/a)^2 + (n pi/b)^2 <= max_lambda.
std::vector<OracleRoot> homogeneous_rect_spectrum(double a, double b, double eps,
                                                  double max_lambda);

/// Entire (pole-free) transverse-resonance determinants of the slab-loaded
/// rectangle in gamma^2, region 2 on [0, d] and region 1 on [d, a]:
///   LSE: s(k2, d) c(k1, a-d) + s(k1, a-d) c(k2, d)
///   LSM: k2 sin(k2 d) c(k1, a-d) / eps2 + k1 sin(k1 (a-d)) c(k2, d) / eps1
/// with kj^2 = eps_j - gamma^2 - (n pi/b)^2, c(k, L) = cos(k L) and
/// s(k, L) = sin(k L)/k. They equal the tangent forms multiplied by
/// cos(k2 d) cos(k1 (a-d)) (and 1/(k1 k2) for LSE).
double slab_determinant(OracleFamily family, double gamma2, double a, double b,
                        double d, double eps1, double eps2, int n);

struct SlabSearch {
  double max_abs_gamma = 4.0;
  int samples = 2000;  // grid points per axis segment in gamma^2
  double residual_tol = 1e-12;
};

/// Roots on the real and imaginary gamma axes by sign-change bracketing on a
/// uniform gamma^2 grid, bisection and a final Newton/secant polish. The mode
/// index m counts roots by decreasing gamma^2, starting at 1.
std::vector<OracleRoot> slab_dispersion_roots(double a, double b, double d,
                                              double eps1, double eps2, int n,
                                              OracleFamily family,
                                              const SlabSearch& search = {});

/// CSV with header "family,m,n,re_gamma,im_gamma,residual".
void write_oracle_csv(std::ostream& out, const std::vector<OracleRoot>& roots);

struct OracleMatch {
  OracleRoot root;
  cdouble nearest;
  double gap = 0.0;  // relative, or absolute when the root is zero
  bool used = true;  // false when excluded (inside the dilated exclusion band)
  bool pass = false;
};

/// Pairs each oracle root with the nearest computed eigenvalue. Roots whose
/// real modulus lies within `exclusion_margin` of the exclusion interval are
/// reported but not used.
std::vector<OracleMatch> match_oracle(const std::vector<OracleRoot>& roots,
                                      const std::vector<cdouble>& computed,
                                      const ExclusionInterval& exclusion,
                                      double rel_tol, double abs_tol_at_zero,
                                      double exclusion_margin);

}  // namespace wgp
