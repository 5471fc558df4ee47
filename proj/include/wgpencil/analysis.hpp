// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "wgpencil/assembly.hpp"
#include "wgpencil/eigensolver.hpp"
#include "wgpencil/mesh.hpp"
#include "wgpencil/pencil.hpp"
#include "wgpencil/spaces.hpp"

namespace wgp {

enum class WaveClass {
  kPropagating,
  kEvanescent,
  kComplex,
  kDegenerationAdjacent,
  kInExclusion,
};

std::string_view to_string(WaveClass c);

/// Checked in order: within tol (1 + sqrt(eps_i)) of +-sqrt(eps_i) gives
/// kDegenerationAdjacent; real (|Im| <= tol (1 + |gamma|)) gives kInExclusion
/// when |gamma| lies in the exclusion interval and kPropagating otherwise;
/// |Re| <= tol (1 + |gamma|) gives kEvanescent; everything else is kComplex.
WaveClass classify(cdouble gamma, const ExclusionInterval& exclusion,
                   double tol = 1e-6);

/// Matches of every value against its images under gamma -> -gamma,
/// conj(gamma) and -conj(gamma). Each map is matched bijectively.
struct PairingReport {
  // partner[m][i]: index matched to image m of value i, -1 if none.
  std::array<std::vector<int>, 3> partner;
  // Largest |v[partner] - image| / (1 + |v|) per map.
  std::array<double, 3> max_mismatch{};
  int violations = 0;            // matches beyond tolerance
  int incomplete_quadruples = 0;  // complex values whose four members collide
  double tol = 0.0;

  double worst() const;
  bool pass() const { return violations == 0 && incomplete_quadruples == 0; }
};

PairingReport symmetry_pairing(const std::vector<cdouble>& values,
                               double tol = 1e-8,
                               const std::vector<WaveClass>* classes = nullptr);

/// Group of eigenvalues closer than the clustering tolerance.
struct Cluster {
  cdouble center;
  int size = 0;
  double diameter = 0.0;
};

std::vector<Cluster> find_clusters(const std::vector<cdouble>& values,
                                   double tol = 1e-6);

struct SpectrumEntry {
  cdouble gamma;
  double residual = 0.0;  // NaN when no vector was recovered
  WaveClass cls = WaveClass::kComplex;
  bool converged = true;
  std::array<int, 3> partners{-1, -1, -1};  // -gamma, conj, -conj
};

struct Spectrum {
  std::vector<SpectrumEntry> entries;
  ExclusionInterval exclusion;
  double classification_tol = 1e-6;
  std::array<int, 5> counts{};  // indexed by WaveClass
  double max_abs_re = 0.0;
  PairingReport pairing;
  std::vector<Cluster> clusters;  // size >= 2 only

  std::vector<cdouble> values() const;
  int count(WaveClass c) const { return counts[static_cast<int>(c)]; }
};

Spectrum build_spectrum(const EigenReport& report,
                        const ExclusionInterval& exclusion,
                        double classification_tol = 1e-6,
                        double pairing_tol = 1e-8);

/// Real eigenvalues outside [lower - margin, upper + margin].
int count_real_outside_exclusion(const Spectrum& s, double margin = 0.0);
/// Eigenvalues with |gamma| <= radius, skipping real ones whose modulus lies
/// in the exclusion interval dilated by `band`.
int count_in_disk(const Spectrum& s, double radius, double band);

struct DegenerationRow {
  int level = 0;
  double gamma = 0.0;
  Eigen::Index dim = 0;
  Eigen::Index nullity = 0;
};

struct DegenerationScan {
  std::vector<DegenerationRow> rows;
  bool nondecreasing = true;
  bool full_when_homogeneous = true;
};

/// Numerical nullity of L(+-sqrt(eps_i)) for pencils of successive refinement
/// levels (coarse first).
DegenerationScan degeneration_scan(const std::vector<const Pencil*>& levels,
                                   double rel_tol = 1e-8);

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  int used = 0;
  std::vector<double> eigenvalues;  // descending
};

/// Least-squares fit of log(lambda_n) against log(n) for the generalized
/// eigenvalues of (K, G) sorted in decreasing order, over the first
/// `fraction` of indices.
DecayFit k_decay_fit(const PencilMatrices& matrices, double fraction = 1.0 / 3.0);

struct TransverseField {
  cdouble e1, e2, h1, h2;
};

/// Per-triangle transverse fields from the longitudinal components. Throws
/// DegenerationError when gamma^2 is within tol (1 + eps) of the permittivity
/// of any region present in the mesh.
std::vector<TransverseField> transverse_fields(const Mesh& mesh,
                                               const Eigen::VectorXcd& pi,
                                               const Eigen::VectorXcd& psi,
                                               cdouble gamma, double eps1,
                                               double eps2, double tol = 1e-10);

struct PropertyCheck {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  double margin = 0.0;  // positive when passing
  bool pass = false;
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;

  bool all_pass() const;
  const PropertyCheck* find(std::string_view name) const;
  nlohmann::json to_json() const;
};

struct VerifyOptions {
  double hermitian_tol = 1e-14;
  double bound_tol = 1e-10;
  double s_agreement_tol = 1e-12;
  double identity_tol = 1e-13;
  int identity_samples = 10;
  std::uint64_t seed = 20260;
  double symmetry_tol = 1e-8;
  double homogeneous_tol = 1e-8;
  double degeneration_tol = 1e-12;
  double residual_tol = 1e-8;
  bool check_s_volume = true;
};

/// Runs every structural and spectral property check. Failures are recorded,
/// never thrown. `spectrum` may be null to skip the spectral checks.
PropertyReport verify_all(const Mesh& mesh, const FieldSpaces& spaces,
                          const PencilMatrices& matrices, const Pencil& pencil,
                          const Spectrum* spectrum,
                          const VerifyOptions& options = {});

}  // namespace wgp
