// Copyright 2026 The wgpencil Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace wgp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Geometry or mesh file rejected by validation.
class MeshError : public Error {
 public:
  using Error::Error;
};

/// Invalid permittivity, dimension mismatch, or other precondition on the
/// discrete operators.
class AssemblyError : public Error {
 public:
  using Error::Error;
};

/// Cholesky factorization of the leading coefficient failed.
class FactorizationError : public Error {
 public:
  using Error::Error;
};

/// The longitudinal-field reduction is not defined at gamma^2 = eps_j.
class DegenerationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace wgp
