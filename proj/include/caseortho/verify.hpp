#pragma once

// Executable invariant suites: pairing theorems, canonical-function checks and
// expansion closure, each reduced to residual-versus-tolerance records.

#include <cstdint>
#include <string>
#include <vector>

#include "caseortho/eigen.hpp"

namespace caseortho {

enum class Suite { Theorems, Canonical, Closure, All };

std::string to_string(Suite s);
/// UsageError for unknown names.
Suite parse_suite(const std::string& name);

struct Check {
  std::string name;
  /// Identity being checked, in plain notation.
  std::string statement;
  std::string model;
  /// Where it was sampled.
  std::string grid;
  double max_residual = 0.0;
  double tolerance = 0.0;
  /// Negative controls pass when the residual exceeds the tolerance.
  bool expect_above = false;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<Check> checks;
  bool pass() const;
};

struct VerifyOptions {
  std::vector<KineticModel> models;
  int theta_grid = 256;
  /// Draws the parameters of the closure test functions.
  std::uint64_t seed = 1;
  /// Flips the principal-value sign in every pairing (negative control).
  bool inject_sign_bug = false;

  /// ConstMFP plus Maxwell at c = 0.3, 0.5, 0.9.
  static std::vector<KineticModel> default_models();
};

VerifyReport run_verify(Suite suite, const VerifyOptions& opts);

}  // namespace caseortho
