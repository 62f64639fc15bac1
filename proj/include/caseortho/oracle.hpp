#pragma once

// Discrete-ordinates solver for the two half-space problems on a truncated
// slab [0, L]. It shares no code with the singular-eigenfunction machinery
// beyond the model weight and the problem descriptor.
//
// Unknown psi = h - (known exact particular solution):
//   Kramers    psi = h - 2Gv(x - mu),  mu psi_x + psi = int w psi,       psi(0, mu>0) = 2Gv mu
//   diffusion  psi = h,                mu psi_x + psi = int w psi + Gn,  psi(0, mu>0) = 0
// psi tends to the constant 2U0 (resp. Gn/(1-c)); the far end x = L reflects
// specularly. Diamond differencing in x on a mesh graded toward the wall,
// Gauss ordinates on each half-range, unaccelerated source iteration.

#include <optional>
#include <string>
#include <vector>

#include "caseortho/halfspace.hpp"

namespace caseortho {

struct OracleConfig {
  double domain_length = 25.0;
  int cells = 2000;
  /// Ordinates per half-range.
  int ordinates = 64;
  double sweep_tol = 1e-10;
  int max_sweeps = 500000;
  /// Growth ratio of consecutive cells away from the wall.
  double grading = 1.05;
  /// Maxwell velocities are truncated at this value.
  double velocity_cutoff = 6.0;
  /// Largest relative spread of psi over the fit window still called asymptotic.
  double asymptotic_tol = 5e-4;
  /// Also solve on the mesh with pairs of cells merged, for the uncertainty.
  bool companion = true;

  void validate() const;
};

struct OracleSolution {
  ProblemSpec problem;
  OracleConfig config;
  std::vector<double> x;       // cell centers
  std::vector<double> dx;      // cell widths
  std::vector<double> mu;      // signed ordinates, ascending
  std::vector<double> weight;  // quadrature weights including w(mu)
  std::vector<double> h;       // cell averages, row-major [cell][ordinate]
  std::vector<double> psi_mean;  // int w psi / int w per cell
  int sweeps = 0;
  double last_delta = 0.0;
  double spectral_radius = 0.0;
  double conservation_residual = 0.0;
  /// psi_mean fit constant of the merged-cell companion solve.
  std::optional<double> companion_constant;

  double h_at(std::size_t cell, std::size_t ordinate) const { return h[cell * mu.size() + ordinate]; }
  /// int w h d mu per cell.
  double moment(std::size_t cell) const;
};

/// Cell widths summing to L: geometric growth from the wall up to a cap.
std::vector<double> oracle_mesh(const OracleConfig& cfg);
/// Each cell split into two equal halves.
std::vector<double> refine_mesh(const std::vector<double>& dx);
/// Neighboring cells merged pairwise (cell count must be even).
std::vector<double> coarsen_mesh(const std::vector<double>& dx);

OracleSolution solve_on_mesh(const ProblemSpec& p, const OracleConfig& cfg,
                             const std::vector<double>& dx);
OracleSolution solve_transport(const ProblemSpec& p, const OracleConfig& cfg = {});

struct ExtractedConstant {
  /// Far-field value of psi: 2U0 (Kramers) or Gn/(1-c) (diffusion).
  double value = 0.0;
  double uncertainty = 0.0;
  double window_residual = 0.0;
};

/// Least-squares constant of psi_mean over x in [L/2, 3L/4]. The uncertainty
/// adds the difference of the two window halves, the estimated remaining
/// iteration error and, when present, the shift against the companion solve. NonAsymptoticError if the window spread
/// exceeds config.asymptotic_tol.
ExtractedConstant extract_constant(const OracleSolution& s);

/// The problem's own constant (U0 or Gn/(1-c)) from psi's far-field value.
double oracle_problem_constant(const ProblemSpec& p, const ExtractedConstant& e);

struct ConvergenceStudy {
  std::vector<int> cells;
  std::vector<double> constants;
  /// Width-weighted L1 distance on [0, L] between the velocity-averaged
  /// unknowns of successive levels, both averaged onto the base cells.
  std::vector<double> profile_diffs;
  /// log2 of the last two profile differences; ~2 for a second-order scheme.
  double slope = 0.0;
  /// Same ratio for the far-field constant (dominated by roundoff and the
  /// iteration floor once the constant has converged).
  double constant_slope = 0.0;
  double extrapolated = 0.0;
  double sweep_tol = 0.0;
};

/// Solves on oracle_mesh(cfg) and `levels - 1` successive halvings of every
/// cell, with the sweep tolerance tightened to at most 1e-12 so the iteration
/// error stays below the differences being measured.
ConvergenceStudy convergence_study(const ProblemSpec& p, const OracleConfig& cfg, int levels = 3);

struct Comparison {
  ProblemSpec problem;
  double analytic_constant = 0.0;
  double numeric_constant = 0.0;
  double numeric_uncertainty = 0.0;
  double constant_rel_diff = 0.0;
  double profile_sup_diff = 0.0;
  int profile_points = 0;
  bool constant_pass = false;
  bool profile_pass = false;
  bool pass = false;
  /// Empty, or the reason the comparison could not be made.
  std::string diagnosis;
};

inline constexpr double kConstantTolerance = 0.01;
inline constexpr double kProfileTolerance = 0.02;

/// UsageError if the two solutions are for different problems.
Comparison compare(const HalfSpaceSolution& analytic, const OracleSolution& numeric);

}  // namespace caseortho
