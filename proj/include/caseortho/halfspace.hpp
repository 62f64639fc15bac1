#pragma once

// Half-space boundary value problems solved by the continuum expansion.
//
// Kramers (ConstMFP):     h = 2U0 + 2Gv(x - mu) + int exp(-x/eta) Phi_eta(mu) a(eta) d eta,
//                         U0 = V1 Gv,  a = 2Gv eta / N.
// Diffusion (Maxwell c):  h = B - int exp(-x/eta) Phi_eta(mu) a(eta) d eta,
//                         B = Gn / (1 - c),  a = B eta / N.
// Both satisfy h(0, mu) = 0 for mu > 0.

#include <memory>
#include <string>
#include <vector>

#include "caseortho/eigen.hpp"

namespace caseortho {

enum class ProblemKind { Kramers, Diffusion };

std::string to_string(ProblemKind k);

struct KramersProblem {
  double gv = 1.0;
};

struct DiffusionProblem {
  double c = 0.5;
  double gn = 1.0;
  /// DomainError unless 0 < c < 1.
  void validate() const;
};

/// Model-independent descriptor shared by the analytic and oracle solvers.
struct ProblemSpec {
  ProblemKind kind = ProblemKind::Kramers;
  /// Gv (Kramers) or Gn (diffusion).
  double gradient = 1.0;
  /// Collision ratio; 1 for Kramers.
  double c = 1.0;

  static ProblemSpec of(const KramersProblem& p) { return {ProblemKind::Kramers, p.gv, 1.0}; }
  static ProblemSpec of(const DiffusionProblem& p) { return {ProblemKind::Diffusion, p.gn, p.c}; }
  KineticModel model() const;
  /// U0 (Kramers) or the far-field background Gn/(1 - c) (diffusion).
  double expected_constant() const;
  /// h_as(x, mu).
  double asymptotic(double x, double mu) const;
  /// int w h_as d mu.
  double asymptotic_moment(double x) const;
  /// Scale used to make residuals relative.
  double scale() const;
  bool operator==(const ProblemSpec&) const = default;
};

struct ResidualStats {
  double lo = 0.0;
  double hi = 0.0;
  int points = 0;
  double max_abs = 0.0;
  double max_rel = 0.0;
};

struct MomentRow {
  double x;
  double m;
  double m_as;
  double defect;
};

class HalfSpaceSolution {
 public:
  HalfSpaceSolution(ProblemSpec spec, std::shared_ptr<const EigenPairing> pairing,
                    ContinuumCoefficient a, double route_agreement, double imag_ratio);

  const ProblemSpec& problem() const noexcept { return spec_; }
  const EigenPairing& pairing() const noexcept { return *pairing_; }
  const ContinuumCoefficient& a() const noexcept { return a_; }
  /// U0 for Kramers, Gn/(1 - c) for diffusion.
  double constant() const { return spec_.expected_constant(); }
  /// Largest relative difference between the two a(eta) forms on the grid.
  double route_agreement() const noexcept { return route_agreement_; }
  /// Largest |Im| / |Re| of the X^+ lambda^- form of a(eta).
  double imag_ratio() const noexcept { return imag_ratio_; }

  double evaluate_h(double x, double mu) const;
  /// Residual of the wall condition h(0, mu) = 0, mu > 0.
  double boundary_residual(double mu) const;
  ResidualStats boundary_residuals(double lo, double hi, int points) const;

  /// m(x) = int w(mu) h(x, mu) d mu through int w Phi_eta = coef.
  double moment(double x) const;
  /// Same quantity by direct quadrature of h over the velocity range.
  double moment_direct(double x) const;
  std::vector<MomentRow> moment_profile(const std::vector<double>& x) const;

 private:
  double sign() const { return spec_.kind == ProblemKind::Kramers ? 1.0 : -1.0; }
  ProblemSpec spec_;
  std::shared_ptr<const EigenPairing> pairing_;
  ContinuumCoefficient a_;
  double route_agreement_;
  double imag_ratio_;
};

/// Tolerance on the agreement of the two a(eta) forms.
inline constexpr double kRouteTolerance = 1e-6;

HalfSpaceSolution solve_kramers(const KramersProblem& p,
                                std::shared_ptr<const EigenPairing> pairing = nullptr);
HalfSpaceSolution solve_diffusion(const DiffusionProblem& p,
                                  std::shared_ptr<const EigenPairing> pairing = nullptr);
HalfSpaceSolution solve(const ProblemSpec& p, std::shared_ptr<const EigenPairing> pairing = nullptr);

}  // namespace caseortho
