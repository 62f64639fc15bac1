#pragma once

// Pairings with the singular eigenfunctions
//
//   Phi_eta(mu) = coef * eta * P 1/(eta - mu) + d(eta) lambda(eta) delta(eta - mu)
//
// under the half-range scalar product (f, g) = int rho f g dmu, rho = factor * gamma.
// Delta terms are always applied as point evaluations.

#include <memory>
#include <span>
#include <vector>

#include "caseortho/xfunction.hpp"

namespace caseortho {

/// Tabulated a(eta) on a Gauss panel grid over the spectrum.
class ContinuumCoefficient {
 public:
  /// vanish_beyond: a is taken as 0 past the grid end (truncated Gaussian spectrum).
  ContinuumCoefficient(PanelGridPtr grid, std::vector<double> values, bool vanish_beyond);

  const PanelGrid& grid() const noexcept { return *grid_; }
  PanelGridPtr grid_ptr() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> nodes() const noexcept { return grid_->nodes(); }

  double operator()(double eta) const;
  ContinuumCoefficient scaled(double k) const;
  double max_abs() const;

 private:
  PanelGridPtr grid_;
  std::vector<double> values_;
  bool vanish_beyond_;
};

/// f = discrete + int a(eta) Phi_eta d eta; discrete is the Phi_inf = 1
/// coefficient (ConstMFP only, 0 for Maxwell).
struct ModalExpansion {
  double discrete = 0.0;
  ContinuumCoefficient continuum;
};

struct PairingOptions {
  QuadratureConfig quad = QuadratureConfig{}.with_tolerances(1e-11, 1e-10);
  /// Negative control: flips the principal-value sign in pair_smooth.
  bool flip_pv_sign = false;
};

class EigenPairing {
 public:
  explicit EigenPairing(std::shared_ptr<const GammaWeight> gamma, PairingOptions opts = {});
  /// Canonical function, gamma and pairing for a model, with the identity check.
  static EigenPairing build(const KineticModel& model, PairingOptions opts = {});

  const KineticModel& model() const noexcept { return gamma_->model(); }
  const GammaWeight& gamma() const noexcept { return *gamma_; }
  std::shared_ptr<const GammaWeight> gamma_ptr() const noexcept { return gamma_; }
  const PairingOptions& options() const noexcept { return opts_; }
  Interval spectrum() const { return gamma_->range(); }

  double rho(double mu) const { return gamma_->rho(mu); }

  /// (f, g) = int rho f g over the spectrum.
  double scalar_product(const RealFn& f, const RealFn& g) const;
  /// (f, Phi_eta) for smooth f.
  double pair_smooth(const RealFn& f, double eta) const;
  /// (f, Phi_inf) = int rho f; ConstMFP only.
  double pair_discrete(const RealFn& f) const;
  /// N(eta) = d(eta) gamma(eta) |lambda^+(eta)|^2.
  double normalization(double eta) const;

  /// a(eta) = (f, Phi_eta) / N(eta) on the gamma grid.
  ContinuumCoefficient expand(const RealFn& f) const;
  /// Full expansion; for ConstMFP the Phi_inf projection is removed first.
  ModalExpansion expand_modal(const RealFn& f) const;

  /// int a(eta) exp(-x/eta) Phi_eta(mu) d eta for any real mu (the delta term
  /// fires only for mu inside the spectrum).
  double superpose(const RealFn& a, double mu, double x = 0.0) const;
  double reconstruct(const ContinuumCoefficient& a, double mu, double x = 0.0) const;
  double reconstruct(const ModalExpansion& e, double mu) const;

  /// int b(eta') (Phi_eta, Phi_eta') d eta': should equal N(eta) b(eta).
  double smeared_normalization(const RealFn& b, double eta) const;

 private:
  void check_eta(double eta) const;
  std::shared_ptr<const GammaWeight> gamma_;
  PairingOptions opts_;
};

}  // namespace caseortho
