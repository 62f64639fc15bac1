#pragma once

// Canonical solution X(z) of the homogeneous Riemann problem
// X^+/X^- = lambda^+/lambda^- on the spectrum interval, and the real
// orthogonality weight gamma(mu) = mu X^+(mu) / lambda^+(mu).
//
//   V(z) = (1/pi) int (theta(t) - s) / (t - z) dt
//   X(z) = exp(V(z)) / z   (OneOverZ, s = pi)      winding 1
//   X(z) = exp(V(z))       (UnitAtInfinity, s = 0) winding 0

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "caseortho/dispersion.hpp"
#include "caseortho/panel_grid.hpp"

namespace caseortho {

enum class Normalization { UnitAtInfinity, OneOverZ };

std::string to_string(Normalization n);

/// Tolerances used for the V integrals; tighter than the user-facing default
/// because every later stage inherits their error.
QuadratureConfig canonical_quadrature();

class CanonicalX {
 public:
  /// theta table for the model, normalization chosen from the far-end limit
  /// of theta (pi -> OneOverZ, 0 -> UnitAtInfinity) unless forced.
  static CanonicalX build(const KineticModel& model, int theta_grid = 256,
                          std::optional<Normalization> force = std::nullopt);

  CanonicalX(ThetaTable theta, Normalization n, QuadratureConfig cfg = canonical_quadrature());

  static Normalization normalization_for(const ThetaTable& theta);

  const ThetaTable& theta() const noexcept { return theta_; }
  Normalization normalization() const noexcept { return norm_; }
  std::optional<KineticModel> model() const { return theta_.model(); }
  const QuadratureConfig& quadrature() const noexcept { return cfg_; }
  /// Finite interval carrying the V integrand.
  Interval range() const { return {theta_.lo(), theta_.hi()}; }
  /// Constant subtracted from theta in the V integrand (pi or 0).
  double shift() const noexcept;
  /// X(inf): 1 for UnitAtInfinity, 0 for OneOverZ.
  double at_infinity() const noexcept { return norm_ == Normalization::UnitAtInfinity ? 1.0 : 0.0; }

  cplx V(cplx z) const;
  cplx X(cplx z) const;
  /// PV value of the V integral on the cut.
  double V_principal(double mu) const;
  cplx X_plus(double mu) const;
  cplx X_minus(double mu) const;

  /// mu X^+ / lambda^+ in the cancelled form (no 1/mu pole); needs a model.
  cplx gamma_complex(double mu) const;
  /// Real part of gamma_complex; ConsistencyError if |Im| > 1e-6 |Re|.
  double gamma(double mu) const;

 private:
  void check_cut_point(double mu) const;
  ThetaTable theta_;
  Normalization norm_;
  QuadratureConfig cfg_;
};

/// V1 = -(1/pi) int (theta - pi): the 1/z^2 coefficient of X for the
/// winding-1 finite-interval case. UnsupportedError for the Maxwell model.
double v1_constant(const CanonicalX& x);

/**
 * gamma tabulated on a composite Gauss grid over the spectrum, used for
 * every weighted integral downstream. Values come from the direct
 * evaluation; between nodes the panel interpolant is used.
 */
class GammaWeight {
 public:
  explicit GammaWeight(std::shared_ptr<const CanonicalX> x);
  GammaWeight(std::shared_ptr<const CanonicalX> x, const PanelGrid::Options& grid);

  const CanonicalX& canonical() const noexcept { return *x_; }
  std::shared_ptr<const CanonicalX> canonical_ptr() const noexcept { return x_; }
  const KineticModel& model() const noexcept { return model_; }
  const PanelGrid& grid() const noexcept { return *grid_; }
  PanelGridPtr grid_ptr() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  Interval range() const { return x_->range(); }

  /// Interpolated gamma on [lo, hi]; direct evaluation beyond hi (Maxwell).
  double operator()(double mu) const;
  double direct(double mu) const { return x_->gamma(mu); }
  /// rho = weight_factor * gamma.
  double rho(double mu) const { return model_.weight_factor(mu) * (*this)(mu); }
  /// coef * int factor(mu) mu^k gamma(mu) dmu over the spectrum.
  double moment(int k) const;
  /// Largest |Im gamma| / |gamma| met while tabulating.
  double max_imag_ratio() const noexcept { return imag_ratio_; }

  /// X(inf) + coef * int factor(t) gamma(t) / (t - z) dt.
  cplx representation(cplx z) const;

 private:
  std::shared_ptr<const CanonicalX> x_;
  KineticModel model_;
  PanelGridPtr grid_;
  std::vector<double> values_;
  double imag_ratio_ = 0.0;
};

/// Default Gauss grid for gamma on the model's spectrum.
PanelGrid::Options gamma_grid_options(const KineticModel& model);

/// max_k |X(z_k) - representation(z_k)|.
double identity_residual(const GammaWeight& g, std::span<const cplx> z);

/// identity_residual with rejection above 1e-4 (ConstructionError).
double validate_identity(const GammaWeight& g, std::span<const cplx> z);

/// Off-cut probe points used for the identity check of a model.
std::vector<cplx> identity_probe_points(const KineticModel& model);

}  // namespace caseortho
