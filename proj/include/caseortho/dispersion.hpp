#pragma once

/**
 * Dispersion functions of the two model kinetic equations.
 *
 *   Maxwell{c}:  w(mu) = (c/sqrt(pi)) exp(-mu^2),  mu in (-inf, inf)
 *   ConstMFP:    w(mu) = (3/4)(1 - mu^2),          mu in (-1, 1)
 *
 * lambda(z) = 1 + z int w(t)/(t - z) dt is analytic off the velocity
 * interval; its boundary values from above/below are
 * lambda^{+/-}(mu) = lambda(mu) +/- i pi mu w(mu), with lambda(mu) the
 * principal-value real part. Half-space theory only needs mu > 0, so the
 * spectrum interval is (0, inf) resp. (0, 1).
 */

#include <functional>
#include <span>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "caseortho/quadrature.hpp"

namespace caseortho {

enum class ModelKind { Maxwell, ConstMFP };

class KineticModel {
 public:
  /// Maxwell-weighted model with collision ratio c in (0, 1].
  static KineticModel maxwell(double c);
  /// Constant-mean-free-path model.
  static KineticModel const_mfp();

  ModelKind kind() const noexcept { return kind_; }
  bool is_maxwell() const noexcept { return kind_ == ModelKind::Maxwell; }
  /// Collision ratio (1 for ConstMFP).
  double c() const noexcept { return c_; }
  std::string name() const;

  /// Half-range spectrum interval: (0, inf) or (0, 1).
  Interval spectrum() const;
  /// Spectrum clipped at the Gaussian cutoff for the Maxwell model.
  Interval effective_spectrum(const QuadratureConfig& cfg) const;
  /// Full velocity interval: (-inf, inf) or (-1, 1).
  Interval velocity_range() const;

  /// w(mu) = weight_coefficient() * weight_factor(mu).
  double weight(double mu) const;
  double weight_coefficient() const;
  /// exp(-mu^2) or (1 - mu^2): the factor entering the half-range weight rho.
  double weight_factor(double mu) const;
  /// Coefficient d(eta) of lambda(eta) delta(eta - mu) in the eigenfunction.
  double delta_normalizer(double eta) const;

  bool operator==(const KineticModel&) const = default;

 private:
  KineticModel(ModelKind kind, double c) : kind_(kind), c_(c) {}
  ModelKind kind_;
  double c_;
};

/// Dawson integral F(x) = exp(-x^2) int_0^x exp(t^2) dt.
double dawson(double x);

/// lambda_0(z) = 1 + (z/2) int_{-1}^{1} dt/(t - z); continuous off [-1, 1].
cplx lambda0(cplx z);
/// Boundary value lambda_0^+(mu) on (-1, 1).
cplx lambda0_plus(double mu);

/// ConstMFP dispersion function  -1/2 + (3/2)(1 - z^2) lambda_0(z).
cplx lambda_cmfp(cplx z);

/// Maxwell dispersion function off the real axis, by Cauchy quadrature.
cplx lambda_maxwell(cplx z, double c, const QuadratureConfig& cfg = {});

/// Principal-value (on-axis real) part lambda(mu).
/// Maxwell: 1 - 2 c mu F(mu). ConstMFP: closed form, limit -1/2 at |mu| = 1.
double lambda_real(const KineticModel& model, double mu);

/// Imaginary part of lambda^+(mu): pi mu w(mu).
double lambda_imag(const KineticModel& model, double mu);

struct BoundaryPair {
  double mu;
  cplx lambda_plus;
  cplx lambda_minus;
};

/// lambda^{+/-}(mu) for mu strictly inside the spectrum interval.
BoundaryPair boundary_values(const KineticModel& model, double mu);

/// arg lambda^+(mu) on the principal branch (0, pi) for interior mu.
double theta_exact(const KineticModel& model, double mu);

/**
 * Continuous branch of theta(mu) = arg lambda^+(mu) with theta(0) = 0.
 *
 * Built from the model it evaluates theta exactly (atan2 plus the branch
 * offset fixed on the grid); a table built from raw samples interpolates
 * with a monotone cubic and the stored endpoint limits.
 */
class ThetaTable {
 public:
  static constexpr int kMinGridSize = 64;
  static constexpr int kMaxRefinements = 20;

  /// Samples on a grid clustered toward both ends of the (effective) spectrum.
  static ThetaTable build(const KineticModel& model, int grid_size,
                          const QuadratureConfig& cfg = {});

  /// Table from raw samples. Used for synthetic phases in tests.
  static ThetaTable from_samples(std::vector<double> grid, std::vector<double> theta,
                                 std::pair<double, double> endpoint_limits);

  /// Table of an arbitrary phase function on [lo, hi].
  static ThetaTable synthetic(const Interval& range, const std::function<double(double)>& phase,
                              int grid_size = 256);

  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> theta() const noexcept { return theta_; }
  int kappa() const noexcept { return kappa_; }
  std::pair<double, double> endpoint_limits() const noexcept { return limits_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::optional<KineticModel> model() const { return model_; }

  /// theta at any mu in [lo, hi]; endpoints return the limits.
  double operator()(double mu) const;

  /// Largest |theta_{i+1} - theta_i| over the grid.
  double max_jump() const;

 private:
  ThetaTable() = default;
  void finish();
  double interpolate(double mu) const;

  std::vector<double> grid_;
  std::vector<double> theta_;
  std::vector<double> knots_x_;
  std::vector<double> knots_y_;
  std::vector<double> slopes_;
  std::pair<double, double> limits_{0.0, 0.0};
  double lo_ = 0.0;
  double hi_ = 1.0;
  int kappa_ = 0;
  std::optional<KineticModel> model_;
  std::function<double(double)> exact_;
};

}  // namespace caseortho
