#include "caseortho/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace caseortho {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.772453850905516027298167483341;

}  // namespace

// ---------------------------------------------------------------- model

KineticModel KineticModel::maxwell(double c) {
  if (!(c > 0.0 && c <= 1.0)) throw DomainError("Maxwell model: c must lie in (0, 1]");
  return {ModelKind::Maxwell, c};
}

KineticModel KineticModel::const_mfp() { return {ModelKind::ConstMFP, 1.0}; }

std::string KineticModel::name() const { return is_maxwell() ? "maxwell" : "cmfp"; }

Interval KineticModel::spectrum() const { return is_maxwell() ? Interval{0.0, kInf} : Interval{0.0, 1.0}; }

Interval KineticModel::effective_spectrum(const QuadratureConfig& cfg) const {
  return truncate(spectrum(), cfg);
}

Interval KineticModel::velocity_range() const {
  return is_maxwell() ? Interval{-kInf, kInf} : Interval{-1.0, 1.0};
}

double KineticModel::weight_coefficient() const { return is_maxwell() ? c_ / kSqrtPi : 0.75; }

double KineticModel::weight_factor(double mu) const {
  if (is_maxwell()) return std::exp(-mu * mu);
  return std::abs(mu) < 1.0 ? (1.0 - mu) * (1.0 + mu) : 0.0;
}

double KineticModel::weight(double mu) const { return weight_coefficient() * weight_factor(mu); }

double KineticModel::delta_normalizer(double eta) const {
  if (is_maxwell()) return std::exp(eta * eta);
  return 1.0 / ((1.0 - eta) * (1.0 + eta));
}

// ---------------------------------------------------------------- special functions

double dawson(double x) {
  const double ax = std::abs(x);
  double f;
  if (ax < 7.0) {
    // exp(-x^2) * sum x^{2n+1} / (n! (2n+1)); every term positive.
    const double x2 = ax * ax;
    double power = ax;  // x^{2n+1}/n!
    double sum = ax;
    for (int n = 1; n < 400; ++n) {
      power *= x2 / n;
      const double term = power / (2.0 * n + 1.0);
      sum += term;
      if (term < 1e-17 * sum && n > x2) break;
    }
    f = std::exp(-x2) * sum;
  } else {
    // F(x) ~ 1/(2x) sum (2n-1)!! / (2x^2)^n
    const double inv = 1.0 / (2.0 * ax * ax);
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < 60; ++n) {
      const double next = term * (2.0 * n - 1.0) * inv;
      if (next > term) break;
      term = next;
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    f = sum / (2.0 * ax);
  }
  return x < 0.0 ? -f : f;
}

// ---------------------------------------------------------------- dispersion functions

cplx lambda0(cplx z) {
  if (z == cplx(0.0)) return 1.0;
  if (z.imag() == 0.0 && std::abs(z.real()) <= 1.0) {
    throw CutError("lambda0: z lies on the cut [-1, 1]; use lambda0_plus");
  }
  if (std::abs(z) > 2.0) {
    // -sum_{k>=1} z^{-2k} / (2k + 1)
    const cplx q = 1.0 / (z * z);
    cplx p = q;
    cplx sum = 0.0;
    for (int k = 1; k < 200; ++k) {
      const cplx term = p / (2.0 * k + 1.0);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      p *= q;
    }
    return -sum;
  }
  return 1.0 + 0.5 * z * std::log((z - 1.0) / (z + 1.0));
}

cplx lambda0_plus(double mu) {
  if (!(std::abs(mu) < 1.0)) throw DomainError("lambda0_plus: mu must lie in (-1, 1)");
  const double re = 1.0 + 0.5 * mu * (std::log1p(-mu) - std::log1p(mu));
  return {re, 0.5 * kPi * mu};
}

cplx lambda_cmfp(cplx z) {
  if (z == cplx(0.0)) return 1.0;
  if (z.imag() == 0.0 && std::abs(z.real()) <= 1.0) {
    throw CutError("lambda_cmfp: z lies on the cut [-1, 1]; use boundary_values");
  }
  if (std::abs(z) > 2.0) {
    // -3 sum_{k>=1} z^{-2k} / ((2k+1)(2k+3)); avoids cancellation at large |z|.
    const cplx q = 1.0 / (z * z);
    cplx p = q;
    cplx sum = 0.0;
    for (int k = 1; k < 200; ++k) {
      const cplx term = p / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      p *= q;
    }
    return -3.0 * sum;
  }
  return -0.5 + 1.5 * (1.0 - z * z) * lambda0(z);
}

cplx lambda_maxwell(cplx z, double c, const QuadratureConfig& cfg) {
  if (!(c > 0.0 && c <= 1.0)) throw DomainError("lambda_maxwell: c must lie in (0, 1]");
  if (z == cplx(0.0)) return 1.0;
  if (z.imag() == 0.0) {
    throw CutError("lambda_maxwell: real z lies on the cut; use boundary_values");
  }
  const cplx cauchy =
      cauchy_integral([](double t) { return std::exp(-t * t); }, Interval{-kInf, kInf}, z, cfg);
  return 1.0 + z * (c / kSqrtPi) * cauchy;
}

double lambda_real(const KineticModel& model, double mu) {
  if (model.is_maxwell()) return 1.0 - 2.0 * model.c() * mu * dawson(mu);
  const double a = std::abs(mu);
  if (a > 1.0) throw DomainError("lambda_real: |mu| > 1 for the ConstMFP model");
  if (a == 1.0) return -0.5;
  const double l0 = 1.0 + 0.5 * mu * (std::log1p(-mu) - std::log1p(mu));
  return -0.5 + 1.5 * (1.0 - mu) * (1.0 + mu) * l0;
}

double lambda_imag(const KineticModel& model, double mu) {
  return kPi * mu * model.weight(mu);
}

BoundaryPair boundary_values(const KineticModel& model, double mu) {
  const Interval s = model.spectrum();
  if (mu == s.lo || mu == s.hi) {
    throw EndpointError("boundary_values: mu at a spectrum endpoint; use ThetaTable limits");
  }
  if (!s.interior(mu)) throw DomainError("boundary_values: mu outside the spectrum interval");
  const cplx plus(lambda_real(model, mu), lambda_imag(model, mu));
  return {mu, plus, std::conj(plus)};
}

double theta_exact(const KineticModel& model, double mu) {
  return std::atan2(lambda_imag(model, mu), lambda_real(model, mu));
}

// ---------------------------------------------------------------- theta table

namespace {

std::pair<double, double> model_limits(const KineticModel& model) {
  // lambda^+ -> 1 at mu -> 0+. At the far end lambda^+ tends to a real
  // number: -1/2 (ConstMFP), 1 - c > 0 (Maxwell c < 1) or 0^- (Maxwell c = 1).
  if (!model.is_maxwell()) return {0.0, kPi};
  return {0.0, model.c() < 1.0 ? 0.0 : kPi};
}

double nearest_branch(double raw, double reference) {
  return raw + 2.0 * kPi * std::round((reference - raw) / (2.0 * kPi));
}

}  // namespace

ThetaTable ThetaTable::build(const KineticModel& model, int grid_size, const QuadratureConfig& cfg) {
  if (grid_size < kMinGridSize) {
    throw DomainError("ThetaTable::build: grid_size must be >= " + std::to_string(kMinGridSize));
  }
  const Interval s = model.effective_spectrum(cfg);
  ThetaTable t;
  t.model_ = model;
  t.lo_ = s.lo;
  t.hi_ = s.hi;
  t.limits_ = model_limits(model);
  t.exact_ = [model](double mu) { return theta_exact(model, mu); };

  // Chebyshev-type clustering toward both ends, open at the endpoints.
  std::vector<double> mu(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    const double u = 0.5 * (1.0 - std::cos(kPi * (i + 0.5) / grid_size));
    mu[i] = s.lo + (s.hi - s.lo) * u;
  }

  std::vector<double> th;
  std::vector<double> grid;
  double prev = t.limits_.first;
  double prev_mu = s.lo;
  for (double m : mu) {
    // Insert midpoints until the step to m is below pi/2.
    std::vector<double> pending{m};
    int refinements = 0;
    while (!pending.empty()) {
      const double target = pending.back();
      const double value = nearest_branch(t.exact_(target), prev);
      if (std::abs(value - prev) >= 0.5 * kPi) {
        if (++refinements > kMaxRefinements) {
          throw BranchError("ThetaTable::build: cannot unwrap theta near mu = " +
                            std::to_string(target));
        }
        pending.push_back(0.5 * (prev_mu + target));
        continue;
      }
      grid.push_back(target);
      th.push_back(value);
      prev = value;
      prev_mu = target;
      pending.pop_back();
    }
  }
  t.grid_ = std::move(grid);
  t.theta_ = std::move(th);
  t.finish();
  if (t.kappa_ < 0 || t.kappa_ > 1) {
    throw BranchError("ThetaTable::build: winding index outside {0, 1}");
  }
  return t;
}

ThetaTable ThetaTable::from_samples(std::vector<double> grid, std::vector<double> theta,
                                    std::pair<double, double> endpoint_limits) {
  if (grid.size() < 2 || grid.size() != theta.size()) {
    throw UsageError("ThetaTable::from_samples: need matching grid and theta of size >= 2");
  }
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw UsageError("ThetaTable::from_samples: grid must be ascending");
  }
  ThetaTable t;
  t.grid_ = std::move(grid);
  t.theta_ = std::move(theta);
  t.limits_ = endpoint_limits;
  t.lo_ = t.grid_.front();
  t.hi_ = t.grid_.back();
  t.finish();
  return t;
}

ThetaTable ThetaTable::synthetic(const Interval& range, const std::function<double(double)>& phase,
                                 int grid_size) {
  if (!range.finite()) throw DomainError("ThetaTable::synthetic: range must be finite");
  std::vector<double> grid(grid_size);
  std::vector<double> theta(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    const double u = 0.5 * (1.0 - std::cos(kPi * (i + 0.5) / grid_size));
    grid[i] = range.lo + (range.hi - range.lo) * u;
    theta[i] = phase(grid[i]);
  }
  ThetaTable t;
  t.grid_ = std::move(grid);
  t.theta_ = std::move(theta);
  t.limits_ = {phase(range.lo), phase(range.hi)};
  t.lo_ = range.lo;
  t.hi_ = range.hi;
  t.exact_ = phase;
  t.finish();
  return t;
}

void ThetaTable::finish() {
  kappa_ = static_cast<int>(std::lround((limits_.second - limits_.first) / kPi));
  // Fritsch-Carlson slopes for the monotone cubic through (lo, limit), samples, (hi, limit).
  std::vector<double> x;
  std::vector<double> y;
  if (grid_.front() > lo_) {
    x.push_back(lo_);
    y.push_back(limits_.first);
  }
  x.insert(x.end(), grid_.begin(), grid_.end());
  y.insert(y.end(), theta_.begin(), theta_.end());
  if (grid_.back() < hi_) {
    x.push_back(hi_);
    y.push_back(limits_.second);
  }
  const std::size_t n = x.size();
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  slopes_.assign(n, 0.0);
  slopes_[0] = d[0];
  slopes_[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0) continue;
    const double w1 = 2.0 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
    const double w2 = (x[i + 1] - x[i]) + 2.0 * (x[i] - x[i - 1]);
    slopes_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
  }
  // Keep the augmented knots in the sample arrays used by interpolate().
  if (x.size() != grid_.size()) {
    knots_x_ = std::move(x);
    knots_y_ = std::move(y);
  } else {
    knots_x_ = grid_;
    knots_y_ = theta_;
  }
}

double ThetaTable::interpolate(double mu) const {
  const auto& x = knots_x_;
  const auto& y = knots_y_;
  auto it = std::upper_bound(x.begin(), x.end(), mu);
  std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  i = std::min(i, x.size() - 2);
  const double h = x[i + 1] - x[i];
  const double t = (mu - x[i]) / h;
  const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
  const double h10 = t * (1.0 - t) * (1.0 - t);
  const double h01 = t * t * (3.0 - 2.0 * t);
  const double h11 = t * t * (t - 1.0);
  return h00 * y[i] + h10 * h * slopes_[i] + h01 * y[i + 1] + h11 * h * slopes_[i + 1];
}

double ThetaTable::operator()(double mu) const {
  if (mu == lo_) return limits_.first;
  const bool open_above = model_ && model_->is_maxwell();
  if (mu == hi_ && !open_above) return limits_.second;
  if (mu < lo_ || (mu > hi_ && !open_above)) {
    throw DomainError("ThetaTable: mu outside the table range");
  }
  if (!exact_) return interpolate(mu);
  const double raw = exact_(mu);
  if (!model_) return raw;
  // Branch offset from the nearest stored sample.
  auto it = std::lower_bound(grid_.begin(), grid_.end(), mu);
  std::size_t i = static_cast<std::size_t>(it - grid_.begin());
  if (i == grid_.size()) i = grid_.size() - 1;
  if (i > 0 && std::abs(grid_[i - 1] - mu) < std::abs(grid_[i] - mu)) --i;
  return nearest_branch(raw, theta_[i]);
}

double ThetaTable::max_jump() const {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < theta_.size(); ++i) {
    m = std::max(m, std::abs(theta_[i + 1] - theta_[i]));
  }
  return m;
}

}  // namespace caseortho
