#include "caseortho/xfunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace caseortho {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kRejectResidual = 1e-4;
constexpr double kImagTolerance = 1e-6;
}  // namespace

std::string to_string(Normalization n) {
  return n == Normalization::OneOverZ ? "one_over_z" : "unit_at_infinity";
}

QuadratureConfig canonical_quadrature() {
  QuadratureConfig cfg = QuadratureConfig{}.with_tolerances(1e-13, 1e-12);
  cfg.max_subdivisions = 8000;
  return cfg;
}

// ---------------------------------------------------------------- CanonicalX

CanonicalX CanonicalX::build(const KineticModel& model, int theta_grid,
                             std::optional<Normalization> force) {
  ThetaTable t = ThetaTable::build(model, theta_grid);
  const Normalization n = force.value_or(normalization_for(t));
  return CanonicalX(std::move(t), n);
}

CanonicalX::CanonicalX(ThetaTable theta, Normalization n, QuadratureConfig cfg)
    : theta_(std::move(theta)), norm_(n), cfg_(cfg) {
  cfg_.validate();
}

Normalization CanonicalX::normalization_for(const ThetaTable& theta) {
  return std::abs(theta.endpoint_limits().second - kPi) < 0.5 * kPi ? Normalization::OneOverZ
                                                                    : Normalization::UnitAtInfinity;
}

double CanonicalX::shift() const noexcept { return norm_ == Normalization::OneOverZ ? kPi : 0.0; }

cplx CanonicalX::V(cplx z) const {
  const double s = shift();
  auto f = [this, s](double t) { return theta_(t) - s; };
  return cauchy_integral(f, range(), z, cfg_) / kPi;
}

cplx CanonicalX::X(cplx z) const {
  const cplx e = std::exp(V(z));
  return norm_ == Normalization::OneOverZ ? e / z : e;
}

void CanonicalX::check_cut_point(double mu) const {
  const Interval r = range();
  if (mu == r.lo || mu == r.hi) throw EndpointError("CanonicalX: mu at an end of the cut");
  const bool open_above = model() && model()->is_maxwell();
  if (mu < r.lo || (mu > r.hi && !open_above)) {
    throw DomainError("CanonicalX: mu outside the cut");
  }
}

double CanonicalX::V_principal(double mu) const {
  check_cut_point(mu);
  const double s = shift();
  auto f = [this, s](double t) { return theta_(t) - s; };
  return singular_integral(f, range(), mu, cfg_) / kPi;
}

cplx CanonicalX::X_plus(double mu) const {
  const cplx e = std::exp(cplx(V_principal(mu), theta_(mu) - shift()));
  return norm_ == Normalization::OneOverZ ? e / mu : e;
}

cplx CanonicalX::X_minus(double mu) const { return std::conj(X_plus(mu)); }

cplx CanonicalX::gamma_complex(double mu) const {
  if (!model()) throw UsageError("CanonicalX::gamma: table has no kinetic model");
  const BoundaryPair b = boundary_values(*model(), mu);
  const cplx e = std::exp(cplx(V_principal(mu), theta_(mu) - shift()));
  const cplx ratio = e / b.lambda_plus;
  return norm_ == Normalization::OneOverZ ? ratio : mu * ratio;
}

double CanonicalX::gamma(double mu) const {
  const cplx g = gamma_complex(mu);
  if (std::abs(g.imag()) > kImagTolerance * std::abs(g.real())) {
    throw ConsistencyError("gamma(" + std::to_string(mu) + ") has imaginary part " +
                           std::to_string(g.imag()) + "; branch or winding mismatch");
  }
  return g.real();
}

double v1_constant(const CanonicalX& x) {
  if (x.model() && x.model()->is_maxwell()) {
    throw UnsupportedError("v1_constant: defined for the finite-interval (ConstMFP) case");
  }
  const ThetaTable& th = x.theta();
  const double s = gauss_integral([&](double t) { return th(t) - kPi; }, x.range(), x.quadrature());
  return -s / kPi;
}

// ---------------------------------------------------------------- GammaWeight

PanelGrid::Options gamma_grid_options(const KineticModel& model) {
  PanelGrid::Options o;
  o.nodes_per_panel = 16;
  o.smallest = 1e-10;
  o.grade_hi = !model.is_maxwell();
  o.max_panel = 0.25;
  return o;
}

GammaWeight::GammaWeight(std::shared_ptr<const CanonicalX> x)
    : GammaWeight(x, gamma_grid_options(x->model().value_or(KineticModel::const_mfp()))) {}

GammaWeight::GammaWeight(std::shared_ptr<const CanonicalX> x, const PanelGrid::Options& grid)
    : x_(std::move(x)),
      model_(x_->model() ? *x_->model() : throw UsageError("GammaWeight: canonical function has no model")),
      grid_(std::make_shared<const PanelGrid>(x_->range(), grid)) {
  values_.resize(grid_->size());
  const auto nodes = grid_->nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const cplx g = x_->gamma_complex(nodes[i]);
    if (std::abs(g.imag()) > kImagTolerance * std::abs(g.real())) {
      throw ConsistencyError("GammaWeight: gamma not real at mu = " + std::to_string(nodes[i]));
    }
    if (g.real() != 0.0) imag_ratio_ = std::max(imag_ratio_, std::abs(g.imag() / g.real()));
    values_[i] = g.real();
  }
}

double GammaWeight::operator()(double mu) const {
  if (mu > grid_->hi() && model_.is_maxwell()) return x_->gamma(mu);
  return grid_->interpolate(values_, mu);
}

double GammaWeight::moment(int k) const {
  const auto nodes = grid_->nodes();
  std::vector<double> f(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    f[i] = model_.weight_factor(nodes[i]) * std::pow(nodes[i], k) * values_[i];
  }
  return model_.weight_coefficient() * grid_->integrate(f);
}

cplx GammaWeight::representation(cplx z) const {
  QuadratureConfig cfg = x_->quadrature().with_tolerances(1e-12, 1e-11);
  auto f = [this](double t) { return rho(t); };
  return x_->at_infinity() + model_.weight_coefficient() * cauchy_integral(f, range(), z, cfg);
}

double identity_residual(const GammaWeight& g, std::span<const cplx> z) {
  double worst = 0.0;
  for (const cplx& p : z) {
    worst = std::max(worst, std::abs(g.canonical().X(p) - g.representation(p)));
  }
  return worst;
}

double validate_identity(const GammaWeight& g, std::span<const cplx> z) {
  const double r = identity_residual(g, z);
  if (!(r <= kRejectResidual)) {
    throw ConstructionError("canonical function rejected: integral representation residual " +
                            std::to_string(r) + " exceeds 1e-4 under normalization " +
                            to_string(g.canonical().normalization()));
  }
  return r;
}

std::vector<cplx> identity_probe_points(const KineticModel& model) {
  if (model.is_maxwell()) return {{1.0, 1.0}, {-2.0, 0.0}, {0.0, 3.0}, {0.5, -0.5}, {4.0, 0.25}};
  return {{2.0, 0.0}, {-1.5, 0.0}, {0.5, 0.5}, {0.3, -0.1}, {1.2, 0.05}};
}

}  // namespace caseortho
