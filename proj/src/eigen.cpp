#include "caseortho/eigen.hpp"

#include <algorithm>
#include <cmath>

namespace caseortho {

// ---------------------------------------------------------------- coefficient table

ContinuumCoefficient::ContinuumCoefficient(PanelGridPtr grid, std::vector<double> values,
                                           bool vanish_beyond)
    : grid_(std::move(grid)), values_(std::move(values)), vanish_beyond_(vanish_beyond) {
  if (values_.size() != grid_->size()) {
    throw UsageError("ContinuumCoefficient: value count does not match the grid");
  }
}

double ContinuumCoefficient::operator()(double eta) const {
  if (eta > grid_->hi() && vanish_beyond_) return 0.0;
  return grid_->interpolate(values_, eta);
}

ContinuumCoefficient ContinuumCoefficient::scaled(double k) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= k;
  return {grid_, std::move(v), vanish_beyond_};
}

double ContinuumCoefficient::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

// ---------------------------------------------------------------- pairing

EigenPairing::EigenPairing(std::shared_ptr<const GammaWeight> gamma, PairingOptions opts)
    : gamma_(std::move(gamma)), opts_(opts) {
  opts_.quad.validate();
}

EigenPairing EigenPairing::build(const KineticModel& model, PairingOptions opts) {
  auto x = std::make_shared<const CanonicalX>(CanonicalX::build(model));
  auto g = std::make_shared<const GammaWeight>(x);
  validate_identity(*g, identity_probe_points(model));
  return EigenPairing(g, opts);
}

void EigenPairing::check_eta(double eta) const {
  const Interval s = model().spectrum();
  if (eta == s.lo || eta == s.hi) throw EndpointError("eigen: eta at a spectrum endpoint");
  if (!s.interior(eta)) throw DomainError("eigen: eta outside the spectrum");
}

double EigenPairing::scalar_product(const RealFn& f, const RealFn& g) const {
  return gauss_integral([&](double t) { return rho(t) * f(t) * g(t); }, spectrum(), opts_.quad);
}

double EigenPairing::pair_smooth(const RealFn& f, double eta) const {
  check_eta(eta);
  const double coef = model().weight_coefficient();
  const double pv = singular_integral([&](double t) { return rho(t) * f(t); }, spectrum(), eta, opts_.quad);
  const double g = (*gamma_)(eta);
  const double sign = opts_.flip_pv_sign ? 1.0 : -1.0;
  return sign * coef * eta * pv + g * lambda_real(model(), eta) * f(eta);
}

double EigenPairing::pair_discrete(const RealFn& f) const {
  if (model().is_maxwell()) {
    throw UnsupportedError("pair_discrete: the Maxwell model has no discrete mode in this setting");
  }
  return gauss_integral([&](double t) { return rho(t) * f(t); }, spectrum(), opts_.quad);
}

double EigenPairing::normalization(double eta) const {
  check_eta(eta);
  const BoundaryPair b = boundary_values(model(), eta);
  return model().delta_normalizer(eta) * (*gamma_)(eta) * std::norm(b.lambda_plus);
}

ContinuumCoefficient EigenPairing::expand(const RealFn& f) const {
  const PanelGrid& grid = gamma_->grid();
  const auto nodes = grid.nodes();
  std::vector<double> a(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double n = normalization(nodes[i]);
    if (n == 0.0 || !std::isfinite(n)) {
      throw DegeneracyError("expand: N(eta) vanishes at eta = " + std::to_string(nodes[i]));
    }
    a[i] = pair_smooth(f, nodes[i]) / n;
  }
  return {gamma_->grid_ptr(), std::move(a), model().is_maxwell()};
}

ModalExpansion EigenPairing::expand_modal(const RealFn& f) const {
  if (model().is_maxwell()) return {0.0, expand(f)};
  const double one = pair_discrete([](double) { return 1.0; });
  const double a_inf = pair_discrete(f) / one;
  return {a_inf, expand([&](double t) { return f(t) - a_inf; })};
}

double EigenPairing::superpose(const RealFn& a, double mu, double x) const {
  if (x < 0.0) throw DomainError("superpose: x must be >= 0");
  const Interval s = spectrum();
  const double coef = model().weight_coefficient();
  auto damp = [x](double eta) { return x == 0.0 ? 1.0 : (eta > 0.0 ? std::exp(-x / eta) : 0.0); };
  auto f = [&](double eta) { return damp(eta) * a(eta) * eta; };
  double pv;
  if (mu == s.lo || mu == s.hi) {
    // eta/(eta - mu) is bounded at mu = 0; at the far end a(eta) vanishes.
    pv = gauss_integral([&](double eta) { return f(eta) / (eta - mu); }, s, opts_.quad);
  } else {
    pv = singular_integral(f, s, mu, opts_.quad);
  }
  double out = coef * pv;
  if (model().spectrum().interior(mu)) {
    out += damp(mu) * model().delta_normalizer(mu) * lambda_real(model(), mu) * a(mu);
  }
  return out;
}

double EigenPairing::reconstruct(const ContinuumCoefficient& a, double mu, double x) const {
  return superpose([&a](double eta) { return a(eta); }, mu, x);
}

double EigenPairing::reconstruct(const ModalExpansion& e, double mu) const {
  return e.discrete + reconstruct(e.continuum, mu);
}

double EigenPairing::smeared_normalization(const RealFn& b, double eta) const {
  return pair_smooth([&](double mu) { return superpose(b, mu); }, eta);
}

}  // namespace caseortho
