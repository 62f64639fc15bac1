#include "caseortho/halfspace.hpp"

#include <algorithm>
#include <cmath>

namespace caseortho {

std::string to_string(ProblemKind k) { return k == ProblemKind::Kramers ? "kramers" : "diffusion"; }

void DiffusionProblem::validate() const {
  if (!(c > 0.0 && c < 1.0)) throw DomainError("diffusion problem: c must lie in (0, 1)");
  if (!std::isfinite(gn)) throw DomainError("diffusion problem: Gn must be finite");
}

KineticModel ProblemSpec::model() const {
  return kind == ProblemKind::Kramers ? KineticModel::const_mfp() : KineticModel::maxwell(c);
}

double ProblemSpec::expected_constant() const {
  if (kind == ProblemKind::Kramers) {
    static const double v1 = v1_constant(CanonicalX::build(KineticModel::const_mfp()));
    return v1 * gradient;
  }
  return gradient / (1.0 - c);
}

double ProblemSpec::asymptotic(double x, double mu) const {
  if (kind == ProblemKind::Kramers) return 2.0 * expected_constant() + 2.0 * gradient * (x - mu);
  return expected_constant();
}

double ProblemSpec::asymptotic_moment(double x) const {
  if (kind == ProblemKind::Kramers) return 2.0 * expected_constant() + 2.0 * gradient * x;
  return c * expected_constant();
}

double ProblemSpec::scale() const {
  return kind == ProblemKind::Kramers ? std::abs(gradient) : std::abs(expected_constant());
}

// ---------------------------------------------------------------- solution

HalfSpaceSolution::HalfSpaceSolution(ProblemSpec spec, std::shared_ptr<const EigenPairing> pairing,
                                     ContinuumCoefficient a, double route_agreement,
                                     double imag_ratio)
    : spec_(spec),
      pairing_(std::move(pairing)),
      a_(std::move(a)),
      route_agreement_(route_agreement),
      imag_ratio_(imag_ratio) {}

double HalfSpaceSolution::evaluate_h(double x, double mu) const {
  if (x < 0.0) throw DomainError("evaluate_h: x must be >= 0");
  if (!pairing_->model().velocity_range().contains(mu)) {
    throw DomainError("evaluate_h: mu outside the velocity range");
  }
  if (spec_.gradient == 0.0) return 0.0;
  return spec_.asymptotic(x, mu) + sign() * pairing_->reconstruct(a_, mu, x);
}

double HalfSpaceSolution::boundary_residual(double mu) const {
  if (!(mu > 0.0)) throw DomainError("boundary_residual: the wall condition holds for mu > 0");
  return evaluate_h(0.0, mu);
}

ResidualStats HalfSpaceSolution::boundary_residuals(double lo, double hi, int points) const {
  ResidualStats s{lo, hi, points, 0.0, 0.0};
  for (int i = 0; i < points; ++i) {
    const double mu = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
    s.max_abs = std::max(s.max_abs, std::abs(boundary_residual(mu)));
  }
  const double scale = spec_.scale();
  s.max_rel = scale > 0.0 ? s.max_abs / scale : s.max_abs;
  return s;
}

double HalfSpaceSolution::moment(double x) const {
  if (x < 0.0) throw DomainError("moment: x must be >= 0");
  if (spec_.gradient == 0.0) return 0.0;
  const EigenPairing& p = *pairing_;
  auto damped = [&](double eta) { return x == 0.0 ? a_(eta) : std::exp(-x / eta) * a_(eta); };
  const double tail = gauss_integral(damped, p.spectrum(), p.options().quad);
  return spec_.asymptotic_moment(x) + sign() * p.model().weight_coefficient() * tail;
}

double HalfSpaceSolution::moment_direct(double x) const {
  const KineticModel& m = pairing_->model();
  const Interval v = m.velocity_range();
  QuadratureConfig cfg = pairing_->options().quad.with_tolerances(1e-9, 1e-8);
  auto f = [&](double mu) { return m.weight(mu) * evaluate_h(x, mu); };
  // h jumps at mu = 0 on the wall; split there.
  return gauss_integral(f, {v.lo, 0.0}, cfg) + gauss_integral(f, {0.0, v.hi}, cfg);
}

std::vector<MomentRow> HalfSpaceSolution::moment_profile(const std::vector<double>& x) const {
  std::vector<MomentRow> rows;
  rows.reserve(x.size());
  for (double xi : x) {
    const double m = moment(xi);
    const double mas = spec_.gradient == 0.0 ? 0.0 : spec_.asymptotic_moment(xi);
    rows.push_back({xi, m, mas, m - mas});
  }
  return rows;
}

// ---------------------------------------------------------------- solvers

namespace {

HalfSpaceSolution solve_with(const ProblemSpec& spec, std::shared_ptr<const EigenPairing> pairing) {
  const KineticModel model = spec.model();
  if (!pairing) {
    pairing = std::make_shared<const EigenPairing>(EigenPairing::build(model));
  } else if (!(pairing->model() == model)) {
    throw UsageError("solver: pairing was built for a different model");
  }
  // Kramers expands 2Gv mu, diffusion the constant B; both have (f, Phi_eta) = K eta.
  const double k = spec.kind == ProblemKind::Kramers ? 2.0 * spec.gradient : spec.expected_constant();
  const GammaWeight& g = pairing->gamma();
  const CanonicalX& x = g.canonical();
  const auto nodes = g.grid().nodes();
  std::vector<double> a(nodes.size());
  double agreement = 0.0;
  double imag = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double eta = nodes[i];
    const double by_norm = k * eta / pairing->normalization(eta);
    const BoundaryPair b = boundary_values(model, eta);
    const cplx closed = k / (model.delta_normalizer(eta) * x.X_plus(eta) * b.lambda_minus);
    if (closed.real() != 0.0) imag = std::max(imag, std::abs(closed.imag() / closed.real()));
    const double diff = std::abs(by_norm - closed.real());
    if (diff != 0.0) agreement = std::max(agreement, diff / std::abs(by_norm));
    a[i] = by_norm;
  }
  if (agreement > kRouteTolerance) {
    throw ConstructionError("solver: the two a(eta) forms disagree by " + std::to_string(agreement));
  }
  ContinuumCoefficient coeff(g.grid_ptr(), std::move(a), model.is_maxwell());
  return {spec, std::move(pairing), std::move(coeff), agreement, imag};
}

}  // namespace

HalfSpaceSolution solve_kramers(const KramersProblem& p, std::shared_ptr<const EigenPairing> pairing) {
  if (!std::isfinite(p.gv)) throw DomainError("Kramers problem: Gv must be finite");
  return solve_with(ProblemSpec::of(p), std::move(pairing));
}

HalfSpaceSolution solve_diffusion(const DiffusionProblem& p,
                                  std::shared_ptr<const EigenPairing> pairing) {
  p.validate();
  return solve_with(ProblemSpec::of(p), std::move(pairing));
}

HalfSpaceSolution solve(const ProblemSpec& p, std::shared_ptr<const EigenPairing> pairing) {
  if (p.kind == ProblemKind::Kramers) return solve_kramers({p.gradient}, std::move(pairing));
  return solve_diffusion({p.c, p.gradient}, std::move(pairing));
}

}  // namespace caseortho
