#include "caseortho/quadrature.hpp"

#include <string>

namespace caseortho {

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
    throw DomainError("Interval: require lo < hi");
  }
}

double QuadratureConfig::cutoff_for(double abs_tol) {
  return std::sqrt(-std::log(abs_tol)) + 1.0;
}

QuadratureConfig QuadratureConfig::with_tolerances(double abs, double rel) const {
  QuadratureConfig out = *this;
  out.abs_tol = abs;
  out.rel_tol = rel;
  out.semiinfinite_cutoff = cutoff_for(abs);
  return out;
}

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw UsageError("QuadratureConfig: tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw UsageError("QuadratureConfig: max_subdivisions must be >= 1");
  }
  if (!(semiinfinite_cutoff > 0.0) || gaussian_tail_bound(semiinfinite_cutoff) > abs_tol) {
    throw UsageError("QuadratureConfig: semiinfinite_cutoff leaves a Gaussian tail above abs_tol");
  }
}

double gaussian_tail_bound(double cutoff) {
  return std::exp(-cutoff * cutoff) / (2.0 * cutoff);
}

Interval truncate(const Interval& iv, const QuadratureConfig& cfg) {
  const double t = cfg.semiinfinite_cutoff;
  double lo = iv.lo;
  double hi = iv.hi;
  if (!std::isfinite(lo)) lo = std::min(-t, hi - 1.0);
  if (!std::isfinite(hi)) hi = std::max(t, lo + 1.0);
  return {lo, hi};
}

namespace {

// Widens a truncated semi-infinite range so that `x` sits well inside it.
Interval truncate_around(const Interval& iv, double x, const QuadratureConfig& cfg) {
  Interval t = truncate(iv, cfg);
  if (!std::isfinite(iv.hi) && x >= t.hi - 0.5) t.hi = x + cfg.semiinfinite_cutoff;
  if (!std::isfinite(iv.lo) && x <= t.lo + 0.5) t.lo = x - cfg.semiinfinite_cutoff;
  return t;
}

double tail_error(const Interval& iv, const QuadratureConfig& cfg) {
  double err = 0.0;
  if (!std::isfinite(iv.lo)) err += gaussian_tail_bound(cfg.semiinfinite_cutoff);
  if (!std::isfinite(iv.hi)) err += gaussian_tail_bound(cfg.semiinfinite_cutoff);
  return err;
}

}  // namespace

QuadEstimate<double> gauss_integral_estimate(const RealFn& f, const Interval& iv,
                                             const QuadratureConfig& cfg) {
  const Interval t = truncate(iv, cfg);
  QuadEstimate<double> r = integrate_range<double>(f, t.lo, t.hi, cfg);
  r.error += tail_error(iv, cfg);
  return r;
}

double gauss_integral(const RealFn& f, const Interval& iv, const QuadratureConfig& cfg) {
  return gauss_integral_estimate(f, iv, cfg).value;
}

double pv_integral(const RealFn& f, const Interval& iv, double pole, const QuadratureConfig& cfg) {
  if (!iv.interior(pole)) {
    throw DomainError("pv_integral: pole " + std::to_string(pole) +
                      " is not strictly inside the interval");
  }
  const Interval t = truncate_around(iv, pole, cfg);
  const double f0 = f(pole);
  auto subtracted = [&](double x) { return (f(x) - f0) / (x - pole); };
  const std::array<double, 3> bp{t.lo, pole, t.hi};
  const double smooth = integrate_pieces<double>(subtracted, bp, cfg).value;
  return smooth + f0 * std::log((t.hi - pole) / (pole - t.lo));
}

double singular_integral(const RealFn& f, const Interval& iv, double pole,
                         const QuadratureConfig& cfg) {
  if (iv.interior(pole)) return pv_integral(f, iv, pole, cfg);
  if (pole == iv.lo || pole == iv.hi) {
    throw DomainError("singular_integral: pole on an interval endpoint");
  }
  const Interval t = truncate(iv, cfg);
  auto g = [&](double x) { return f(x) / (x - pole); };
  return integrate_range<double>(g, t.lo, t.hi, cfg).value;
}

cplx cauchy_integral(const RealFn& f, const Interval& iv, cplx z, const QuadratureConfig& cfg) {
  const double x0 = z.real();
  if (z.imag() == 0.0 && iv.contains(x0)) {
    throw CutError("cauchy_integral: z lies on the integration cut");
  }
  const Interval t = truncate_around(iv, x0, cfg);
  const bool above_cut = x0 > t.lo && x0 < t.hi;
  const double near_cut = 1e-4 * (t.hi - t.lo);

  if (above_cut && std::abs(z.imag()) < near_cut) {
    const double f0 = f(x0);
    auto subtracted = [&](double x) { return cplx(f(x) - f0) / (x - z); };
    const std::array<double, 3> bp{t.lo, x0, t.hi};
    const cplx smooth = integrate_pieces<cplx>(subtracted, bp, cfg).value;
    return smooth + f0 * (std::log(cplx(t.hi) - z) - std::log(cplx(t.lo) - z));
  }

  auto direct = [&](double x) { return cplx(f(x)) / (x - z); };
  if (above_cut) {
    const std::array<double, 3> bp{t.lo, x0, t.hi};
    return integrate_pieces<cplx>(direct, bp, cfg).value;
  }
  const std::array<double, 2> bp{t.lo, t.hi};
  return integrate_pieces<cplx>(direct, bp, cfg).value;
}

}  // namespace caseortho
