#pragma once

/**
 * Singular-integral engine.
 *
 * Adaptive Gauss-Kronrod (10/21) integration with global error control,
 * principal-value integrals by pole subtraction, and Cauchy integrals off a
 * cut. Semi-infinite ranges are only supported for Gaussian-decaying
 * integrands; they are truncated at QuadratureConfig::semiinfinite_cutoff.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "caseortho/errors.hpp"

namespace caseortho {

using cplx = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Integration range; either end may be infinite (Gaussian-decaying
/// integrands only).
struct Interval {
  double lo;
  double hi;

  Interval(double lo_, double hi_);

  bool finite() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }
  bool interior(double x) const noexcept { return x > lo && x < hi; }
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 4000;
  /// Truncation point T for semi-infinite ranges, exp(-T^2) well below abs_tol.
  double semiinfinite_cutoff = cutoff_for(1e-10);

  /// sqrt(-ln abs_tol) plus one unit of margin for polynomial prefactors.
  static double cutoff_for(double abs_tol);

  /// Same config with new tolerances and a matching cutoff.
  QuadratureConfig with_tolerances(double abs, double rel) const;

  void validate() const;
};

/// Upper bound of the discarded tail  int_T^inf exp(-t^2) dt.
double gaussian_tail_bound(double cutoff);

/// Finite range actually integrated for `iv` under `cfg`.
Interval truncate(const Interval& iv, const QuadratureConfig& cfg);

template <class T>
struct QuadEstimate {
  T value{};
  double error = 0.0;
  int evaluations = 0;
};

namespace detail {

// QUADPACK qk21 abscissae and weights.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208292048780, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
struct Segment {
  double a;
  double b;
  T value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class T, class F>
Segment<T> gk21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T resk = fc * kWgk[10];
  T resg{};
  double resabs = std::abs(fc) * kWgk[10];
  std::array<T, 10> f1{};
  std::array<T, 10> f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    resk += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const T mean = resk * 0.5;
  double resasc = kWgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const T value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return {a, b, value, err};
}

}  // namespace detail

/**
 * Globally adaptive Gauss-Kronrod integration over consecutive finite
 * pieces [bp[0],bp[1]], [bp[1],bp[2]], ...; the interval with the largest
 * error estimate is bisected until the summed estimate meets
 * max(abs_tol, rel_tol*|I|). Throws AccuracyError after max_subdivisions.
 */
template <class T, class F>
QuadEstimate<T> integrate_pieces(F&& f, std::span<const double> bp, const QuadratureConfig& cfg) {
  using Seg = detail::Segment<T>;
  std::priority_queue<Seg> heap;
  T total{};
  double total_err = 0.0;
  int evals = 0;
  T frozen{};
  double frozen_err = 0.0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    if (!(bp[i] < bp[i + 1])) continue;
    Seg s = detail::gk21<T>(f, bp[i], bp[i + 1]);
    evals += 21;
    total += s.value;
    total_err += s.error;
    heap.push(s);
  }
  int splits = 0;
  auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };
  while (total_err > target() && !heap.empty()) {
    if (splits >= cfg.max_subdivisions) {
      throw AccuracyError("adaptive quadrature: subdivision limit reached",
                          std::abs(total), total_err);
    }
    Seg worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const double width = worst.b - worst.a;
    if (width <= 64.0 * std::numeric_limits<double>::epsilon() *
                     std::max(1.0, std::max(std::abs(worst.a), std::abs(worst.b)))) {
      // Cannot resolve further in double precision.
      frozen += worst.value;
      frozen_err += worst.error;
      continue;
    }
    Seg left = detail::gk21<T>(f, worst.a, mid);
    Seg right = detail::gk21<T>(f, mid, worst.b);
    evals += 42;
    ++splits;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Recompute from the pieces to shed accumulated update roundoff.
  T sum = frozen;
  double err = frozen_err;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  if (!std::isfinite(std::abs(sum))) {
    throw AccuracyError("adaptive quadrature: non-finite integrand", std::abs(sum), err);
  }
  if (err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(sum)) * 100.0) {
    throw AccuracyError("adaptive quadrature: unresolved singularity", std::abs(sum), err);
  }
  return {sum, err, evals};
}

template <class T, class F>
QuadEstimate<T> integrate_range(F&& f, double a, double b, const QuadratureConfig& cfg) {
  const std::array<double, 2> bp{a, b};
  return integrate_pieces<T>(std::forward<F>(f), bp, cfg);
}

using RealFn = std::function<double(double)>;

/// Plain adaptive integral of a nonsingular integrand.
double gauss_integral(const RealFn& f, const Interval& iv, const QuadratureConfig& cfg = {});

/// Same, with the error estimate (including the Gaussian tail bound).
QuadEstimate<double> gauss_integral_estimate(const RealFn& f, const Interval& iv,
                                             const QuadratureConfig& cfg = {});

/// PV int f(t)/(t - pole) dt by pole subtraction. The pole must lie strictly
/// inside the (truncated) interval.
double pv_integral(const RealFn& f, const Interval& iv, double pole,
                   const QuadratureConfig& cfg = {});

/// PV integral when the pole is interior, ordinary integral when it lies
/// outside the (truncated) interval; a pole on an endpoint is a DomainError.
double singular_integral(const RealFn& f, const Interval& iv, double pole,
                         const QuadratureConfig& cfg = {});

/// int f(t)/(t - z) dt for z off the closed interval.
cplx cauchy_integral(const RealFn& f, const Interval& iv, cplx z,
                     const QuadratureConfig& cfg = {});

}  // namespace caseortho
