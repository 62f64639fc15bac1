#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "caseortho/dispersion.hpp"

using namespace caseortho;

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);
}  // namespace

TEST_CASE("dawson: reference values on both evaluation branches") {
  // 30-digit quadrature of exp(-x^2) int_0^x exp(t^2) dt.
  const double ref[][2] = {{0.25, 0.239839163562898212}, {0.5, 0.424436383502022296},
                           {1.0, 0.538079506912768419},  {2.0, 0.301340388923791966},
                           {3.0, 0.178271030610558287},  {5.0, 0.102134074424276835},
                           {7.0, 0.0721809746582362920}, {10.0, 0.0502538471875985280}};
  for (const auto& r : ref) {
    CHECK(dawson(r[0]) == doctest::Approx(r[1]).epsilon(1e-13));
    CHECK(dawson(-r[0]) == doctest::Approx(-r[1]).epsilon(1e-13));
  }
  CHECK(dawson(0.0) == 0.0);
  // Continuity across the series/asymptotic switch.
  CHECK(std::abs(dawson(7.0 - 1e-12) - dawson(7.0)) < 1e-13);
}

TEST_CASE("KineticModel: weights normalize") {
  const auto cm = KineticModel::const_mfp();
  CHECK(gauss_integral([&](double t) { return cm.weight(t); }, cm.velocity_range()) ==
        doctest::Approx(1.0).epsilon(1e-14));
  const auto mx = KineticModel::maxwell(1.0);
  CHECK(gauss_integral([&](double t) { return mx.weight(t); }, mx.velocity_range()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(KineticModel::maxwell(0.0), DomainError);
  CHECK_THROWS_AS(KineticModel::maxwell(1.5), DomainError);
  CHECK(cm.delta_normalizer(0.5) == doctest::Approx(1.0 / 0.75));
  CHECK(mx.delta_normalizer(1.0) == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("lambda0: values and branch") {
  CHECK(lambda0(0.0) == cplx(1.0));
  const cplx b = lambda0_plus(0.5);
  CHECK(b.real() == doctest::Approx(1.0 + 0.25 * std::log(1.0 / 3.0)).epsilon(1e-15));
  CHECK(b.real() == doctest::Approx(0.725347).epsilon(1e-6));
  CHECK(b.imag() == doctest::Approx(kPi / 4).epsilon(1e-15));
  // Real on the real axis beyond the cut.
  const cplx l2 = lambda0(2.0);
  CHECK(l2.real() == doctest::Approx(1.0 + std::log(1.0 / 3.0)).epsilon(1e-14));
  CHECK(l2.imag() == 0.0);
  CHECK_THROWS_AS(lambda0(0.3), CutError);
  CHECK_THROWS_AS(lambda0(-1.0), CutError);
  // Continuity across the series switch at |z| = 2.
  const cplx z(1.2, 1.6);
  const cplx zz = z * (1.0 + 1e-12);
  CHECK(std::abs(lambda0(z) - lambda0(zz)) < 1e-11);
}

TEST_CASE("lambda_cmfp: closed form matches the defining Cauchy integral") {
  CHECK(lambda_cmfp(0.0) == cplx(1.0));
  // 30-digit quadrature of (3/4) int t(1-t^2)/(t - z) dt.
  const cplx l3 = lambda_cmfp(3.0);
  CHECK(l3.real() == doctest::Approx(-0.0233507499209844305).epsilon(1e-13));
  CHECK(l3.imag() == 0.0);
  const cplx lz = lambda_cmfp({0.5, 0.5});
  CHECK(lz.real() == doctest::Approx(0.165887349166215007).epsilon(1e-13));
  CHECK(lz.imag() == doctest::Approx(0.243489909594385879).epsilon(1e-13));
  for (cplx z : {cplx(1.7, 0.0), cplx(-0.2, 0.9), cplx(5.0, -3.0)}) {
    const cplx q = 0.75 * cauchy_integral([](double t) { return t * (1 - t * t); }, {-1.0, 1.0}, z);
    CHECK(std::abs(lambda_cmfp(z) - q) < 1e-12);
  }
  // Boundary value tends to -1/2 at mu -> 1.
  CHECK(lambda_real(KineticModel::const_mfp(), 1.0 - 1e-12) == doctest::Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("lambda_maxwell: off-axis quadrature and symmetric cases") {
  CHECK(lambda_maxwell(0.0, 0.5) == cplx(1.0));
  // lambda(i) = 1 - c sqrt(pi) e erfc(1): real by symmetry of the Gaussian.
  const cplx li = lambda_maxwell({0.0, 1.0}, 0.5);
  CHECK(li.real() == doctest::Approx(0.621063921929343947).epsilon(1e-10));
  CHECK(std::abs(li.imag()) < 1e-12);
  const cplx l1 = lambda_maxwell({1.0, 1.0}, 0.5);
  CHECK(l1.real() == doctest::Approx(0.545398250501088845).epsilon(1e-10));
  CHECK(l1.imag() == doctest::Approx(0.0855432906498445706).epsilon(1e-9));
  CHECK_THROWS_AS(lambda_maxwell(1.0, 0.5), CutError);
}

TEST_CASE("lambda_maxwell: Dawson form agrees with PV quadrature of the defining integral") {
  for (double c : {0.3, 0.7, 1.0}) {
    const auto m = KineticModel::maxwell(c);
    for (double mu : {0.25, 0.5, 1.0, 2.0}) {
      const double pv = pv_integral([](double t) { return std::exp(-t * t); }, {-kInf, kInf}, mu);
      const double via_pv = 1.0 + mu * (c / kSqrtPi) * pv;
      CHECK(std::abs(lambda_real(m, mu) - via_pv) < 1e-9);
    }
  }
  // Single-integral form 1 - 2c mu^2 e^{-mu^2} int_0^1 e^{mu^2 t^2} dt at mu = 1, c = 1.
  const double single = 1.0 - 2.0 * std::exp(-1.0) *
                                  gauss_integral([](double t) { return std::exp(t * t); }, {0.0, 1.0});
  CHECK(lambda_real(KineticModel::maxwell(1.0), 1.0) == doctest::Approx(single).epsilon(1e-12));
}

TEST_CASE("boundary_values: conjugate pair and endpoint behavior") {
  const auto cm = KineticModel::const_mfp();
  const auto p = boundary_values(cm, 0.5);
  const double pv = 0.75 * pv_integral([](double t) { return t * (1 - t * t); }, {-1.0, 1.0}, 0.5);
  CHECK(p.lambda_plus.real() == doctest::Approx(pv).epsilon(1e-12));
  CHECK(p.lambda_plus.imag() == doctest::Approx(0.883573).epsilon(1e-6));
  CHECK(p.lambda_plus.imag() == doctest::Approx(0.75 * kPi * 0.5 * 0.75).epsilon(1e-15));
  for (double mu = 0.01; mu < 1.0; mu += 0.07) {
    const auto q = boundary_values(cm, mu);
    CHECK(std::abs(q.lambda_minus - std::conj(q.lambda_plus)) < 1e-12);
    CHECK(q.lambda_plus.imag() > 0.0);
  }
  const auto mx = boundary_values(KineticModel::maxwell(1.0), 1e-12);
  CHECK(std::abs(mx.lambda_plus - cplx(1.0)) < 1e-11);
  const auto near1 = boundary_values(cm, 1.0 - 1e-12);
  CHECK(std::abs(near1.lambda_plus - cplx(-0.5)) < 1e-9);
  CHECK_THROWS_AS(boundary_values(cm, 0.0), EndpointError);
  CHECK_THROWS_AS(boundary_values(cm, 1.0), EndpointError);
  CHECK_THROWS_AS(boundary_values(cm, 1.5), DomainError);
}

TEST_CASE("ThetaTable: ConstMFP limits, winding and branch continuity") {
  const auto t = ThetaTable::build(KineticModel::const_mfp(), 200);
  CHECK(t.kappa() == 1);
  CHECK(t.endpoint_limits().first == 0.0);
  CHECK(t.endpoint_limits().second == doctest::Approx(kPi));
  CHECK(t.theta().front() < 1e-3);
  CHECK(t.theta().back() > kPi - 1e-3);
  CHECK(t.max_jump() < kPi / 2);
  CHECK(t(0.0) == 0.0);
  CHECK(t(1.0) == doctest::Approx(kPi));
  for (double th : t.theta()) {
    CHECK(th > 0.0);
    CHECK(th < kPi);
  }
  // theta - pi -> 0 linearly at mu -> 1.
  CHECK(std::abs(t(1.0 - 1e-4) - kPi) < 1e-3);
  // theta ~ pi mu w(mu) / lambda(0) near 0.
  const double mu = 1e-3;
  const double first_order = kPi * mu * KineticModel::const_mfp().weight(mu);
  CHECK(t(mu) == doctest::Approx(first_order).epsilon(0.05));
  CHECK_THROWS_AS(ThetaTable::build(KineticModel::const_mfp(), 10), DomainError);
}

TEST_CASE("ThetaTable: Maxwell winding follows c") {
  const auto t1 = ThetaTable::build(KineticModel::maxwell(1.0), 100);
  CHECK(t1.kappa() == 1);
  CHECK(t1.theta().back() == doctest::Approx(kPi).epsilon(1e-6));
  for (double c : {0.3, 0.5, 0.9}) {
    const auto t = ThetaTable::build(KineticModel::maxwell(c), 100);
    CHECK(t.kappa() == 0);
    CHECK(t.max_jump() < kPi / 2);
    for (double th : t.theta()) CHECK((th > 0.0 && th < kPi));
  }
  // For c > ~0.78 the real part changes sign, so theta exceeds pi/2 somewhere.
  const auto t9 = ThetaTable::build(KineticModel::maxwell(0.9), 200);
  double peak = 0.0;
  for (double th : t9.theta()) peak = std::max(peak, th);
  CHECK(peak > kPi / 2);
}

TEST_CASE("ThetaTable: sample-based table interpolates monotonically") {
  const auto synth = ThetaTable::synthetic({0.0, 1.0}, [](double m) { return kPi * m * m; });
  CHECK(synth.kappa() == 1);
  std::vector<double> g(synth.grid().begin(), synth.grid().end());
  std::vector<double> th(synth.theta().begin(), synth.theta().end());
  const auto raw = ThetaTable::from_samples(g, th, {0.0, kPi});
  for (double m = 0.01; m < 1.0; m += 0.03) CHECK(raw(m) == doctest::Approx(kPi * m * m).epsilon(1e-5));
  CHECK_THROWS_AS(raw(1.2), DomainError);
}
