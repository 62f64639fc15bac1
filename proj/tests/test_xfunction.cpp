#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>
#include <numbers>

#include "caseortho/xfunction.hpp"

using namespace caseortho;

namespace {
constexpr double kPi = std::numbers::pi;
// 30-digit reference: -(1/pi) int_0^1 (theta - pi) dmu for the ConstMFP model.
constexpr double kV1 = 0.581945761112707;

std::shared_ptr<const CanonicalX> cmfp_x() {
  static auto x = std::make_shared<const CanonicalX>(CanonicalX::build(KineticModel::const_mfp()));
  return x;
}

const GammaWeight& cmfp_gamma() {
  static const GammaWeight g(cmfp_x());
  return g;
}
}  // namespace

TEST_CASE("normalization follows the far-end limit of theta") {
  CHECK(cmfp_x()->normalization() == Normalization::OneOverZ);
  CHECK(CanonicalX::build(KineticModel::maxwell(1.0)).normalization() == Normalization::OneOverZ);
  CHECK(CanonicalX::build(KineticModel::maxwell(0.5)).normalization() ==
        Normalization::UnitAtInfinity);
}

TEST_CASE("V1 constant") {
  const double v1 = v1_constant(*cmfp_x());
  CHECK(std::abs(v1 - 0.581946) < 5e-6);
  CHECK(v1 == doctest::Approx(kV1).epsilon(1e-11));
  // Grid doubling of the theta table does not move V1.
  const CanonicalX fine = CanonicalX::build(KineticModel::const_mfp(), 512);
  CHECK(std::abs(v1_constant(fine) - v1) < 1e-7);
  CHECK_THROWS_AS(v1_constant(CanonicalX::build(KineticModel::maxwell(0.5))), UnsupportedError);
}

TEST_CASE("synthetic phases: theta = pi gives V = 0 and X = 1/z; theta = 0 gives V1 = 1") {
  const auto pi_table = ThetaTable::synthetic({0.0, 1.0}, [](double) { return kPi; });
  const CanonicalX x(pi_table, CanonicalX::normalization_for(pi_table));
  CHECK(x.normalization() == Normalization::OneOverZ);
  CHECK(std::abs(x.V({2.0, 1.0})) < 1e-15);
  CHECK(std::abs(x.X({2.0, 1.0}) - 1.0 / cplx(2.0, 1.0)) < 1e-15);
  CHECK(std::abs(v1_constant(x)) < 1e-15);
  const auto zero_table = ThetaTable::synthetic({0.0, 1.0}, [](double) { return 0.0; });
  const CanonicalX y(zero_table, Normalization::OneOverZ);
  CHECK(v1_constant(y) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("X at infinity: z X(z) = 1 + V1/z + O(1/z^2)") {
  const auto& x = *cmfp_x();
  const cplx z(1e3, 0.0);
  const cplx zx = z * x.X(z);
  CHECK(std::abs(zx - 1.0) < 1e-2 * kV1);
  // Series coefficient agrees with the direct quadrature.
  const cplx z2(0.0, 1e3);
  const cplx coef = (z2 * x.X(z2) - 1.0) * z2;
  CHECK(std::abs(coef - kV1) < 2e-3);
  // V(z) -> +V1/z.
  CHECK(std::abs(x.V(z) * z - kV1) < 2e-3);

  const CanonicalX m = CanonicalX::build(KineticModel::maxwell(0.5));
  CHECK(std::abs(m.X({1e3, 1.0}) - 1.0) < 1e-3);
}

TEST_CASE("X at z = 2 agrees with a doubled theta grid and with the integral representation") {
  const cplx a = cmfp_x()->X(2.0);
  const CanonicalX fine = CanonicalX::build(KineticModel::const_mfp(), 512);
  CHECK(std::abs(a - fine.X(2.0)) < 1e-10);
  CHECK(std::abs(a.imag()) < 1e-14);
  CHECK(std::abs(a - cmfp_gamma().representation(2.0)) < 1e-6);
}

TEST_CASE("boundary values: Riemann ratio and phase relation") {
  const auto& x = *cmfp_x();
  const KineticModel m = KineticModel::const_mfp();
  for (int k = 1; k <= 20; ++k) {
    const double mu = k / 21.0;
    const cplx xp = x.X_plus(mu);
    const cplx xm = x.X_minus(mu);
    const BoundaryPair b = boundary_values(m, mu);
    CHECK(std::abs(xp / xm - b.lambda_plus / b.lambda_minus) < 1e-8);
    CHECK(std::abs(xp) > 0.0);
    // arg X^+ - arg lambda^+ = -pi
    const double d = std::arg(xp / b.lambda_plus);
    CHECK(std::abs(std::abs(d) - kPi) < 1e-12);
  }
  CHECK_THROWS_AS(x.X_plus(0.0), EndpointError);
  CHECK_THROWS_AS(x.X_plus(1.0), EndpointError);
  CHECK_THROWS_AS(x.X(0.5), CutError);
}

TEST_CASE("boundary values agree with the limit of X from above the cut") {
  const auto& x = *cmfp_x();
  for (double mu : {0.2, 0.6}) {
    const cplx near = x.X({mu, 1e-9});
    CHECK(std::abs(near - x.X_plus(mu)) < 1e-6 * std::abs(x.X_plus(mu)));
  }
}

TEST_CASE("gamma: reference samples, sign and realness (ConstMFP)") {
  // Independent 20-digit evaluation of -exp(V_p(mu)) / |lambda^+(mu)|.
  const double ref[][2] = {{0.01, -0.0233973}, {0.1, -0.296377}, {0.5, -2.587849},
                           {0.9, -6.522015},   {0.99, -7.629876}};
  for (const auto& r : ref) {
    CHECK(cmfp_x()->gamma(r[0]) == doctest::Approx(r[1]).epsilon(2e-6));
    CHECK(cmfp_gamma()(r[0]) == doctest::Approx(r[1]).epsilon(2e-6));
  }
  CHECK(cmfp_gamma().max_imag_ratio() < 1e-8);
  for (double g : cmfp_gamma().values()) CHECK(g < 0.0);
}

TEST_CASE("moment identities (ConstMFP)") {
  const auto& g = cmfp_gamma();
  CHECK(std::abs(g.moment(0) + 1.0) < 1e-7);
  CHECK(std::abs(g.moment(1) + kV1) < 1e-7);
}

TEST_CASE("integral representation selects the normalization") {
  const auto pts = identity_probe_points(KineticModel::const_mfp());
  CHECK(identity_residual(cmfp_gamma(), pts) < 1e-6);
  CHECK_NOTHROW(validate_identity(cmfp_gamma(), pts));

  // On a finite cut the shift-0 choice is (z - 1) X(z): another solution of
  // the Riemann problem with its own representation, so the identity cannot
  // reject it. Its weight breaks the moment identity instead.
  auto other = std::make_shared<const CanonicalX>(
      CanonicalX::build(KineticModel::const_mfp(), 256, Normalization::UnitAtInfinity));
  for (cplx z : pts) CHECK(std::abs(other->X(z) - (z - 1.0) * cmfp_x()->X(z)) < 1e-12);
  const GammaWeight gw(other);
  CHECK(identity_residual(gw, pts) < 1e-6);
  CHECK(std::abs(gw.moment(0) + 1.0) > 1e-1);

  for (double c : {0.3, 0.5, 0.9}) {
    const auto m = KineticModel::maxwell(c);
    const auto mp = identity_probe_points(m);
    const GammaWeight g(std::make_shared<const CanonicalX>(CanonicalX::build(m)));
    CHECK(identity_residual(g, mp) < 1e-6);
    for (double v : g.values()) CHECK(v > 0.0);
    const GammaWeight bad(
        std::make_shared<const CanonicalX>(CanonicalX::build(m, 256, Normalization::OneOverZ)));
    CHECK(identity_residual(bad, mp) > 1e-1);
    CHECK_THROWS_AS(validate_identity(bad, mp), ConstructionError);
  }
}
