#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>

#include "caseortho/halfspace.hpp"

using namespace caseortho;

namespace {
constexpr double kV1 = 0.581945761112707;

std::shared_ptr<const EigenPairing> cmfp() {
  static auto p = std::make_shared<const EigenPairing>(EigenPairing::build(KineticModel::const_mfp()));
  return p;
}

std::shared_ptr<const EigenPairing> maxwell(double c) {
  static auto p3 = std::make_shared<const EigenPairing>(EigenPairing::build(KineticModel::maxwell(0.3)));
  static auto p5 = std::make_shared<const EigenPairing>(EigenPairing::build(KineticModel::maxwell(0.5)));
  return c == 0.3 ? p3 : p5;
}
}  // namespace

TEST_CASE("Kramers: slip constant and the ratio route") {
  const auto s = solve_kramers({1.0}, cmfp());
  CHECK(s.constant() == doctest::Approx(kV1).epsilon(1e-11));
  CHECK(std::abs(s.constant() - 0.581946) < 5e-6);
  // (1, mu)/(1, 1) Gv reproduces U0.
  const double ratio = cmfp()->pair_discrete([](double t) { return t; }) /
                       cmfp()->pair_discrete([](double) { return 1.0; });
  CHECK(ratio == doctest::Approx(s.constant()).epsilon(1e-9));
  CHECK(s.route_agreement() < kRouteTolerance);
  CHECK(s.imag_ratio() < 1e-8);
}

TEST_CASE("Kramers: wall condition and far field") {
  const auto s = solve_kramers({1.0}, cmfp());
  const ResidualStats r = s.boundary_residuals(0.05, 0.95, 19);
  CHECK(r.max_abs < 1e-4);
  CHECK(std::abs(s.evaluate_h(0.0, 0.5)) < 1e-4);
  CHECK(std::abs(s.evaluate_h(30.0, 0.3) - s.problem().asymptotic(30.0, 0.3)) < 1e-6);
  // Defect decays at least like exp(-x).
  double prev = kInf;
  for (double x : {5.0, 10.0, 20.0}) {
    const double d = std::abs(s.evaluate_h(x, -0.5) - s.problem().asymptotic(x, -0.5));
    CHECK(d * std::exp(x) <= prev * (1.0 + 1e-9));
    prev = d * std::exp(x);
  }
  CHECK_THROWS_AS(s.evaluate_h(-1.0, 0.5), DomainError);
  CHECK_THROWS_AS(s.evaluate_h(1.0, 1.5), DomainError);
}

TEST_CASE("Kramers: homogeneous problem and linearity") {
  const auto z = solve_kramers({0.0}, cmfp());
  CHECK(z.constant() == 0.0);
  CHECK(z.a().max_abs() == 0.0);
  CHECK(z.evaluate_h(0.7, -0.2) == 0.0);
  CHECK(z.moment(1.0) == 0.0);
  const auto s1 = solve_kramers({1.0}, cmfp());
  const auto s2 = solve_kramers({2.0}, cmfp());
  for (std::size_t i = 0; i < s1.a().values().size(); ++i) {
    CHECK(std::abs(s2.a().values()[i] - 2.0 * s1.a().values()[i]) <=
          1e-12 * std::abs(s1.a().values()[i]));
  }
}

TEST_CASE("Kramers: moment profile and Knudsen-layer defect") {
  const auto s = solve_kramers({1.0}, cmfp());
  const auto rows = s.moment_profile({0.0, 0.1, 1.0, 5.0, 30.0});
  CHECK(std::abs(rows[0].defect) > 1e-3);
  CHECK(std::abs(rows[4].defect) < 1e-6 * std::abs(rows[1].defect));
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::abs(rows[i].defect) < std::abs(rows[i - 1].defect));
  // The moment identity route agrees with direct velocity quadrature of h.
  CHECK(s.moment(0.5) == doctest::Approx(s.moment_direct(0.5)).epsilon(1e-7));
}

TEST_CASE("diffusion: wall condition, realness and sign of a") {
  const auto s = solve_diffusion({0.5, 1.0}, maxwell(0.5));
  CHECK(s.constant() == doctest::Approx(2.0));
  const ResidualStats r = s.boundary_residuals(0.1, 3.0, 30);
  CHECK(r.max_rel < 1e-4);
  CHECK(s.imag_ratio() < 1e-8);
  CHECK(s.route_agreement() < kRouteTolerance);

  const auto s3 = solve_diffusion({0.3, 1.0}, maxwell(0.3));
  int positive = 0;
  int negative = 0;
  for (std::size_t i = 0; i < s3.a().nodes().size(); ++i) {
    if (s3.a().nodes()[i] >= 3.0) break;
    (s3.a().values()[i] > 0.0 ? positive : negative)++;
  }
  CHECK((positive == 0 || negative == 0));

  const auto z = solve_diffusion({0.5, 0.0}, maxwell(0.5));
  CHECK(z.a().max_abs() == 0.0);
  CHECK(s.moment(0.3) == doctest::Approx(s.moment_direct(0.3)).epsilon(1e-7));
  CHECK(std::abs(s.evaluate_h(30.0, 0.4) - 2.0) < 1e-6 * 2.0);
}

TEST_CASE("diffusion: domain of c and model consistency") {
  CHECK_THROWS_AS(solve_diffusion({1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(solve_diffusion({0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(solve_diffusion({0.5, 1.0}, cmfp()), UsageError);
}
