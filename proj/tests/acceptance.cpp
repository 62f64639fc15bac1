// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "caseortho/oracle.hpp"

using namespace caseortho;

namespace {

// Pinned tolerances.
constexpr double kV1Published = 0.581946;
constexpr double kV1Tol = 5e-6;
constexpr double kV1Seconds = 5.0;
constexpr double kMomentTol = 1e-7;
constexpr double kDiscreteSelfTol = 1e-8;
constexpr double kDiscreteMuTol = 1e-7;
constexpr double kContinuumTol = 1e-6;
constexpr double kIdentityTol = 1e-6;
constexpr double kRejectedMin = 1e-1;
constexpr double kSmearedTol = 1e-3;
constexpr double kClosureTol = 1e-3;
constexpr double kRouteTol = 1e-6;
constexpr double kWallTol = 1e-4;
constexpr double kKramersSeconds = 30.0;
constexpr double kRealTol = 1e-8;
constexpr double kOracleRel = 1e-2;
constexpr double kSlopeLo = 1.7;
constexpr double kSlopeHi = 2.3;
constexpr double kOracleSeconds = 120.0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... v) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, v...);
  return buf;
}

// Runs a criterion; a library exception counts as a failure.
void criterion(int id, const char* title, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [pass, detail] = body();
    report(id, title, pass, detail);
  } catch (const std::exception& e) {
    report(id, title, false, std::string("exception: ") + e.what());
  }
}

std::vector<double> cmfp_eta_grid() {
  std::vector<double> v;
  for (int k = 1; k <= 20; ++k) v.push_back(k / 21.0);
  return v;
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(CASEORTHO_CLI_PATH) + " " + args;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "<popen failed>";
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  out += "\n<exit " + std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) + ">";
  return out;
}

const RealFn kOne = [](double) { return 1.0; };
const RealFn kIdent = [](double t) { return t; };

}  // namespace

int main() {
  std::shared_ptr<const CanonicalX> cx;
  std::shared_ptr<const GammaWeight> cg;
  std::shared_ptr<const EigenPairing> cp;
  double v1 = 0.0;

  criterion(1, "slip constant V1", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    cx = std::make_shared<const CanonicalX>(CanonicalX::build(KineticModel::const_mfp()));
    v1 = v1_constant(*cx);
    const double t = seconds_since(t0);
    const double err = std::abs(v1 - kV1Published);
    return std::pair{err < kV1Tol && t < kV1Seconds,
                     fmt("V1 = %.12f, |V1 - %.6f| = %.2e < %.0e; %.2f s < %.0f s", v1, kV1Published,
                         err, kV1Tol, t, kV1Seconds)};
  });

  criterion(2, "moment identities (cmfp)", [&] {
    cg = std::make_shared<const GammaWeight>(cx);
    const double e0 = std::abs(cg->moment(0) + 1.0);
    const double e1 = std::abs(cg->moment(1) + v1);
    return std::pair{e0 < kMomentTol && e1 < kMomentTol,
                     fmt("|m0 + 1| = %.2e, |m1 + V1| = %.2e, tol %.0e", e0, e1, kMomentTol)};
  });

  criterion(3, "discrete and mu pairings (cmfp)", [&] {
    validate_identity(*cg, identity_probe_points(KineticModel::const_mfp()));
    cp = std::make_shared<const EigenPairing>(cg);
    const double e_self = std::abs(cp->pair_discrete(kOne) + 4.0 / 3.0);
    const double e_mu = std::abs(cp->pair_discrete(kIdent) + 4.0 / 3.0 * v1);
    double e_cont = 0.0;
    for (double eta : cmfp_eta_grid()) e_cont = std::max(e_cont, std::abs(cp->pair_smooth(kIdent, eta) - eta));
    return std::pair{e_self < kDiscreteSelfTol && e_mu < kDiscreteMuTol && e_cont < kContinuumTol,
                     fmt("|(Phi_inf,Phi_inf) + 4/3| = %.2e < %.0e, |(mu,Phi_inf) + 4V1/3| = %.2e < "
                         "%.0e, max |(mu,Phi_eta) - eta| = %.2e < %.0e (20 eta)",
                         e_self, kDiscreteSelfTol, e_mu, kDiscreteMuTol, e_cont, kContinuumTol)};
  });

  std::vector<std::shared_ptr<const EigenPairing>> maxwell;
  criterion(4, "unit pairing equals eta (maxwell)", [&] {
    double worst = 0.0;
    for (double c : {0.3, 0.5, 0.9}) {
      maxwell.push_back(std::make_shared<const EigenPairing>(EigenPairing::build(KineticModel::maxwell(c))));
      for (double eta : {0.2, 0.5, 1.0, 2.0}) {
        worst = std::max(worst, std::abs(maxwell.back()->pair_smooth(kOne, eta) - eta));
      }
    }
    return std::pair{worst < kContinuumTol,
                     fmt("max |(1,Phi_eta) - eta| = %.2e < %.0e over 4 eta x 3 c", worst, kContinuumTol)};
  });

  criterion(5, "continuum orthogonal to the discrete mode (cmfp)", [&] {
    double worst = 0.0;
    for (double eta : cmfp_eta_grid()) worst = std::max(worst, std::abs(cp->pair_smooth(kOne, eta)));
    return std::pair{worst < kContinuumTol,
                     fmt("max |(1,Phi_eta)| = %.2e < %.0e (20 eta)", worst, kContinuumTol)};
  });

  criterion(6, "canonical-function identity", [&] {
    double worst = identity_residual(*cg, identity_probe_points(KineticModel::const_mfp()));
    double rejected_min = kInf;
    for (const auto& p : maxwell) {
      const KineticModel m = p->model();
      const auto pts = identity_probe_points(m);
      worst = std::max(worst, identity_residual(p->gamma(), pts));
      const GammaWeight bad(std::make_shared<const CanonicalX>(
          CanonicalX::build(m, 256, Normalization::OneOverZ)));
      rejected_min = std::min(rejected_min, identity_residual(bad, pts));
    }
    // On the finite cut the rejected choice is (z - 1) X, itself a solution
    // with a valid representation; there the moment identity is the control.
    const auto other = std::make_shared<const CanonicalX>(
        CanonicalX::build(KineticModel::const_mfp(), 256, Normalization::UnitAtInfinity));
    const GammaWeight cbad(other);
    const double c_rep = identity_residual(cbad, identity_probe_points(KineticModel::const_mfp()));
    const double c_moment = std::abs(cbad.moment(0) + 1.0);
    return std::pair{worst < kIdentityTol && rejected_min > kRejectedMin && c_moment > kRejectedMin,
                     fmt("max residual %.2e < %.0e (cmfp, maxwell 0.3/0.5/0.9, 5 points each); "
                         "rejected maxwell min residual %.3f > %.1f; cmfp rejected: residual %.1e "
                         "(also a valid solution), moment defect %.3f > %.1f",
                         worst, kIdentityTol, rejected_min, kRejectedMin, c_rep, c_moment,
                         kRejectedMin)};
  });

  criterion(7, "smeared delta normalization", [&] {
    double worst = 0.0;
    auto b = [](double t) { return t * (1.0 - t) * std::exp(t); };
    for (double eta : {0.15, 0.3, 0.5, 0.65, 0.8}) {
      const double rhs = cp->normalization(eta) * b(eta);
      worst = std::max(worst, std::abs(cp->smeared_normalization(b, eta) - rhs) / std::abs(rhs));
    }
    auto bm = [](double t) { return t * std::exp(-t * t); };
    for (double eta : {0.3, 0.7, 1.0, 1.4, 1.8}) {
      const double rhs = maxwell[1]->normalization(eta) * bm(eta);
      worst = std::max(worst, std::abs(maxwell[1]->smeared_normalization(bm, eta) - rhs) / std::abs(rhs));
    }
    return std::pair{worst < kSmearedTol,
                     fmt("max relative error %.2e < %.0e at 5 eta (cmfp) and 5 eta (maxwell 0.5)",
                         worst, kSmearedTol)};
  });

  criterion(8, "closure round trip", [&] {
    const RealFn f1 = [](double t) { return std::exp(-t); };
    const RealFn f2 = [](double t) { return 1.0 / (1.0 + t * t); };
    double worst_c = 0.0;
    double worst_m = 0.0;
    for (const RealFn& f : {f1, f2}) {
      const ModalExpansion e = cp->expand_modal(f);
      for (int k = 2; k <= 18; ++k) {
        const double mu = 0.05 * k;
        worst_c = std::max(worst_c, std::abs(cp->reconstruct(e, mu) - f(mu)));
      }
      const ModalExpansion m = maxwell[1]->expand_modal(f);
      for (int k = 1; k <= 30; ++k) {
        const double mu = 0.1 * k;
        worst_m = std::max(worst_m, std::abs(maxwell[1]->reconstruct(m, mu) - f(mu)));
      }
    }
    return std::pair{worst_c < kClosureTol && worst_m < kClosureTol,
                     fmt("sup residual exp(-mu), 1/(1+mu^2): cmfp %.2e, maxwell 0.5 %.2e < %.0e",
                         worst_c, worst_m, kClosureTol)};
  });

  criterion(9, "Kramers solution", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const HalfSpaceSolution s = solve_kramers({1.0}, std::make_shared<const EigenPairing>(
                                                         EigenPairing::build(KineticModel::const_mfp())));
    const ResidualStats r = s.boundary_residuals(0.05, 0.95, 91);
    const double t = seconds_since(t0);
    const bool exact = s.constant() == v1_constant(s.pairing().gamma().canonical()) * 1.0;
    return std::pair{exact && s.route_agreement() < kRouteTol && r.max_rel < kWallTol &&
                         t < kKramersSeconds,
                     fmt("U0 = %.12f (= V1 Gv: %s), route agreement %.2e < %.0e, wall residual "
                         "%.2e < %.0e on [0.05,0.95]; %.2f s < %.0f s",
                         s.constant(), exact ? "yes" : "no", s.route_agreement(), kRouteTol,
                         r.max_rel, kWallTol, t, kKramersSeconds)};
  });

  criterion(10, "diffusion solution (c = 0.5)", [&] {
    const HalfSpaceSolution s = solve_diffusion({0.5, 1.0}, maxwell[1]);
    const ResidualStats r = s.boundary_residuals(0.1, 3.0, 59);
    return std::pair{r.max_rel < kWallTol && s.imag_ratio() < kRealTol,
                     fmt("relative wall residual %.2e < %.0e on [0.1,3]; |Im a|/|Re a| = %.2e < %.0e",
                         r.max_rel, kWallTol, s.imag_ratio(), kRealTol)};
  });

  criterion(11, "discrete-ordinates cross-check", [&] {
    const ProblemSpec p = ProblemSpec::of(KramersProblem{1.0});
    const auto t0 = std::chrono::steady_clock::now();
    const OracleSolution o = solve_transport(p);
    const double t_solve = seconds_since(t0);
    const Comparison cmp = compare(solve_kramers({1.0}, cp), o);
    const double rel = std::abs(cmp.numeric_constant - v1) / v1;
    OracleConfig base;
    base.cells = 1000;
    const auto t1 = std::chrono::steady_clock::now();
    const ConvergenceStudy st = convergence_study(p, base, 3);
    const double t_study = seconds_since(t1);
    const double total = t_solve + t_study;
    return std::pair{cmp.diagnosis.empty() && rel < kOracleRel && cmp.pass && st.slope >= kSlopeLo &&
                         st.slope <= kSlopeHi && total < kOracleSeconds,
                     fmt("U0 = %.10f +- %.1e, |U0/V1 - 1| = %.2e < %.0e, profile %.1e; slope %.3f "
                         "in [%.1f,%.1f] (cells 1000/2000/4000); solve %.1f s + study %.1f s < %.0f s",
                         cmp.numeric_constant, cmp.numeric_uncertainty, rel, kOracleRel,
                         cmp.profile_sup_diff, st.slope, kSlopeLo, kSlopeHi, t_solve, t_study,
                         kOracleSeconds)};
  });

  criterion(12, "deterministic CLI output", [&] {
    const std::string cfg = "acceptance_run.cfg";
    {
      std::ofstream f(cfg);
      f << "c = 0.5\ngn = 1\n";
    }
    const std::vector<std::string> runs{
        "dispersion --model maxwell --c 0.7 --points 50",
        "xfunction --model cmfp --table gamma --points 40",
        "verify --suite all --seed 11",
        "solve kramers --gv 1 --format csv --table h --points 8",
        "--config " + cfg + " solve diffusion --oracle --cells 400 --ordinates 32",
    };
    int same = 0;
    for (const std::string& r : runs) {
      if (run_cli(r) == run_cli(r)) ++same;
    }
    std::remove(cfg.c_str());
    return std::pair{same == static_cast<int>(runs.size()),
                     fmt("%d of %zu command pairs byte-identical", same, runs.size())};
  });

  std::printf("%s: %d of 12 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
