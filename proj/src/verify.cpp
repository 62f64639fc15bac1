#include "caseortho/verify.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <random>

namespace caseortho {

std::string to_string(Suite s) {
  switch (s) {
    case Suite::Theorems: return "theorems";
    case Suite::Canonical: return "canonical";
    case Suite::Closure: return "closure";
    case Suite::All: return "all";
  }
  return "all";
}

Suite parse_suite(const std::string& name) {
  for (Suite s : {Suite::Theorems, Suite::Canonical, Suite::Closure, Suite::All}) {
    if (to_string(s) == name) return s;
  }
  throw UsageError("unknown suite '" + name + "' (theorems, canonical, closure, all)");
}

bool VerifyReport::pass() const {
  for (const Check& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::vector<KineticModel> VerifyOptions::default_models() {
  return {KineticModel::const_mfp(), KineticModel::maxwell(0.3), KineticModel::maxwell(0.5),
          KineticModel::maxwell(0.9)};
}

namespace {

constexpr double kV1Reference = 0.581946;

std::string label(const KineticModel& m) {
  if (!m.is_maxwell()) return "cmfp";
  char buf[48];
  std::snprintf(buf, sizeof buf, "maxwell c=%g", m.c());
  return buf;
}

struct Recorder {
  std::vector<Check>& out;
  std::string model;

  void add(std::string name, std::string statement, std::string grid, double residual,
           double tol, bool expect_above = false) {
    Check c;
    c.name = std::move(name);
    c.statement = std::move(statement);
    c.model = model;
    c.grid = std::move(grid);
    c.max_residual = residual;
    c.tolerance = tol;
    c.expect_above = expect_above;
    c.pass = std::isfinite(residual) && (expect_above ? residual > tol : residual < tol);
    out.push_back(std::move(c));
  }
};

// Worst |f(eta)| over a list, with any library error counted as a failure.
template <class F>
double worst_over(const std::vector<double>& pts, F&& f) {
  double w = 0.0;
  for (double p : pts) {
    const double r = std::abs(f(p));
    if (!std::isfinite(r)) return kInf;
    w = std::max(w, r);
  }
  return w;
}

std::vector<double> uniform_interior(double lo, double hi, int n) {
  std::vector<double> v;
  for (int k = 1; k <= n; ++k) v.push_back(lo + (hi - lo) * k / (n + 1));
  return v;
}

std::vector<double> maxwell_eta_grid() {
  std::vector<double> v{0.2, 0.5, 1.0, 2.0};
  for (int k = 1; k <= 20; ++k) v.push_back(0.15 * k);
  return v;
}

struct Context {
  KineticModel model;
  std::shared_ptr<const EigenPairing> pairing;
};

void theorems(const Context& ctx, Recorder& r) {
  const EigenPairing& p = *ctx.pairing;
  const RealFn one = [](double) { return 1.0; };
  const RealFn ident = [](double t) { return t; };
  if (!ctx.model.is_maxwell()) {
    const double v1 = v1_constant(p.gamma().canonical());
    r.add("discrete_self_pairing", "(Phi_inf, Phi_inf) = -4/3", "spectrum (0,1)",
          p.pair_discrete(one) + 4.0 / 3.0, 1e-8);
    r.add("mu_discrete_pairing", "(mu, Phi_inf) = -(4/3) V1", "spectrum (0,1)",
          p.pair_discrete(ident) + 4.0 / 3.0 * v1, 1e-7);
    const auto grid = uniform_interior(0.0, 1.0, 20);
    r.add("mu_continuum_pairing", "(mu, Phi_eta) = eta", "eta = k/21, k = 1..20",
          worst_over(grid, [&](double e) { return p.pair_smooth(ident, e) - e; }), 1e-6);
    r.add("continuum_discrete_orthogonality", "(1, Phi_eta) = 0", "eta = k/21, k = 1..20",
          worst_over(grid, [&](double e) { return p.pair_smooth(one, e); }), 1e-6);
    r.add("gamma_moment_0", "(3/4) int (1-mu^2) gamma = -1", "spectrum (0,1)",
          p.gamma().moment(0) + 1.0, 1e-7);
    r.add("gamma_moment_1", "(3/4) int mu (1-mu^2) gamma = -V1", "spectrum (0,1)",
          p.gamma().moment(1) + v1, 1e-7);
    auto b = [](double t) { return t * (1.0 - t) * std::exp(t); };
    const std::vector<double> etas{0.15, 0.3, 0.5, 0.65, 0.8};
    r.add("smeared_normalization", "int b(eta') (Phi_eta, Phi_eta') = N(eta) b(eta)",
          "eta in {0.15,0.3,0.5,0.65,0.8}, b = t(1-t)e^t", worst_over(etas, [&](double e) {
            const double rhs = p.normalization(e) * b(e);
            return (p.smeared_normalization(b, e) - rhs) / rhs;
          }), 1e-3);
  } else {
    const auto grid = maxwell_eta_grid();
    r.add("unit_continuum_pairing", "(1, Phi_eta) = eta",
          "eta in {0.2,0.5,1,2} and 0.15k, k = 1..20",
          worst_over(grid, [&](double e) { return p.pair_smooth(one, e) - e; }), 1e-6);
    auto b = [](double t) { return t * std::exp(-t * t); };
    const std::vector<double> etas{0.3, 0.7, 1.0, 1.4, 1.8};
    r.add("smeared_normalization", "int b(eta') (Phi_eta, Phi_eta') = N(eta) b(eta)",
          "eta in {0.3,0.7,1,1.4,1.8}, b = t exp(-t^2)", worst_over(etas, [&](double e) {
            const double rhs = p.normalization(e) * b(e);
            return (p.smeared_normalization(b, e) - rhs) / rhs;
          }), 1e-3);
  }
  // N carries the sign of gamma.
  const Interval s = p.gamma().range();
  const double top = ctx.model.is_maxwell() ? 3.0 : s.hi;
  const auto grid = uniform_interior(s.lo, top, 20);
  r.add("normalization_sign", "sign N(eta) = sign gamma(eta)", "20 interior points",
        worst_over(grid, [&](double e) {
          return std::signbit(p.normalization(e)) == std::signbit(p.gamma()(e)) ? 0.0 : 1.0;
        }), 0.5);
}

void canonical(const Context& ctx, const VerifyOptions& opts, Recorder& r) {
  const GammaWeight& g = ctx.pairing->gamma();
  const CanonicalX& x = g.canonical();
  const auto pts = identity_probe_points(ctx.model);
  r.add("identity_residual", "X(z) = X(inf) + coef int factor gamma / (t - z)",
        "5 off-cut points", identity_residual(g, pts), 1e-6);
  r.add("gamma_realness", "Im gamma / Re gamma = 0", "gamma grid", g.max_imag_ratio(), 1e-8);

  const Interval s = g.range();
  const double top = ctx.model.is_maxwell() ? 3.0 : s.hi;
  const auto grid = uniform_interior(s.lo, top, 20);
  r.add("riemann_ratio", "X+/X- = lambda+/lambda-", "20 interior points",
        worst_over(grid, [&](double mu) {
          const BoundaryPair b = boundary_values(ctx.model, mu);
          return std::abs(x.X_plus(mu) / x.X_minus(mu) - b.lambda_plus / b.lambda_minus);
        }), 1e-8);

  const Normalization rejected = x.normalization() == Normalization::OneOverZ
                                     ? Normalization::UnitAtInfinity
                                     : Normalization::OneOverZ;
  const auto other = std::make_shared<const CanonicalX>(
      CanonicalX::build(ctx.model, opts.theta_grid, rejected));
  if (ctx.model.is_maxwell()) {
    const GammaWeight bad(other);
    r.add("rejected_normalization_residual", "identity fails for the rejected normalization",
          "5 off-cut points", identity_residual(bad, pts), 1e-1, true);
  } else {
    // On the finite cut the rejected choice is (z - 1) X(z), which satisfies
    // its own representation; its weight breaks the zeroth moment instead.
    const GammaWeight bad(other);
    r.add("rejected_normalization_moment", "moment identity fails for the rejected normalization",
          "spectrum (0,1)", bad.moment(0) + 1.0, 1e-1, true);
    const double v1 = v1_constant(x);
    r.add("slip_constant", "V1 = 0.581946", "theta grid " + std::to_string(opts.theta_grid),
          v1 - kV1Reference, 5e-6);
    const CanonicalX fine = CanonicalX::build(ctx.model, 2 * opts.theta_grid);
    r.add("slip_constant_grid_doubling", "V1 stable under theta grid doubling",
          "theta grid " + std::to_string(2 * opts.theta_grid), v1_constant(fine) - v1, 1e-7);
  }
}

void closure(const Context& ctx, const VerifyOptions& opts, Recorder& r) {
  const EigenPairing& p = *ctx.pairing;
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> ua(0.5, 1.5);
  std::uniform_real_distribution<double> ub(0.5, 2.0);
  const double a = ua(rng);
  const double b = ub(rng);
  char fa[64];
  char fb[64];
  std::snprintf(fa, sizeof fa, "exp(-%.6g mu)", a);
  std::snprintf(fb, sizeof fb, "1/(1 + %.6g mu^2)", b);
  const RealFn f1 = [a](double t) { return std::exp(-a * t); };
  const RealFn f2 = [b](double t) { return 1.0 / (1.0 + b * t * t); };

  const bool maxwell = ctx.model.is_maxwell();
  std::vector<double> grid;
  if (maxwell) {
    for (int k = 1; k <= 30; ++k) grid.push_back(0.1 * k);
  } else {
    for (int k = 2; k <= 18; ++k) grid.push_back(0.05 * k);
  }
  const std::string where = maxwell ? "mu = 0.1..3 step 0.1" : "mu = 0.1..0.9 step 0.05";
  for (const auto& [f, name] : {std::pair{f1, std::string(fa)}, std::pair{f2, std::string(fb)}}) {
    const ModalExpansion e = p.expand_modal(f);
    r.add("round_trip " + name, "f = reconstruct(expand(f))", where,
          worst_over(grid, [&](double mu) { return p.reconstruct(e, mu) - f(mu); }), 1e-3);
  }
  if (maxwell) {
    const ContinuumCoefficient c = p.expand([](double) { return 1.0; });
    r.add("round_trip 1", "1 = int a(eta) Phi_eta d eta", "mu in {0.2,0.7,1.5}",
          worst_over({0.2, 0.7, 1.5}, [&](double mu) { return p.reconstruct(c, mu) - 1.0; }),
          1e-4);
  }
}

}  // namespace

VerifyReport run_verify(Suite suite, const VerifyOptions& opts) {
  VerifyReport report;
  report.suite = to_string(suite);
  const std::vector<KineticModel> models =
      opts.models.empty() ? VerifyOptions::default_models() : opts.models;
  PairingOptions po;
  po.flip_pv_sign = opts.inject_sign_bug;
  for (const KineticModel& m : models) {
    Recorder r{report.checks, label(m)};
    Context ctx{m, nullptr};
    try {
      auto x = std::make_shared<const CanonicalX>(CanonicalX::build(m, opts.theta_grid));
      auto g = std::make_shared<const GammaWeight>(x);
      validate_identity(*g, identity_probe_points(m));
      ctx.pairing = std::make_shared<const EigenPairing>(g, po);
    } catch (const Error& e) {
      r.add("construction", std::string("canonical function built: ") + e.what(), "-", kInf, 0.0);
      continue;
    }
    auto guarded = [&](auto&& run, const char* what) {
      try {
        run();
      } catch (const Error& e) {
        r.add(what, std::string("suite aborted: ") + e.what(), "-", kInf, 0.0);
      }
    };
    if (suite == Suite::Theorems || suite == Suite::All) {
      guarded([&] { theorems(ctx, r); }, "theorems");
    }
    if (suite == Suite::Canonical || suite == Suite::All) {
      guarded([&] { canonical(ctx, opts, r); }, "canonical");
    }
    if (suite == Suite::Closure || suite == Suite::All) {
      guarded([&] { closure(ctx, opts, r); }, "closure");
    }
  }
  return report;
}

}  // namespace caseortho
