#include "caseortho/cli.hpp"

#include <fstream>
#include <memory>

#include "CLI11.hpp"
#include "caseortho/report.hpp"

namespace caseortho {

namespace {

struct RunConfig {
  std::string model = "cmfp";
  double c = 0.5;
  int points = 200;
  int grid = 256;
  double tol = 1e-10;
  std::string format;
  std::string out;
  std::uint64_t seed = 1;
  std::string config;

  // subcommand specific
  std::string table;
  std::string suite = "all";
  bool inject_sign_bug = false;
  std::string problem;
  double gv = 1.0;
  double gn = 1.0;
  bool oracle = false;
  bool study = false;
  int cells = OracleConfig{}.cells;
  int ordinates = OracleConfig{}.ordinates;
  double length = OracleConfig{}.domain_length;
};

// c in (0, 1]; diffusion further excludes 1.
KineticModel model_of(const RunConfig& rc) {
  if (rc.model == "cmfp") return KineticModel::const_mfp();
  if (!(rc.c > 0.0 && rc.c <= 1.0)) throw UsageError("--c must lie in (0, 1]");
  return KineticModel::maxwell(rc.c);
}

std::string format_or(const RunConfig& rc, const std::string& fallback) {
  return rc.format.empty() ? fallback : rc.format;
}

ProblemSpec problem_of(const RunConfig& rc) {
  if (rc.problem == "kramers") return ProblemSpec::of(KramersProblem{rc.gv});
  if (!(rc.c > 0.0 && rc.c < 1.0)) throw UsageError("diffusion needs --c in (0, 1)");
  return ProblemSpec::of(DiffusionProblem{rc.c, rc.gn});
}

OracleConfig oracle_config(const RunConfig& rc) {
  OracleConfig c;
  c.cells = rc.cells;
  c.ordinates = rc.ordinates;
  c.domain_length = rc.length;
  c.sweep_tol = rc.tol;
  c.validate();
  return c;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int k = 0; k < n; ++k) v.push_back(n == 1 ? lo : lo + (hi - lo) * k / (n - 1));
  return v;
}

// Midpoints of n equal cells of [lo, hi]; never hits 0 when n is even and
// the range is symmetric.
std::vector<double> midpoints(double lo, double hi, int n) {
  std::vector<double> v;
  for (int k = 0; k < n; ++k) v.push_back(lo + (hi - lo) * (k + 0.5) / n);
  return v;
}

struct Output {
  std::ostream& out;
  const RunConfig& rc;

  void write(const std::string& text) const {
    if (rc.out.empty()) {
      out << text;
      return;
    }
    std::ofstream f(rc.out, std::ios::binary);
    if (!f) throw UsageError("cannot open output file '" + rc.out + "'");
    f << text;
    if (!f) throw Error("failed writing '" + rc.out + "'");
  }
};

int cmd_dispersion(const RunConfig& rc, const Output& o) {
  const std::string fmt = format_or(rc, "csv");
  if (fmt != "csv") throw UsageError("dispersion writes csv only");
  const ThetaTable t = ThetaTable::build(model_of(rc), rc.grid);
  o.write(dispersion_table(t, rc.points).str());
  return kExitOk;
}

int cmd_xfunction(const RunConfig& rc, const Output& o) {
  const KineticModel m = model_of(rc);
  auto x = std::make_shared<const CanonicalX>(CanonicalX::build(m, rc.grid));
  const GammaWeight g(x);
  const std::string fmt = format_or(rc, "csv");
  if (fmt == "csv") {
    const std::string table = rc.table.empty() ? "gamma" : rc.table;
    if (table == "gamma") {
      o.write(gamma_table(g, rc.points).str());
    } else if (table == "x") {
      o.write(x_table(*x, rc.points).str());
    } else {
      throw UsageError("xfunction tables: gamma, x");
    }
    return kExitOk;
  }
  const auto pts = identity_probe_points(m);
  const double residual = identity_residual(g, pts);
  nlohmann::ordered_json j;
  j["model"] = m.name();
  if (m.is_maxwell()) j["c"] = m.c();
  j["normalization"] = to_string(x->normalization());
  j["winding"] = x->theta().kappa();
  j["theta_grid"] = rc.grid;
  if (!m.is_maxwell()) j["V1"] = v1_constant(*x);
  j["identity_residual"] = residual;
  j["identity_tolerance"] = 1e-6;
  j["gamma_moment_0"] = g.moment(0);
  j["gamma_moment_1"] = g.moment(1);
  j["gamma_imag_ratio"] = g.max_imag_ratio();
  const bool pass = residual < 1e-6;
  j["pass"] = pass;
  o.write(dump(j));
  return pass ? kExitOk : kExitFailure;
}

int cmd_verify(const RunConfig& rc, const Output& o, bool model_given, bool c_given) {
  if (format_or(rc, "json") != "json") throw UsageError("verify writes json only");
  VerifyOptions opts;
  opts.theta_grid = rc.grid;
  opts.seed = rc.seed;
  opts.inject_sign_bug = rc.inject_sign_bug;
  // --model cmfp, --c (one Maxwell model) or --model maxwell (c = 0.3, 0.5,
  // 0.9); with neither flag all four models run.
  if (model_given && rc.model == "cmfp") {
    opts.models = {KineticModel::const_mfp()};
  } else if (c_given) {
    opts.models = {KineticModel::maxwell(rc.c)};
  } else if (model_given) {
    opts.models = {KineticModel::maxwell(0.3), KineticModel::maxwell(0.5),
                   KineticModel::maxwell(0.9)};
  }
  const VerifyReport r = run_verify(parse_suite(rc.suite), opts);
  o.write(dump(to_json(r)));
  return r.pass() ? kExitOk : kExitFailure;
}

int cmd_solve(const RunConfig& rc, const Output& o) {
  const ProblemSpec p = problem_of(rc);
  const HalfSpaceSolution s = solve(p);
  const std::string fmt = format_or(rc, "json");
  if (fmt == "csv") {
    if (rc.oracle) throw UsageError("--oracle reports in json only");
    const std::string table = rc.table.empty() ? "a" : rc.table;
    const bool kramers = p.kind == ProblemKind::Kramers;
    if (table == "a") {
      o.write(coefficient_table(s).str());
    } else if (table == "h") {
      const double v = kramers ? 1.0 : 3.0;
      o.write(h_table(s, {0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0}, midpoints(-v, v, rc.points)).str());
    } else if (table == "profile") {
      o.write(profile_table(s.moment_profile(linspace(0.0, 10.0, rc.points))).str());
    } else {
      throw UsageError("solve tables: a, h, profile");
    }
    return kExitOk;
  }
  nlohmann::ordered_json j = solution_summary(s);
  int code = kExitOk;
  if (rc.oracle) {
    const OracleSolution numeric = solve_transport(p, oracle_config(rc));
    const Comparison cmp = compare(s, numeric);
    j["oracle"] = oracle_summary(numeric);
    j["comparison"] = to_json(cmp);
    if (!cmp.pass) code = kExitFailure;
  }
  o.write(dump(j));
  return code;
}

int cmd_oracle(const RunConfig& rc, const Output& o) {
  const ProblemSpec p = problem_of(rc);
  const OracleConfig cfg = oracle_config(rc);
  const std::string fmt = format_or(rc, "json");
  if (fmt == "csv") {
    if (rc.study) throw UsageError("--study reports in json only");
    o.write(oracle_field_table(solve_transport(p, cfg)).str());
    return kExitOk;
  }
  const OracleSolution s = solve_transport(p, cfg);
  nlohmann::ordered_json j = oracle_summary(s);
  int code = j.contains("diagnosis") ? kExitFailure : kExitOk;
  if (rc.study) j["convergence"] = to_json(convergence_study(p, cfg));
  o.write(dump(j));
  return code;
}

// key = value lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  int n = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(f, line)) {
    ++n;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(n) + ": expected key=value");
    }
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

// Config entries fill options the command line left unset.
void apply_config(CLI::App& app, CLI::App& sub, const std::string& path) {
  for (const auto& [key, value] : read_config(path)) {
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (!opt) opt = app.get_option_no_throw("--" + key);
    if (!opt || key == "config") throw UsageError("unknown config key '" + key + "'");
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

class CheckedC : public CLI::Validator {
 public:
  CheckedC() : CLI::Validator("(0,1]") {
    func_ = [](std::string& s) -> std::string {
      double v = 0.0;
      if (!CLI::detail::lexical_cast(s, v) || !(v > 0.0 && v <= 1.0)) {
        return "c must lie in (0, 1], got " + s;
      }
      return {};
    };
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Singular-eigenfunction solutions of two half-space kinetic problems", "caseortho"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", rc.config, "key=value file; command-line flags take precedence");

  const std::vector<std::string> formats{"csv", "json"};
  const std::vector<std::string> models{"maxwell", "cmfp"};
  auto common = [&](CLI::App* s) {
    s->add_option("--model", rc.model, "maxwell or cmfp")->check(CLI::IsMember(models));
    s->add_option("--c", rc.c, "collision ratio of the maxwell model")->check(CheckedC());
    s->add_option("--points", rc.points, "rows in tables")->check(CLI::Range(1, 1000000));
    s->add_option("--grid", rc.grid, "theta grid size")->check(CLI::Range(64, 65536));
    s->add_option("--format", rc.format, "csv or json")->check(CLI::IsMember(formats));
    s->add_option("--out", rc.out, "output file (default stdout)");
  };
  auto problem = [&](CLI::App* s) {
    s->add_option("problem", rc.problem, "kramers or diffusion")
        ->required()
        ->check(CLI::IsMember({"kramers", "diffusion"}));
    s->add_option("--gv", rc.gv, "velocity gradient (kramers)");
    s->add_option("--gn", rc.gn, "concentration gradient (diffusion)");
    s->add_option("--c", rc.c, "collision ratio (diffusion)")->check(CheckedC());
    s->add_option("--tol", rc.tol, "oracle sweep tolerance")->check(CLI::PositiveNumber);
    s->add_option("--cells", rc.cells, "oracle cells");
    s->add_option("--ordinates", rc.ordinates, "oracle ordinates per half-range");
    s->add_option("--length", rc.length, "oracle domain length");
    s->add_option("--points", rc.points, "rows in tables")->check(CLI::Range(1, 1000000));
    s->add_option("--format", rc.format, "csv or json")->check(CLI::IsMember(formats));
    s->add_option("--out", rc.out, "output file (default stdout)");
  };

  CLI::App* disp = app.add_subcommand("dispersion", "lambda^+ and theta on the spectrum (csv)");
  common(disp);

  CLI::App* xf = app.add_subcommand("xfunction", "gamma or X tables (csv), identity report (json)");
  common(xf);
  xf->add_option("--table", rc.table, "gamma or x")->check(CLI::IsMember({"gamma", "x"}));

  CLI::App* ver = app.add_subcommand("verify", "run invariant suites, json report");
  common(ver);
  ver->add_option("--suite", rc.suite, "theorems, canonical, closure or all")
      ->check(CLI::IsMember({"theorems", "canonical", "closure", "all"}));
  ver->add_option("--seed", rc.seed, "seed for the closure test functions");
  ver->add_flag("--inject-sign-bug", rc.inject_sign_bug)->group("");

  CLI::App* sol = app.add_subcommand("solve", "analytic half-space solution");
  problem(sol);
  sol->add_flag("--oracle", rc.oracle, "also run and compare the discrete-ordinates oracle");
  sol->add_option("--table", rc.table, "a, h or profile (csv)")
      ->check(CLI::IsMember({"a", "h", "profile"}));

  CLI::App* orc = app.add_subcommand("oracle", "discrete-ordinates solution");
  problem(orc);
  orc->add_flag("--study", rc.study, "add a three-level refinement study");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    CLI::App* sub = app.get_subcommands().front();
    if (!rc.config.empty()) apply_config(app, *sub, rc.config);
    const Output o{out, rc};
    if (sub == disp) return cmd_dispersion(rc, o);
    if (sub == xf) return cmd_xfunction(rc, o);
    if (sub == ver) {
      return cmd_verify(rc, o, ver->get_option("--model")->count() > 0,
                        ver->get_option("--c")->count() > 0);
    }
    if (sub == sol) return cmd_solve(rc, o);
    return cmd_oracle(rc, o);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace caseortho
