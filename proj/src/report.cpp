#include "caseortho/report.hpp"

#include <cstdio>
#include <sstream>

namespace caseortho {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvTable::write(std::ostream& os) const {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

std::string CsvTable::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

namespace {

void require_points(int points, int minimum) {
  if (points < minimum) {
    throw UsageError("table needs at least " + std::to_string(minimum) + " points");
  }
}

}  // namespace

CsvTable dispersion_table(const ThetaTable& theta, int points) {
  require_points(points, 2);
  const auto model = theta.model();
  if (!model) throw UsageError("dispersion_table: theta table has no model");
  CsvTable t{{"mu", "re_lambda_plus", "im_lambda_plus", "theta"}, {}};
  for (int k = 0; k < points; ++k) {
    const double mu = k == points - 1 ? theta.hi()
                                      : theta.lo() + (theta.hi() - theta.lo()) * k / (points - 1);
    t.rows.push_back({mu, lambda_real(*model, mu), lambda_imag(*model, mu), theta(mu)});
  }
  return t;
}

CsvTable gamma_table(const GammaWeight& g, int points) {
  require_points(points, 1);
  const Interval r = g.range();
  CsvTable t{{"mu", "theta", "gamma"}, {}};
  for (int k = 1; k <= points; ++k) {
    const double mu = r.lo + (r.hi - r.lo) * k / (points + 1);
    t.rows.push_back({mu, g.canonical().theta()(mu), g.direct(mu)});
  }
  return t;
}

CsvTable x_table(const CanonicalX& x, int points) {
  require_points(points, 2);
  const Interval r = x.range();
  CsvTable t{{"re_z", "im_z", "re_X", "im_X"}, {}};
  for (int k = 0; k < points; ++k) {
    const cplx z(r.lo + (r.hi - r.lo) * k / (points - 1), 0.5);
    const cplx v = x.X(z);
    t.rows.push_back({z.real(), z.imag(), v.real(), v.imag()});
  }
  return t;
}

CsvTable coefficient_table(const HalfSpaceSolution& s) {
  CsvTable t{{"eta", "a"}, {}};
  const auto nodes = s.a().nodes();
  const auto values = s.a().values();
  for (std::size_t i = 0; i < nodes.size(); ++i) t.rows.push_back({nodes[i], values[i]});
  return t;
}

CsvTable h_table(const HalfSpaceSolution& s, const std::vector<double>& xs,
                 const std::vector<double>& mus) {
  CsvTable t{{"x", "mu", "h"}, {}};
  for (double x : xs) {
    for (double mu : mus) t.rows.push_back({x, mu, s.evaluate_h(x, mu)});
  }
  return t;
}

CsvTable profile_table(const std::vector<MomentRow>& rows) {
  CsvTable t{{"x", "m", "m_as", "defect"}, {}};
  for (const MomentRow& r : rows) t.rows.push_back({r.x, r.m, r.m_as, r.defect});
  return t;
}

CsvTable oracle_field_table(const OracleSolution& s) {
  CsvTable t{{"x", "mu", "h"}, {}};
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    for (std::size_t k = 0; k < s.mu.size(); ++k) t.rows.push_back({s.x[i], s.mu[k], s.h_at(i, k)});
  }
  return t;
}

using json = nlohmann::ordered_json;

json to_json(const Check& c) {
  return json{{"name", c.name},
              {"statement", c.statement},
              {"model", c.model},
              {"grid", c.grid},
              {"max_residual", std::abs(c.max_residual)},
              {"tolerance", c.tolerance},
              {"bound", c.expect_above ? "above" : "below"},
              {"pass", c.pass}};
}

json to_json(const VerifyReport& r) {
  json checks = json::array();
  int failed = 0;
  for (const Check& c : r.checks) {
    checks.push_back(to_json(c));
    if (!c.pass) ++failed;
  }
  return json{{"suite", r.suite},
              {"pass", r.pass()},
              {"checks_run", r.checks.size()},
              {"checks_failed", failed},
              {"checks", checks}};
}

json to_json(const ProblemSpec& p) {
  json j{{"problem", to_string(p.kind)}};
  if (p.kind == ProblemKind::Kramers) {
    j["parameters"] = json{{"gv", p.gradient}};
  } else {
    j["parameters"] = json{{"c", p.c}, {"gn", p.gradient}};
  }
  return j;
}

json solution_summary(const HalfSpaceSolution& s) {
  const ProblemSpec& p = s.problem();
  json j = to_json(p);
  const bool kramers = p.kind == ProblemKind::Kramers;
  j["model"] = s.pairing().model().name();
  j[kramers ? "U0" : "background"] = s.constant();
  const ResidualStats r = kramers ? s.boundary_residuals(0.05, 0.95, 19)
                                  : s.boundary_residuals(0.1, 3.0, 30);
  j["residual_stats"] = json{{"mu_lo", r.lo},
                             {"mu_hi", r.hi},
                             {"points", r.points},
                             {"max_abs", r.max_abs},
                             {"max_rel", r.max_rel}};
  j["route_agreement"] = s.route_agreement();
  j["a_imag_ratio"] = s.imag_ratio();
  j["spectral_nodes"] = s.a().nodes().size();
  j["wall_moment"] = s.moment(0.0);
  return j;
}

json to_json(const OracleConfig& c) {
  return json{{"domain_length", c.domain_length}, {"cells", c.cells},
              {"ordinates", c.ordinates},         {"sweep_tol", c.sweep_tol},
              {"max_sweeps", c.max_sweeps},       {"grading", c.grading},
              {"velocity_cutoff", c.velocity_cutoff}, {"asymptotic_tol", c.asymptotic_tol}};
}

json oracle_summary(const OracleSolution& s) {
  json j = to_json(s.problem);
  j["config"] = to_json(s.config);
  j["sweeps"] = s.sweeps;
  j["last_delta"] = s.last_delta;
  j["spectral_radius"] = s.spectral_radius;
  j["conservation_residual"] = s.conservation_residual;
  try {
    const ExtractedConstant e = extract_constant(s);
    const bool kramers = s.problem.kind == ProblemKind::Kramers;
    j["far_field"] = e.value;
    j[kramers ? "U0" : "background"] = oracle_problem_constant(s.problem, e);
    j["uncertainty"] = kramers ? 0.5 * e.uncertainty : e.uncertainty;
    j["window_residual"] = e.window_residual;
  } catch (const NonAsymptoticError& err) {
    j["diagnosis"] = std::string("non-asymptotic: ") + err.what();
  }
  return j;
}

json to_json(const Comparison& c) {
  json j = to_json(c.problem);
  j["analytic_constant"] = c.analytic_constant;
  j["numeric_constant"] = c.numeric_constant;
  j["numeric_uncertainty"] = c.numeric_uncertainty;
  j["constant_rel_diff"] = c.constant_rel_diff;
  j["constant_tolerance"] = kConstantTolerance;
  j["profile_sup_diff"] = c.profile_sup_diff;
  j["profile_tolerance"] = kProfileTolerance;
  j["profile_points"] = c.profile_points;
  j["pass"] = c.pass;
  if (!c.diagnosis.empty()) j["diagnosis"] = c.diagnosis;
  return j;
}

json to_json(const ConvergenceStudy& st) {
  return json{{"cells", st.cells},
              {"constants", st.constants},
              {"profile_l1_differences", st.profile_diffs},
              {"slope", st.slope},
              {"constant_slope", st.constant_slope},
              {"extrapolated", st.extrapolated},
              {"sweep_tol", st.sweep_tol}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace caseortho
