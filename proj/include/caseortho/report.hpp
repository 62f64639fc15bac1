#pragma once

// Tables and JSON documents written by the command-line tool. Numbers in CSV
// are printed with 17 significant digits so files round-trip exactly.

#include <ostream>
#include <string>
#include <vector>

#include "caseortho/oracle.hpp"
#include "caseortho/verify.hpp"
#include "json.hpp"

namespace caseortho {

std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void write(std::ostream& os) const;
  std::string str() const;
};

/// (mu, re_lambda_plus, im_lambda_plus, theta) on `points` equally spaced
/// samples of the theta table range, endpoints included (endpoint limits).
CsvTable dispersion_table(const ThetaTable& theta, int points);

/// (mu, theta, gamma) at `points` interior points of the spectrum range.
CsvTable gamma_table(const GammaWeight& g, int points);

/// (re_z, im_z, re_X, im_X) along z = mu + i/2 over the spectrum range.
CsvTable x_table(const CanonicalX& x, int points);

/// (eta, a) on the spectral grid.
CsvTable coefficient_table(const HalfSpaceSolution& s);

/// (x, mu, h) for every pair of the two grids.
CsvTable h_table(const HalfSpaceSolution& s, const std::vector<double>& xs,
                 const std::vector<double>& mus);

/// (x, m, m_as, defect).
CsvTable profile_table(const std::vector<MomentRow>& rows);

/// (x, mu, h) for every cell and ordinate.
CsvTable oracle_field_table(const OracleSolution& s);

nlohmann::ordered_json to_json(const Check& c);
nlohmann::ordered_json to_json(const VerifyReport& r);
nlohmann::ordered_json to_json(const ProblemSpec& p);
/// {problem, parameters, U0_or_background, residual_stats, ...}.
nlohmann::ordered_json solution_summary(const HalfSpaceSolution& s);
nlohmann::ordered_json to_json(const OracleConfig& c);
nlohmann::ordered_json oracle_summary(const OracleSolution& s);
nlohmann::ordered_json to_json(const Comparison& c);
nlohmann::ordered_json to_json(const ConvergenceStudy& st);

/// Two-space indented dump with a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

}  // namespace caseortho
