#pragma once

// Verification suites, JSON/CSV/text serialization and the regenerated tables.

#include "g2flow/curvature.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace g2flow {

/// [[num, den, m_pow, u_num, u_den], ...]
nlohmann::json scalar_json(const Scalar& s);
/// {"degree": k, "terms": [{"index": "127", "coeff": scalar}, ...]}
nlohmann::json form_json(const Form& f);
nlohmann::json torsion_json(const TorsionClass& t);
nlohmann::json witness_json(const Witness& w);
nlohmann::json check_json(const CheckResult& c);

enum class Suite { flow, coflow, lcp, soliton, curvature, lemma, examples };

std::optional<Suite> parse_suite(std::string_view name);
std::string to_string(Suite s);
const std::vector<Suite>& all_suites();

bool suite_applies(Suite s, const AlgebraSpec& spec);

struct SuiteOptions {
  Rational m = 1;
  /// Sampling time for numeric-mode checks; the built-in sample set is used when absent.
  std::optional<Rational> t;
};

/// Never throws for applicable suites: failures (including exceptions) become failed checks.
std::vector<CheckResult> run_suite(Suite s, const AlgebraSpec& spec, const SuiteOptions& options);

struct ReportFile {
  std::string name;
  std::string content;
};

/// catalog_params, flow_params, ricci_diagonals, curvature_tables, soliton_constants, coflow_solutions.
std::vector<ReportFile> build_report(const std::vector<AlgebraSpec>& catalog);

/// Entry point of the command-line tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace g2flow
