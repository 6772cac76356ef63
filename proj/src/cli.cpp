#include "g2flow/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace g2flow {

namespace {

enum ExitCode { kOk = 0, kFailed = 1, kUsage = 2, kIo = 3 };

struct TimedChecks {
  std::vector<CheckResult> checks;
  double runtime_ms = 0;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational rational_option(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid rational for ") + flag + ": " + text);
  }
}

/// cp algebras first by index, then the rest by name.
std::vector<const AlgebraSpec*> sorted_algebras(const std::vector<AlgebraSpec>& catalog) {
  std::vector<const AlgebraSpec*> out;
  for (const auto& s : catalog) out.push_back(&s);
  std::sort(out.begin(), out.end(), [](const AlgebraSpec* a, const AlgebraSpec* b) {
    int ka = a->cp_index() ? a->cp_index() : 100, kb = b->cp_index() ? b->cp_index() : 100;
    return ka != kb ? ka < kb : a->name < b->name;
  });
  return out;
}

std::string csv_field(const std::string& s) {
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot open " + path);
  file << text;
  if (!file) throw std::ios_base::failure("cannot write " + path);
}

std::string format_verify(const std::vector<TimedChecks>& groups, const std::string& format, bool timings) {
  std::ostringstream os;
  std::size_t passed = 0, failed = 0;
  for (const auto& g : groups)
    for (const auto& c : g.checks) (c.passed ? passed : failed)++;

  if (format == "json") {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& g : groups)
      for (const auto& c : g.checks) {
        nlohmann::json j = check_json(c);
        if (timings) j["runtime_ms"] = g.runtime_ms;
        checks.push_back(std::move(j));
      }
    nlohmann::json report = {{"checks", checks},
                             {"summary", {{"passed", passed}, {"failed", failed}}},
                             {"tables", nlohmann::json::object()}};
    os << report.dump(2) << '\n';
  } else if (format == "csv") {
    os << "id,algebra,status,witness" << (timings ? ",runtime_ms" : "") << '\n';
    for (const auto& g : groups)
      for (const auto& c : g.checks) {
        os << c.check << ',' << c.algebra << ',' << (c.passed ? "pass" : "fail") << ','
           << csv_field(witness_text(c.witness));
        if (timings) os << ',' << g.runtime_ms;
        os << '\n';
      }
  } else {
    for (const auto& g : groups) {
      for (const auto& c : g.checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.algebra << ' ' << c.check;
        std::string w = witness_text(c.witness);
        if (!w.empty()) os << ": " << w;
        os << '\n';
      }
      if (timings && !g.checks.empty()) os << "  (" << g.runtime_ms << " ms)\n";
    }
    os << passed << " passed, " << failed << " failed\n";
  }
  return os.str();
}

int cmd_verify(const std::string& algebra, const std::string& what, const SuiteOptions& options,
               const std::string& format, const std::string& out_path, bool timings, std::ostream& out) {
  auto catalog = load_catalog();
  std::vector<const AlgebraSpec*> algebras;
  if (algebra == "all") {
    algebras = sorted_algebras(catalog);
  } else {
    try {
      algebras.push_back(&find_algebra(catalog, algebra));
    } catch (const std::exception&) {
      throw UsageError("unknown algebra: " + algebra);
    }
  }
  std::vector<Suite> suites;
  if (what == "all") {
    suites = all_suites();
  } else if (auto s = parse_suite(what)) {
    suites.push_back(*s);
  } else {
    throw UsageError("unknown suite: " + what);
  }
  if (algebra != "all") {
    bool any = false;
    for (Suite s : suites) any = any || suite_applies(s, *algebras.front());
    if (!any) throw UsageError("suite " + what + " does not apply to " + algebra);
  }

  std::vector<std::future<TimedChecks>> jobs;
  for (const AlgebraSpec* spec : algebras) {
    jobs.push_back(std::async(std::launch::async, [spec, &suites, &options] {
      TimedChecks tc;
      auto start = std::chrono::steady_clock::now();
      for (Suite s : suites)
        if (suite_applies(s, *spec)) {
          auto part = run_suite(s, *spec, options);
          tc.checks.insert(tc.checks.end(), part.begin(), part.end());
        }
      tc.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      return tc;
    }));
  }
  std::vector<TimedChecks> groups;
  bool ok = true;
  for (auto& j : jobs) {
    groups.push_back(j.get());
    ok = ok && all_passed(groups.back().checks);
  }
  write_output(format_verify(groups, format, timings), out_path, out);
  return ok ? kOk : kFailed;
}

std::string u_text(const Rational& a) {
  return sgn(a) < 0 ? "1 + " + to_string(-a) + " m^2 t" : "1 - " + to_string(a) + " m^2 t";
}

std::string join(const std::array<Rational, kDim>& v) {
  std::string s = "(";
  for (int i = 0; i < kDim; ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

int cmd_solve(const std::string& algebra, const std::string& format, std::ostream& out) {
  auto catalog = load_catalog();
  const AlgebraSpec* spec = nullptr;
  try {
    spec = &find_algebra(catalog, algebra);
  } catch (const std::exception&) {
    throw UsageError("unknown algebra: " + algebra);
  }
  if (spec->cp_index() == 0) throw UsageError("solve applies to cp1..cp7 only, not " + algebra);
  FlowSolution sol = solve_flow_parameters(*spec);
  CoflowSolution co = flow_to_coflow(sol);
  if (format == "json") {
    auto arr = [](const std::array<Rational, kDim>& v) {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& x : v) a.push_back(to_string(x));
      return a;
    };
    nlohmann::json j = {{"algebra", spec->name},
                        {"flow", {{"alpha", to_string(sol.alpha)}, {"beta", arr(sol.beta)}, {"interval", sol.interval().to_string()}}},
                        {"coflow", {{"gamma", to_string(co.gamma)}, {"delta", arr(co.delta)}, {"interval", co.interval().to_string()}}}};
    out << j.dump(2) << '\n';
  } else {
    out << spec->name << '\n'
        << "flow:   alpha = " << to_string(sol.alpha) << ", beta = " << join(sol.beta) << '\n'
        << "        u = " << u_text(sol.alpha) << ", t in " << sol.interval().to_string() << '\n'
        << "coflow: gamma = " << to_string(co.gamma) << ", delta = " << join(co.delta) << '\n'
        << "        u = " << u_text(co.gamma) << ", t in " << co.interval().to_string() << '\n';
  }
  return kOk;
}

int cmd_report(const std::string& dir, std::ostream& out) {
  auto catalog = load_catalog();
  auto files = build_report(catalog);
  std::filesystem::create_directories(dir);
  for (const auto& f : files) {
    auto path = std::filesystem::path(dir) / f.name;
    write_output(f.content, path.string(), out);
    out << path.string() << '\n';
  }
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of Laplacian flow and coflow solutions on LCP G2-structures", "g2flow"};
  app.require_subcommand(1);

  std::string algebra, what = "all", m_text = "1", t_text, format = "text", out_path;
  bool timings = false;
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--algebra", algebra, "Algebra name or 'all'")->required();
  verify->add_option("--what", what, "flow|coflow|lcp|soliton|curvature|lemma|examples|all");
  verify->add_option("--m", m_text, "Value of m for numeric-mode checks");
  verify->add_option("--t", t_text, "Sampling time for numeric-mode checks");
  verify->add_option("--format", format)->check(CLI::IsMember({"json", "text", "csv"}));
  verify->add_option("--out", out_path, "Write the report to this file");
  verify->add_flag("--timings", timings, "Include per-algebra runtimes");

  std::string solve_algebra;
  auto* solve = app.add_subcommand("solve", "Print the flow and coflow parameters");
  auto* solve_positional = solve->add_option("name", solve_algebra, "Algebra cp1..cp7");
  solve->add_option("--algebra", solve_algebra, "Algebra cp1..cp7")->excludes(solve_positional);
  solve->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  bool report_all = false;
  std::string report_dir = "report";
  auto* report = app.add_subcommand("report", "Regenerate the tables");
  report->add_flag("--all", report_all, "Regenerate every table")->required();
  report->add_option("--out", report_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) {
      SuiteOptions options;
      options.m = rational_option(m_text, "--m");
      if (!t_text.empty()) options.t = rational_option(t_text, "--t");
      return cmd_verify(algebra, what, options, format, out_path, timings, out);
    }
    if (*solve) {
      if (solve_algebra.empty()) throw UsageError("solve needs an algebra");
      return cmd_solve(solve_algebra, format, out);
    }
    return cmd_report(report_dir, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
}

}  // namespace g2flow
