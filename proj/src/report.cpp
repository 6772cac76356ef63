#include "g2flow/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace g2flow {

using nlohmann::json;

json scalar_json(const Scalar& s) {
  json out = json::array();
  for (const auto& t : s.terms()) {
    out.push_back({t.coeff.get_num().get_str(), t.coeff.get_den().get_str(), t.m_pow, t.u_pow.get_num().get_str(),
                   t.u_pow.get_den().get_str()});
  }
  // Integers as numbers when they fit, so the quintuples read naturally.
  for (auto& q : out)
    for (auto& v : q)
      if (v.is_string()) v = std::stol(v.get<std::string>());
  return out;
}

json form_json(const Form& f) {
  json terms = json::array();
  for (const auto& [idx, c] : f.terms()) terms.push_back({{"index", idx.to_string()}, {"coeff", scalar_json(c)}});
  return {{"degree", f.degree()}, {"terms", terms}};
}

json torsion_json(const TorsionClass& t) {
  json lee = nullptr;
  if (t.lee_form) {
    lee = json::array();
    for (int i = 1; i <= kDim; ++i) lee.push_back(scalar_json(t.lee_form->coeff(MultiIndex{i})));
  }
  return {{"class", t.name()}, {"lee_form", lee}};
}

json witness_json(const Witness& w) {
  struct Visitor {
    json operator()(std::monostate) const { return nullptr; }
    json operator()(const Scalar& s) const { return {{"scalar", scalar_json(s)}, {"text", s.to_string()}}; }
    json operator()(const Form& f) const { return {{"form", form_json(f)}, {"text", render(f, "x")}}; }
    json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, w);
}

json check_json(const CheckResult& c) {
  return {{"id", c.check}, {"algebra", c.algebra}, {"status", c.passed ? "pass" : "fail"},
          {"witness", witness_json(c.witness)}};
}

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : all_suites())
    if (to_string(s) == name) return s;
  return std::nullopt;
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::flow: return "flow";
    case Suite::coflow: return "coflow";
    case Suite::lcp: return "lcp";
    case Suite::soliton: return "soliton";
    case Suite::curvature: return "curvature";
    case Suite::lemma: return "lemma";
    case Suite::examples: return "examples";
  }
  return "flow";
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> v{Suite::flow,      Suite::coflow, Suite::lcp,     Suite::soliton,
                                    Suite::curvature, Suite::lemma,  Suite::examples};
  return v;
}

bool suite_applies(Suite s, const AlgebraSpec& spec) {
  switch (s) {
    case Suite::curvature: return true;
    case Suite::examples: return spec.name == "n2" || spec.name == "h7";
    default: return spec.cp_index() != 0;
  }
}

namespace {

std::string join(const std::array<Rational, kDim>& v) {
  std::string s = "(";
  for (int i = 0; i < kDim; ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

CheckResult make(const AlgebraSpec& spec, std::string check, bool passed, Witness w = {}) {
  return {spec.name, std::move(check), passed, std::move(w)};
}

Rational exponent_sum(const std::array<Rational, kDim>& v, MultiIndex idx) {
  Rational s = 0;
  for (int i : idx.indices()) s += v[i - 1];
  return s;
}

CheckResult lcp_along(const AlgebraSpec& spec, const std::string& name, const FrameScaling& scaling) {
  TorsionClass tc = classify_torsion(G2Structure::canonical(ScaledAlgebra(spec, scaling)));
  if (tc.label != TorsionLabel::lcp) return make(spec, name, false, tc.name());
  Form tau_e = x_to_e(*tc.lee_form, scaling);
  bool ok = tau_e == Form::basis(MultiIndex{7}, Scalar::m_power(1));
  return make(spec, name, ok, "lcp, tau = " + render(tau_e, "e"));
}

std::vector<CheckResult> flow_suite(const AlgebraSpec& spec) {
  std::vector<CheckResult> out;
  FlowSolution sol = solve_flow_parameters(spec);
  out.push_back(make(spec, "flow_parameters", true,
                     "alpha = " + to_string(sol.alpha) + ", beta = " + join(sol.beta) + ", t in " + sol.interval().to_string()));
  Form res = flow_residual(spec, sol);
  out.push_back(make(spec, "flow_residual", res.is_zero(), res));

  ScaledAlgebra alg(spec, sol.scaling());
  Form lap = laplacian(alg, canonical_phi<Scalar>());
  Form expected(3);
  const Scalar f7_sq_inv = Scalar::u_power(-2 * sol.beta[6], sol.context());
  auto closed = laplacian_coefficients_closed_form(spec);
  for (const auto& [idx, c] : closed) expected.add(idx, Scalar(static_cast<long>(EpsilonTable::eps3(idx))) * c * f7_sq_inv);
  Form diff = lap - expected;
  out.push_back(make(spec, "laplacian_double_path", diff.is_zero(), diff));

  std::string bad;
  for (const auto& [idx, c] : closed) {
    Scalar lhs = Scalar::monomial(-sol.alpha * exponent_sum(sol.beta, idx), 2, -1, sol.context());
    if (!(lhs == c * f7_sq_inv)) bad += idx.to_string() + " ";
  }
  out.push_back(make(spec, "flow_sum_rule", bad.empty(), bad.empty() ? std::string("7 equations") : "fails at " + bad));
  out.push_back(lcp_along(spec, "lcp_along_flow", sol.scaling()));
  return out;
}

std::vector<CheckResult> coflow_suite(const AlgebraSpec& spec) {
  std::vector<CheckResult> out;
  FlowSolution sol = solve_flow_parameters(spec);
  CoflowSolution co = flow_to_coflow(sol);
  out.push_back(make(spec, "coflow_parameters", true,
                     "gamma = " + to_string(co.gamma) + ", delta = " + join(co.delta) + ", t in " + co.interval().to_string()));
  Form res = coflow_residual(spec, co);
  out.push_back(make(spec, "coflow_residual", res.is_zero(), res));

  std::string bad;
  for (auto idx : EpsilonTable::phi_support()) {
    if (co.gamma * exponent_sum(co.delta, idx.complement()) != -sol.alpha * exponent_sum(sol.beta, idx))
      bad += idx.to_string() + " ";
  }
  out.push_back(make(spec, "complementary_identity", bad.empty(), bad.empty() ? std::string("7 index triples") : "fails at " + bad));
  out.push_back(lcp_along(spec, "lcp_along_coflow", co.scaling()));

  FlowSolution back = coflow_to_flow(co);
  CoflowSolution again = flow_to_coflow(back);
  bool involution = back.alpha == sol.alpha && back.beta == sol.beta && again.gamma == co.gamma &&
                    again.delta == co.delta && flow_residual(spec, back).is_zero() &&
                    coflow_residual(spec, again).is_zero();
  out.push_back(make(spec, "flow_coflow_involution", involution,
                     "alpha = " + to_string(back.alpha) + ", beta = " + join(back.beta)));

  RicciRatioCheck ratio = coflow_ricci_ratio_check(spec);
  out.push_back(make(spec, "coflow_ricci_ratio", ratio.passed, ratio.witness));
  bool einstein_expected = spec.cp_index() == 1;
  out.push_back(make(spec, "coflow_einstein", ratio.coflow_einstein == einstein_expected,
                     std::string(ratio.coflow_einstein ? "Einstein" : "not Einstein")));
  return out;
}

std::vector<CheckResult> lcp_suite(const AlgebraSpec& spec) {
  std::vector<CheckResult> out;
  out.push_back(lcp_along(spec, "lcp_unit_scaling", FrameScaling::unit()));
  auto relations = lcp_conditions(spec);
  std::string text;
  for (const auto& r : relations) text += (text.empty() ? "" : "; ") + r.to_string();
  if (text.empty()) text = "no relations";
  // The solved flow exponents must satisfy the derived relations.
  FlowSolution sol = solve_flow_parameters(spec);
  bool holds = true;
  for (const auto& row : exponent_relations(relations)) {
    Rational s = 0;
    for (int i = 0; i < kDim; ++i) s += row[i] * sol.beta[i];
    if (sgn(s) != 0) holds = false;
  }
  out.push_back(make(spec, "lcp_conditions", holds, text));
  return out;
}

std::vector<CheckResult> soliton_suite(const AlgebraSpec& spec) {
  try {
    SolitonCertificate c = soliton_check(spec);
    return {make(spec, "soliton", c.type == SolitonType::shrinking,
                 "lambda = " + to_string(c.lambda_over_u) + " m^2/f_7^2 (" + to_string(c.type) + ")")};
  } catch (const SolitonFailure& e) {
    return {make(spec, "soliton", false, e.residual())};
  }
}

std::string diagonal_text(const RicciData& ric, const AlgebraSpec& spec, const RingContext& ctx) {
  if (spec.cp_index() == 0) {
    std::string s = "(";
    for (int i = 0; i < kDim; ++i) s += (i ? ", " : "") + ric.ric[i][i].to_string();
    return s + ")";
  }
  CurvatureUnit unit = curvature_unit(spec);
  Scalar inv = Scalar::monomial(1 / unit.coefficient, -2, 1, ctx);
  std::string s = "C" + std::to_string(unit.which) + " * (";
  for (int i = 0; i < kDim; ++i) {
    auto q = (ric.ric[i][i] * inv).as_rational();
    s += (i ? ", " : "") + (q ? to_string(*q) : ric.ric[i][i].to_string());
  }
  return s + ")";
}

std::vector<CheckResult> curvature_suite(const AlgebraSpec& spec) {
  std::vector<CheckResult> out;
  FrameScaling scaling = FrameScaling::unit();
  if (spec.numeric_only()) {
    double worst = symmetry_residual(riemann_components_numeric(ScaledAlgebra(spec, scaling), 1.0, 0.0));
    std::ostringstream w;
    w << "numeric, max defect = " << std::setprecision(3) << worst;
    out.push_back(make(spec, "riemann_symmetries", worst < 1e-12, w.str()));
    return out;
  }
  if (spec.cp_index() != 0) scaling = solve_flow_parameters(spec).scaling();
  ScaledAlgebra alg(spec, scaling);
  auto comps = riemann_components(alg);
  std::string violation = symmetry_violation(comps);
  out.push_back(make(spec, "riemann_symmetries", violation.empty(), violation.empty() ? std::string("all hold") : violation));
  if (!violation.empty()) return out;
  CurvatureTensor r = riemann(alg);
  RicciData ric = ricci(r);
  bool symmetric = true;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      if (!(ric.ric[i][j] == ric.ric[j][i])) symmetric = false;
  out.push_back(make(spec, "ricci", symmetric, diagonal_text(ric, spec, scaling.context)));

  Scalar pairs;
  for (int i = 1; i <= kDim; ++i)
    for (int j = i + 1; j <= kDim; ++j) pairs += Scalar(2L) * r(i, j, j, i);
  Scalar sc = scalar_curvature(ric);
  out.push_back(make(spec, "scalar_curvature", sc == pairs, sc));

  if (spec.cp_index() != 0) {
    bool expected = spec.cp_index() == 1;
    out.push_back(make(spec, "einstein", ric.einstein_constant.has_value() == expected,
                       ric.einstein_constant ? Witness(*ric.einstein_constant) : Witness(std::string("not Einstein"))));
    out.push_back(make(spec, "flat_limit", flat_limit_check(r, TimeLimit::to_minus_infinity), std::string("t -> -inf")));
  } else if (r.is_zero()) {
    out.push_back(make(spec, "flat_limit", flat_limit_check(r, TimeLimit::to_minus_infinity), std::string("zero tensor")));
  }
  if (spec.cp_index() == 1) {
    Scalar expected = Scalar::monomial(-1, 2, -1, scaling.context);
    std::string bad;
    for (int i = 1; i <= kDim; ++i)
      for (int j = i + 1; j <= kDim; ++j)
        if (!(r(i, j, j, i) == expected)) bad += "R_" + std::to_string(i) + std::to_string(j) + std::to_string(j) + std::to_string(i) + " ";
    out.push_back(make(spec, "sectional_curvature", bad.empty(), bad.empty() ? Witness(expected) : Witness(bad)));
  }
  return out;
}

std::vector<Rational> example_times(const SuiteOptions& options) {
  if (options.t) return {*options.t};
  return {Rational(-1), make_rational(-1, 2), Rational(0), make_rational(1, 4), make_rational(1, 2)};
}

}  // namespace

std::vector<CheckResult> run_suite(Suite s, const AlgebraSpec& spec, const SuiteOptions& options) {
  try {
    switch (s) {
      case Suite::flow: return flow_suite(spec);
      case Suite::coflow: return coflow_suite(spec);
      case Suite::lcp: return lcp_suite(spec);
      case Suite::soliton: return soliton_suite(spec);
      case Suite::curvature: return curvature_suite(spec);
      case Suite::lemma: return power_law_lemma_checks(solve_flow_parameters(spec));
      case Suite::examples:
        if (spec.name == "n2") return n2_example_check(spec);
        return h7_example_check(spec, example_times(options));
    }
  } catch (const std::exception& e) {
    return {make(spec, to_string(s), false, std::string("error: ") + e.what())};
  }
  return {};
}

namespace {

json rationals(const std::array<Rational, kDim>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json rationals6(const std::array<Rational, 6>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

std::vector<const AlgebraSpec*> cp_algebras(const std::vector<AlgebraSpec>& catalog) {
  std::vector<const AlgebraSpec*> out;
  for (const auto& s : catalog)
    if (s.cp_index() != 0) out.push_back(&s);
  std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->cp_index() < b->cp_index(); });
  return out;
}

}  // namespace

std::vector<ReportFile> build_report(const std::vector<AlgebraSpec>& catalog) {
  json catalog_params = json::array(), flow_params = json::array(), ricci_rows = json::array(), solitons = json::array(),
       coflows = json::array();
  std::ostringstream curvature_csv;
  curvature_csv << "algebra,i,j,k,l,coeff_over_C,which_C\n";
  for (const AlgebraSpec* spec : cp_algebras(catalog)) {
    catalog_params.push_back({{"algebra", spec->name}, {"eta", rationals6(spec->eta)}, {"c", rationals6(spec->c6)}});

    FlowSolution sol = solve_flow_parameters(*spec);
    flow_params.push_back({{"algebra", spec->name}, {"alpha", to_string(sol.alpha)}, {"beta", rationals(sol.beta)},
                      {"interval", sol.interval().to_string()}});

    ScaledAlgebra alg(*spec, sol.scaling());
    CurvatureTensor r = riemann(alg);
    RicciData ric = ricci(r);
    CurvatureUnit unit = curvature_unit(*spec);
    Scalar inv = Scalar::monomial(1 / unit.coefficient, -2, 1, sol.context());
    json diag = json::array();
    for (int i = 0; i < kDim; ++i) diag.push_back(to_string(*(ric.ric[i][i] * inv).as_rational()));
    ricci_rows.push_back({{"algebra", spec->name}, {"unit", "C" + std::to_string(unit.which)}, {"diagonal", diag},
                          {"einstein", ric.einstein_constant.has_value()}});

    for (const auto& [q, c] : table_rows(r, unit, sol.context())) {
      curvature_csv << spec->name << ',' << q[0] << ',' << q[1] << ',' << q[2] << ',' << q[3] << ',' << to_string(c)
                    << ",C" << unit.which << '\n';
    }

    SolitonCertificate cert = soliton_check(*spec);
    solitons.push_back({{"algebra", spec->name}, {"lambda_f7sq_over_m2", to_string(cert.lambda_over_u)},
                        {"type", to_string(cert.type)}});

    CoflowSolution co = flow_to_coflow(sol);
    json exps = json::object();
    for (auto idx : EpsilonTable::phi_support()) exps[idx.to_string()] = to_string(exponent_sum(co.delta, idx));
    coflows.push_back({{"algebra", spec->name}, {"gamma", to_string(co.gamma)}, {"delta", rationals(co.delta)},
                       {"u", "1 + " + to_string(-co.gamma) + " m^2 t"}, {"interval", co.interval().to_string()},
                       {"phi_exponents", exps}});
  }
  return {{"catalog_parameters.json", catalog_params.dump(2) + "\n"},
          {"flow_parameters.json", flow_params.dump(2) + "\n"},
          {"ricci_diagonals.json", ricci_rows.dump(2) + "\n"},
          {"curvature_tables.csv", curvature_csv.str()},
          {"soliton_constants.json", solitons.dump(2) + "\n"},
          {"coflow_solutions.json", coflows.dump(2) + "\n"}};
}

}  // namespace g2flow
