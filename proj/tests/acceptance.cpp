// Acceptance suite: one PASS/FAIL line per criterion, details indented below it.
// Usage: acceptance [N ...]  (criterion numbers; all when omitted)

#include "g2flow/report.hpp"

#include "support/generators.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace g2flow;
using g2flow::testing::Gen;
using g2flow::testing::r;

namespace {

struct Outcome {
  bool passed = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      details.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& s) { details.push_back(s); }
};

const std::vector<AlgebraSpec>& catalog() {
  static const auto c = load_catalog();
  return c;
}

const AlgebraSpec& alg(const std::string& name) { return find_algebra(catalog(), name); }

std::string cp(int s) { return "cp" + std::to_string(s); }

Rational sum(const std::array<Rational, kDim>& v, MultiIndex idx) {
  Rational s = 0;
  for (int i : idx.indices()) s += v[i - 1];
  return s;
}

bool lcp_with_m_e7(const AlgebraSpec& spec, const FrameScaling& sc, std::string& witness) {
  TorsionClass tc = classify_torsion(G2Structure::canonical(ScaledAlgebra(spec, sc)));
  if (tc.label != TorsionLabel::lcp) {
    witness = tc.name();
    return false;
  }
  Form tau = x_to_e(*tc.lee_form, sc);
  witness = render(tau, "e");
  return tau == Form::basis(MultiIndex{7}, Scalar::m_power(1));
}

Outcome c01() {
  Outcome o;
  for (const auto& spec : catalog()) {
    if (spec.numeric_only()) {
      double res = jacobi_residual(spec);
      o.require(res < 1e-12, spec.name + " d^2 residual " + std::to_string(res));
      std::ostringstream os;
      os << spec.name << ": numeric d^2 residual " << res;
      o.note(os.str());
      continue;
    }
    ScaledAlgebra a(spec);
    for (int k = 1; k <= kDim; ++k) {
      Form dd = a.d(a.d(Form::basis(MultiIndex{k})));
      o.require(dd.is_zero(), spec.name + " d^2 x^" + std::to_string(k) + " = " + render(dd, "x"));
    }
  }
  o.note(std::to_string(catalog().size()) + " algebras checked");
  return o;
}

Outcome c02() {
  Outcome o;
  for (int s = 1; s <= 7; ++s) {
    const AlgebraSpec& spec = alg(cp(s));
    FlowSolution sol = solve_flow_parameters(spec);
    CoflowSolution co = flow_to_coflow(sol);
    const std::pair<const char*, FrameScaling> cases[] = {
        {"unit scaling", FrameScaling::unit()}, {"flow", sol.scaling()}, {"coflow", co.scaling()}};
    for (const auto& [label, sc] : cases) {
      std::string w;
      o.require(lcp_with_m_e7(spec, sc, w), spec.name + " " + label + ": " + w);
    }
  }
  o.note("lcp with tau = m e^7 at unit scaling, along the flow and along the coflow for cp1..cp7");
  return o;
}

Outcome c03() {
  Outcome o;
  const std::map<std::string, std::vector<std::string>> expected = {
      {"cp1", {}},
      {"cp2", {"f_17 = f_36"}},
      {"cp3", {"f_17 = f_36 = f_45"}},
      {"cp4", {"f_17 = f_36 = f_45", "f_27 = f_46"}},
      {"cp5", {"f_17 = f_45", "f_27 = f_46"}},
      {"cp6", {"f_17 = f_36 = f_45", "f_27 = f_35 = f_46"}},
      {"cp7", {"f_17 = f_36", "f_23 = f_57", "f_26 = f_47"}},
  };
  for (const auto& [name, want] : expected) {
    std::vector<std::string> got;
    for (const auto& rel : lcp_conditions(alg(name))) got.push_back(rel.to_string());
    std::string text;
    for (const auto& g : got) text += (text.empty() ? "" : "; ") + g;
    o.require(got == want, name + " derived " + (text.empty() ? "{}" : text));
    o.note(name + ": " + (text.empty() ? "{}" : text));
  }
  return o;
}

Outcome c04() {
  Outcome o;
  for (int s = 1; s <= 7; ++s) {
    const AlgebraSpec& spec = alg(cp(s));
    FlowSolution sol = solve_flow_parameters(spec);
    Form lap = laplacian(ScaledAlgebra(spec, sol.scaling()), canonical_phi<Scalar>());
    Scalar f7 = Scalar::u_power(-2 * sol.beta[6], sol.context());
    auto closed = laplacian_coefficients_closed_form(spec);
    for (auto idx : EpsilonTable::phi_support()) {
      Scalar want = Scalar(static_cast<long>(EpsilonTable::eps3(idx))) * closed.at(idx) * f7;
      o.require(lap.coeff(idx) == want, spec.name + " Delta_" + idx.to_string() + ": generic " +
                                            lap.coeff(idx).to_string() + ", closed form " + want.to_string());
    }
    int off = 0;
    for (const auto& [idx, c] : lap.terms()) {
      if (!closed.count(idx)) {
        ++off;
        o.require(false, spec.name + " off-pattern coefficient on x^" + idx.to_string() + ": " + c.to_string());
      }
    }
    (void)off;
  }
  o.note("7 algebras x 7 coefficients agree; no off-pattern terms");
  return o;
}

Outcome c05() {
  Outcome o;
  auto seven = [](std::initializer_list<Rational> v) {
    std::array<Rational, kDim> out{};
    std::copy(v.begin(), v.end(), out.begin());
    return out;
  };
  const std::vector<std::pair<Rational, std::array<Rational, kDim>>> table = {
      {r(4), seven({r(3, 4), r(3, 4), r(3, 4), r(3, 4), r(3, 4), r(3, 4), r(1, 2)})},
      {r(10, 3), seven({r(9, 10), r(4, 5), r(7, 10), r(4, 5), r(4, 5), r(7, 10), r(1, 2)})},
      {r(3), seven({r(1), r(5, 6), r(3, 4), r(3, 4), r(3, 4), r(3, 4), r(1, 2)})},
      {r(14, 5), seven({r(1), r(13, 14), r(11, 14), r(5, 7), r(11, 14), r(5, 7), r(1, 2)})},
      {r(3), seven({r(11, 12), r(11, 12), r(5, 6), r(2, 3), r(3, 4), r(3, 4), r(1, 2)})},
      {r(8, 3), seven({r(1), r(1), r(3, 4), r(3, 4), r(3, 4), r(3, 4), r(1, 2)})},
      {r(14, 5), seven({r(13, 14), r(5, 7), r(5, 7), r(13, 14), r(13, 14), r(5, 7), r(1, 2)})},
  };
  for (int s = 1; s <= 7; ++s) {
    const AlgebraSpec& spec = alg(cp(s));
    FlowSolution sol = solve_flow_parameters(spec);
    o.require(sol.alpha == table[s - 1].first && sol.beta == table[s - 1].second,
              spec.name + " solved alpha = " + to_string(sol.alpha));
    Form res = flow_residual(spec, sol);
    o.require(res.is_zero(), spec.name + " flow residual " + render(res, "x"));
    o.note(spec.name + ": alpha = " + to_string(sol.alpha) + ", residual 0");
  }
  return o;
}

Outcome c06() {
  Outcome o;
  FlowSolution sol = solve_flow_parameters(alg("cp1"));
  CurvatureTensor rt = riemann(ScaledAlgebra(alg("cp1"), sol.scaling()));
  Scalar sectional = Scalar::monomial(-1, 2, -1, sol.context());
  for (int i = 1; i <= kDim; ++i)
    for (int j = i + 1; j <= kDim; ++j)
      o.require(rt(i, j, j, i) == sectional, "R_" + std::to_string(i) + std::to_string(j) + std::to_string(j) +
                                                 std::to_string(i) + " = " + rt(i, j, j, i).to_string());
  RicciData ric = ricci(rt);
  o.require(ric.einstein_constant && *ric.einstein_constant == Scalar::monomial(-6, 2, -1, sol.context()),
            "Ric is not -6 m^2/u g");
  o.require(flat_limit_check(rt, TimeLimit::to_minus_infinity), "no flat limit as t -> -inf");
  o.note("R_ijji = " + sectional.to_string() + ", Ric = -6*m^2*u^(-1) g, flat as t -> -inf");
  return o;
}

std::string reference_path() { return G2FLOW_TEST_DATA "/reference_curvature.txt"; }

Outcome c07() {
  Outcome o;
  std::ifstream in(reference_path());
  if (!in) {
    o.require(false, "cannot read " + reference_path());
    return o;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  auto entries = parse_curvature_table(buf.str());
  for (int s = 2; s <= 7; ++s) {
    const AlgebraSpec& spec = alg(cp(s));
    FlowSolution sol = solve_flow_parameters(spec);
    CurvatureUnit unit = curvature_unit(spec);
    CurvatureTensor computed = riemann(ScaledAlgebra(spec, sol.scaling()));
    CurvatureTensor reference;
    try {
      reference = tensor_from_table(entries, spec.name, sol.context());
    } catch (const std::exception& e) {
      o.require(false, e.what());
      continue;
    }
    std::map<Index4, Rational> a, b;
    for (const auto& [q, c] : table_rows(computed, unit, sol.context())) a[q] = c;
    for (const auto& [q, c] : table_rows(reference, unit, sol.context())) b[q] = c;
    std::set<Index4> keys;
    for (const auto& kv : a) keys.insert(kv.first);
    for (const auto& kv : b) keys.insert(kv.first);
    std::vector<std::string> diffs;
    for (const auto& q : keys) {
      Rational ca = a.count(q) ? a[q] : Rational(0), cb = b.count(q) ? b[q] : Rational(0);
      if (ca == cb) continue;
      std::string name = "R_" + std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]) + std::to_string(q[3]);
      diffs.push_back(name + ": computed " + to_string(ca) + " C" + std::to_string(unit.which) + ", reference " +
                      to_string(cb) + " C" + std::to_string(unit.which));
    }
    std::string label = "S" + std::to_string(s);
    if (diffs.empty()) {
      o.note(label + ": " + std::to_string(a.size()) + " independent entries match exactly");
      continue;
    }
    o.require(false, label + ": " + std::to_string(diffs.size()) + " entries differ from the reference table");
    for (const auto& d : diffs) o.note("  " + d);
    std::string bianchi = bianchi_violation(reference);
    if (!bianchi.empty()) o.note("  reference entries violate the first Bianchi identity: " + bianchi);
    RicciData ref = ricci(reference), comp = ricci(computed);
    for (int i = 0; i < kDim; ++i) {
      if (ref.ric[i][i] == comp.ric[i][i]) continue;
      o.note("  reference entries give Ric_" + std::to_string(i + 1) + std::to_string(i + 1) + " = " +
             ref.ric[i][i].to_string() + ", the Ricci diagonal requires " + comp.ric[i][i].to_string());
    }
  }
  return o;
}

Outcome c08() {
  Outcome o;
  const std::array<std::array<long, kDim>, 7> diag = {{{1, 1, 1, 1, 1, 1, 1},
                                                       {22, 17, 12, 17, 17, 12, 17},
                                                       {32, 22, 17, 17, 17, 17, 22},
                                                       {37, 32, 22, 17, 22, 17, 27},
                                                       {27, 27, 22, 12, 17, 17, 22},
                                                       {21, 21, 11, 11, 11, 11, 16},
                                                       {32, 17, 17, 32, 32, 17, 27}}};
  const int units[] = {1, 2, 3, 4, 3, 2, 4};
  for (int s = 1; s <= 7; ++s) {
    const AlgebraSpec& spec = alg(cp(s));
    FlowSolution sol = solve_flow_parameters(spec);
    CurvatureUnit unit = curvature_unit(spec);
    o.require(unit.which == units[s - 1], spec.name + " unit C" + std::to_string(unit.which));
    Scalar c = Scalar::monomial(unit.coefficient, 2, -1, sol.context());
    RicciData ric = ricci(ScaledAlgebra(spec, sol.scaling()));
    bool ok = true;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        ok = ok && ric.ric[i][j] == (i == j ? Scalar(diag[s - 1][i]) * c : Scalar());
    o.require(ok, spec.name + " Ricci diagonal mismatch");
    o.require(ric.einstein_constant.has_value() == (s == 1), spec.name + " Einstein detection");
    std::string d;
    for (long v : diag[s - 1]) d += (d.empty() ? "" : ", ") + std::to_string(v);
    o.note(spec.name + ": C" + std::to_string(unit.which) + " diag(" + d + ")" +
           (ric.einstein_constant ? ", Einstein" : ""));
  }
  return o;
}

Outcome c09() {
  Outcome o;
  const Rational want[] = {r(-6), r(-5), r(-9, 2), r(-21, 5), r(-9, 2), r(-4), r(-21, 5)};
  std::string got;
  for (int s = 1; s <= 7; ++s) {
    try {
      SolitonCertificate c = soliton_check(alg(cp(s)));
      o.require(c.lambda_over_u == want[s - 1] && c.type == SolitonType::shrinking,
                cp(s) + " lambda f7^2/m^2 = " + to_string(c.lambda_over_u) + " (" + to_string(c.type) + ")");
      got += (got.empty() ? "" : ", ") + to_string(c.lambda_over_u);
    } catch (const SolitonFailure& e) {
      o.require(false, cp(s) + ": " + e.what() + ", residual " + render(e.residual(), "x"));
    }
  }
  o.note("lambda f7^2/m^2 = (" + got + "), all shrinking");
  return o;
}

Outcome c10() {
  Outcome o;
  struct Expected {
    Rational rate;
    std::map<std::string, Rational> exponents;
  };
  auto group = [](std::initializer_list<std::pair<std::initializer_list<const char*>, Rational>> groups) {
    std::map<std::string, Rational> m;
    for (const auto& [names, q] : groups)
      for (const char* n : names) m[n] = q;
    return m;
  };
  // Rates of u = 1 + rate m^2 t and exponents of u on each e^{ijk}. For cp6 the reference data
  // quotes the reciprocal rate 3/14; only 14/3 solves the coflow (checked below).
  const std::vector<Expected> expected = {
      {r(6), group({{{"127", "347", "567"}, r(7, 6)}, {{"135", "146", "236", "245"}, r(1)}})},
      {r(16, 3), group({{{"127", "236"}, r(17, 16)}, {{"347", "567"}, r(19, 16)}, {{"135", "146", "245"}, r(15, 16)}})},
      {r(5), group({{{"127", "236", "245"}, r(1)}, {{"347", "567"}, r(6, 5)}, {{"135", "146"}, r(9, 10)}})},
      {r(24, 5), group({{{"127", "146", "236", "245"}, r(23, 24)}, {{"347", "567"}, r(29, 24)}, {{"135"}, r(7, 8)}})},
      {r(5), group({{{"127", "146", "245"}, r(1)}, {{"347", "567"}, r(6, 5)}, {{"135", "236"}, r(9, 10)}})},
      {r(14, 3), group({{{"127", "135", "146", "236", "245"}, r(13, 14)}, {{"347", "567"}, r(17, 14)}})},
      {r(24, 5), group({{{"127", "347", "567", "236"}, r(9, 8)}, {{"135", "146", "245"}, r(7, 8)}})},
  };
  for (int s = 1; s <= 7; ++s) {
    const AlgebraSpec& spec = alg(cp(s));
    FlowSolution sol = solve_flow_parameters(spec);
    CoflowSolution co = flow_to_coflow(sol);
    const Expected& e = expected[s - 1];
    o.require(-co.gamma == e.rate, spec.name + " u = 1 + " + to_string(-co.gamma) + " m^2 t");
    for (auto idx : EpsilonTable::phi_support()) {
      Rational q = sum(co.delta, idx);
      o.require(q == e.exponents.at(idx.to_string()),
                spec.name + " exponent on e^" + idx.to_string() + " = " + to_string(q));
      o.require(co.gamma * sum(co.delta, idx.complement()) == -sol.alpha * sum(sol.beta, idx),
                spec.name + " complementary identity at " + idx.to_string());
    }
    Form res = coflow_residual(spec, co);
    o.require(res.is_zero(), spec.name + " coflow residual " + render(res, "x"));
    o.note(spec.name + ": gamma = " + to_string(co.gamma) + ", t in " + co.interval().to_string() + ", residual 0");
  }
  // The literal cp6 rate 3/14 with the same exponents is not a solution.
  CoflowSolution cp6 = flow_to_coflow(solve_flow_parameters(alg("cp6")));
  cp6.gamma = r(-3, 14);
  Form literal = coflow_residual(alg("cp6"), cp6);
  o.require(!literal.is_zero(), "cp6 with u = 1 + 3/14 m^2 t unexpectedly solves the coflow");
  o.note("cp6 with the reciprocal rate 3/14: residual coefficient on x^1234 = " +
         literal.coeff(MultiIndex{1, 2, 3, 4}).to_string() + " (not a solution)");
  return o;
}

Outcome c11() {
  Outcome o;
  for (int s = 1; s <= 7; ++s) {
    RicciRatioCheck c = coflow_ricci_ratio_check(alg(cp(s)));
    o.require(c.passed, cp(s) + ": " + c.witness);
    o.require(c.coflow_einstein == (s == 1), cp(s) + " coflow Einstein = " + (c.coflow_einstein ? "yes" : "no"));
    o.note(cp(s) + ": " + c.witness);
  }
  return o;
}

Outcome c12() {
  Outcome o;
  for (const auto& c : n2_example_check(alg("n2"))) {
    o.require(c.passed, "n2 " + c.check + ": " + witness_text(c.witness));
    o.note("n2 " + c.check + ": " + witness_text(c.witness));
  }
  const std::vector<Rational> times = {r(-1), r(-1, 2), r(0), r(1, 4), r(1, 2)};
  for (const auto& t : times) o.require(t < r(3, 5), "sample time outside the interval");
  for (const auto& c : h7_example_check(alg("h7"), times)) {
    o.require(c.passed, "h7 " + c.check + ": " + witness_text(c.witness));
    o.note("h7 " + c.check + ": " + witness_text(c.witness));
  }
  return o;
}

Outcome c13() {
  Outcome o;
  Gen g(20240613);
  const int cases = 1000;

  int ring_failures = 0;
  for (int n = 0; n < cases; ++n) {
    RingContext ctx{g.nonzero_rational(5, 3), g.integer(0, 1) * 2};
    Scalar a = g.scalar(ctx), b = g.scalar(ctx), c = g.scalar(ctx);
    Scalar zero = Scalar().with_context(ctx), one = Scalar(1L).with_context(ctx);
    bool ok = (a + b) + c == a + (b + c) && a + b == b + a && (a * b) * c == a * (b * c) && a * b == b * a &&
              a * (b + c) == a * b + a * c && a + zero == a && a * one == a && (a - a).is_zero() &&
              ddt(a * b) == ddt(a) * b + a * ddt(b) && ddt(a + b) == ddt(a) + ddt(b);
    if (!ok) ++ring_failures;
  }
  o.require(ring_failures == 0, std::to_string(ring_failures) + " ring/Leibniz failures");
  o.note(std::to_string(cases) + " ring axiom and Leibniz cases");

  int star_failures = 0;
  for (int n = 0; n < cases; ++n) {
    RingContext ctx{g.nonzero_rational(5, 3), 2};
    int p = g.integer(0, 7), q = g.integer(0, 7 - p);
    Form a = g.form(p, ctx), b = g.form(q, ctx);
    int i = g.integer(1, kDim);
    Form ab = wedge(a, b);
    bool ok = hodge_star(hodge_star(a)) == a;
    if (p + q >= 1) {
      Form rhs = (p >= 1 ? wedge(interior(i, a), b) : Form(p + q - 1)) +
                 (q >= 1 ? wedge(a, interior(i, b)).scaled(Scalar(p % 2 == 0 ? 1L : -1L)) : Form(p + q - 1));
      ok = ok && interior(i, ab) == rhs;
    }
    if (p + q < kDim) {
      ScaledAlgebra alg7(alg(cp(g.integer(1, 7))), FrameScaling::unit(ctx));
      Form rhs = wedge(alg7.d(a), b) + wedge(a, alg7.d(b)).scaled(Scalar(p % 2 == 0 ? 1L : -1L));
      ok = ok && alg7.d(ab) == rhs;
    }
    if (!ok) ++star_failures;
  }
  o.require(star_failures == 0, std::to_string(star_failures) + " star/antiderivation failures");
  o.note(std::to_string(cases) + " ** = id, interior and d antiderivation cases");

  for (const auto& spec : catalog()) {
    if (spec.numeric_only()) {
      double worst = symmetry_residual(riemann_components_numeric(ScaledAlgebra(spec), 1.0, 0.0));
      o.require(worst < 1e-12, spec.name + " numeric Riemann symmetry defect " + std::to_string(worst));
      continue;
    }
    FrameScaling sc = spec.cp_index() ? solve_flow_parameters(spec).scaling() : FrameScaling::unit();
    std::string v = symmetry_violation(riemann_components(ScaledAlgebra(spec, sc)));
    o.require(v.empty(), spec.name + ": " + v);
  }
  o.note("Riemann symmetries and first Bianchi identity on all " + std::to_string(catalog().size()) + " algebras");

  for (int s = 1; s <= 7; ++s)
    for (const auto& c : power_law_lemma_checks(solve_flow_parameters(alg(cp(s)))))
      o.require(c.passed, cp(s) + " " + c.check + ": " + witness_text(c.witness));
  o.note("lemma parts i and ii on all seven flow solutions");
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "catalog integrity (d^2 = 0)", c01},
      {2, "lcp certification at unit scaling and along flow/coflow", c02},
      {3, "lcp condition sets", c03},
      {4, "Laplacian double path", c04},
      {5, "flow parameters and residuals", c05},
      {6, "S1 Einstein, sectional curvature and flat limit", c06},
      {7, "curvature table reproduction for S2..S7", c07},
      {8, "Ricci diagonals and Einstein detection", c08},
      {9, "soliton constants", c09},
      {10, "flow to coflow map and coflow residuals", c10},
      {11, "coflow Ricci ratio", c11},
      {12, "warm-up examples on n2 and h7", c12},
      {13, "property suites", c13},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  bool all_ok = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    all_ok = all_ok && o.passed;
    std::printf("%s criterion %2d: %s (%.0f ms)\n", o.passed ? "PASS" : "FAIL", c.id, c.title, ms);
    for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
  }
  return all_ok ? 0 : 1;
}
