#include "g2flow/flow.hpp"

#include "g2flow/linear.hpp"

#include <cmath>
#include <sstream>

namespace g2flow {

namespace {

std::string bound(const Rational& r) {
  std::ostringstream os;
  if (sgn(r) < 0) os << "-";
  Rational a = abs(r);
  os << a.get_num().get_str();
  if (a.get_den() == 1) os << "/m^2";
  else os << "/(" << a.get_den().get_str() << "m^2)";
  return os.str();
}

}  // namespace

TimeInterval TimeInterval::where_positive(const Rational& a) {
  TimeInterval out;
  if (sgn(a) > 0) out.upper = 1 / a;
  if (sgn(a) < 0) out.lower = 1 / a;
  return out;
}

std::string TimeInterval::to_string() const {
  return "(" + (lower ? bound(*lower) : std::string("-inf")) + ", " + (upper ? bound(*upper) : std::string("inf")) + ")";
}

std::string to_string(SolitonType t) {
  switch (t) {
    case SolitonType::shrinking: return "shrinking";
    case SolitonType::steady: return "steady";
    case SolitonType::expanding: return "expanding";
  }
  return "steady";
}

Form time_derivative(const Form& x_form, const FrameScaling& scaling) {
  Form out(x_form.degree());
  for (const auto& [idx, c] : x_form.terms()) {
    Scalar f = scaling.f(idx);
    out.add(idx, ddt(c.with_context(scaling.context) * f) * f.inverse());
  }
  return out;
}

Form flow_residual(const ScaledAlgebra& alg, const Form& phi) {
  return time_derivative(phi, alg.scaling()) - laplacian(alg, phi);
}

Form coflow_residual(const ScaledAlgebra& alg, const Form& psi) {
  return time_derivative(psi, alg.scaling()) + laplacian(alg, psi);
}

NumericForm coflow_residual_numeric(const ScaledAlgebra& alg, const Form& psi, double m, double t) {
  auto d = alg.numeric_differential(m, t);
  NumericForm exact_part = time_derivative(psi, alg.scaling()).map<double>([&](MultiIndex, const Scalar& c) {
    return c.eval(m, t);
  });
  NumericForm numeric_psi = psi.map<double>([&](MultiIndex, const Scalar& c) { return c.eval(m, t); });
  return exact_part + laplacian(d, numeric_psi);
}

Form flow_residual(const AlgebraSpec& spec, const FlowSolution& sol) {
  return flow_residual(ScaledAlgebra(spec, sol.scaling()), canonical_phi<Scalar>());
}

Form coflow_residual(const AlgebraSpec& spec, const CoflowSolution& sol) {
  return coflow_residual(ScaledAlgebra(spec, sol.scaling()), canonical_psi<Scalar>());
}

FlowSolution solve_flow_parameters(const AlgebraSpec& spec) {
  // Unknowns g_1..g_6 = alpha beta_i and alpha (beta_7 = 1/2, so alpha beta_7 = alpha/2).
  auto coefficient_row = [](const std::array<Rational, kDim>& weights) {
    std::vector<Rational> row(kDim);
    for (int i = 0; i < 6; ++i) row[i] = weights[i];
    row[6] = weights[6] / 2;
    return row;
  };
  RationalMatrix a;
  std::vector<Rational> b;
  for (const auto& [idx, value] : laplacian_coefficients_closed_form(spec)) {
    std::array<Rational, kDim> w{};
    for (int i : idx.indices()) w[i - 1] = -1;
    a.push_back(coefficient_row(w));
    b.push_back(value.terms().empty() ? Rational(0) : value.terms()[0].coeff);
  }
  for (const auto& w : exponent_relations(lcp_conditions(spec))) {
    a.push_back(coefficient_row(w));
    b.push_back(0);
  }
  RationalSolution sol = solve_linear(std::move(a), std::move(b));
  if (!sol.consistent) throw std::runtime_error(spec.name + ": flow equations are inconsistent");
  if (sol.nullity != 0) throw std::runtime_error(spec.name + ": flow equations are underdetermined");
  FlowSolution out{spec, sol.values[6], {}};
  if (sgn(out.alpha) == 0) throw std::runtime_error(spec.name + ": degenerate solution alpha = 0");
  for (int i = 0; i < 6; ++i) out.beta[i] = sol.values[i] / out.alpha;
  out.beta[6] = make_rational(1, 2);
  return out;
}

namespace {

Rational sum(const std::array<Rational, kDim>& v) {
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s;
}

}  // namespace

CoflowSolution flow_to_coflow(const FlowSolution& sol) {
  Rational s = sum(sol.beta);
  if (s == 2) throw std::domain_error(sol.algebra.name + ": exponent sum 2 is outside the flow/coflow correspondence");
  CoflowSolution out{sol.algebra, sol.alpha * (2 - s) / 2, {}};
  for (int i = 0; i < kDim; ++i) out.delta[i] = make_rational(1, 2) + (1 - 2 * sol.beta[i]) / (s - 2);
  return out;
}

FlowSolution coflow_to_flow(const CoflowSolution& sol) {
  Rational t = sum(sol.delta);
  if (2 * t == 3) throw std::domain_error(sol.algebra.name + ": exponent sum 3/2 is outside the flow/coflow correspondence");
  Rational s = 4 * t / (2 * t - 3);
  if (s == 2) throw std::domain_error(sol.algebra.name + ": degenerate coflow exponents");
  FlowSolution out{sol.algebra, 2 * sol.gamma / (2 - s), {}};
  for (int i = 0; i < kDim; ++i) out.beta[i] = make_rational(1, 2) - (2 * sol.delta[i] - 1) * (s - 2) / 4;
  return out;
}

Form lie_derivative(const ScaledAlgebra& alg, const std::array<Scalar, kDim>& x, const Form& a) {
  auto br = x_structure_constants(alg);
  // L_X x^k = -sum_{p,j} x_p a^k_{pj} x^j
  std::array<Form, kDim> lx;
  for (int k = 1; k <= kDim; ++k) {
    lx[k - 1] = Form(1);
    for (int j = 1; j <= kDim; ++j) {
      Scalar c;
      for (int p = 1; p <= kDim; ++p) c -= x[p - 1] * br(k, p, j);
      lx[k - 1].add(MultiIndex{j}, c);
    }
  }
  Form out(a.degree());
  for (const auto& [idx, c] : a.terms()) {
    const auto pos = idx.indices();
    for (std::size_t r = 0; r < pos.size(); ++r) {
      Form term = Form::constant(c);
      for (std::size_t s = 0; s < pos.size(); ++s)
        term = wedge(term, s == r ? lx[pos[s] - 1] : Form::basis(MultiIndex{pos[s]}));
      out += term;
    }
  }
  return out;
}

Form lie_derivative_cartan(const ScaledAlgebra& alg, const std::array<Scalar, kDim>& x, const Form& a) {
  auto contract = [&](const Form& f) {
    Form out(f.degree() - 1);
    for (int p = 1; p <= kDim; ++p)
      if (!x[p - 1].is_zero()) out += interior(p, f).scaled(x[p - 1]);
    return out;
  };
  Form out(a.degree());
  if (a.degree() >= 1) out += alg.d(contract(a));
  if (a.degree() < kDim) out += contract(alg.d(a));
  return out;
}

namespace {

std::array<Scalar, kDim> x7_field(const ScaledAlgebra& alg) {
  std::array<Scalar, kDim> x;
  const auto& s = alg.scaling();
  x[6] = Scalar::monomial(-1, 1, -s.exponents[6], s.context);
  return x;
}

}  // namespace

Form lie_derivative_along_X7(const ScaledAlgebra& alg, const Form& phi) {
  return lie_derivative(alg, x7_field(alg), phi);
}

SolitonCertificate soliton_check(const AlgebraSpec& spec) {
  FlowSolution sol = solve_flow_parameters(spec);
  ScaledAlgebra alg(spec, sol.scaling());
  Form phi = canonical_phi<Scalar>();
  Form lhs = laplacian(alg, phi) - lie_derivative_along_X7(alg, phi);
  std::optional<Scalar> lambda;
  bool proportional = true;
  for (const auto& [idx, c] : lhs.terms()) {
    Scalar p = phi.coeff(idx);
    if (p.is_zero()) {
      proportional = false;
      break;
    }
    Scalar ratio = c * p.inverse();
    if (!lambda) lambda = ratio;
    else if (!(*lambda == ratio)) proportional = false;
  }
  if (lhs.terms().size() != phi.terms().size()) proportional = proportional && lhs.is_zero();
  if (!proportional || !lambda || !(lhs == phi.scaled(*lambda)))
    throw SolitonFailure(spec.name + ": Laplacian(phi) - L_X phi is not a multiple of phi", lhs);

  SolitonCertificate cert;
  cert.lambda = *lambda;
  Scalar normalized = *lambda * Scalar::monomial(1, -2, 2 * sol.beta[6], sol.context());
  auto constant = normalized.as_rational();
  if (!constant) throw SolitonFailure(spec.name + ": soliton constant is not of the form c m^2 / f_7^2", lhs);
  cert.lambda_over_u = *constant;
  cert.vector_field = x7_field(alg)[6];
  int sign = sgn(cert.lambda_over_u);
  cert.type = sign < 0 ? SolitonType::shrinking : sign > 0 ? SolitonType::expanding : SolitonType::steady;
  return cert;
}

namespace {

std::vector<Rational> sample_times(const TimeInterval& iv) {
  std::vector<Rational> out;
  for (long n : {-3, -1, 0, 1, 2}) {
    Rational t = make_rational(n, 37);
    if (iv.upper && t >= *iv.upper) continue;
    if (iv.lower && t <= *iv.lower) continue;
    out.push_back(t);
  }
  return out;
}

}  // namespace

std::vector<CheckResult> power_law_lemma_checks(const FlowSolution& sol) {
  const FrameScaling scaling = sol.scaling();
  ScaledAlgebra alg(sol.algebra, scaling);
  Form lap = laplacian(alg, canonical_phi<Scalar>());
  const auto& support = EpsilonTable::phi_support();
  std::vector<Scalar> delta;
  for (auto idx : support) delta.push_back(EpsilonTable::eps3(idx) > 0 ? lap.coeff(idx) : -lap.coeff(idx));

  CheckResult part1{sol.algebra.name, "lemma_part_i", true, {}};
  CheckResult part2{sol.algebra.name, "lemma_part_ii", true, {}};
  int pairs1 = 0, pairs2 = 0;
  const Scalar one = Scalar(1L).with_context(scaling.context);
  for (std::size_t a = 0; a < support.size(); ++a) {
    for (std::size_t b = a + 1; b < support.size(); ++b) {
      const MultiIndex ia = support[a], ib = support[b];
      Scalar fa = scaling.f(ia), fb = scaling.f(ib);
      // Part i with alpha' = Delta_b and beta' = Delta_a (coefficients of the common m^2 u^q factor).
      if (!delta[a].is_monomial() && !delta[a].is_zero()) continue;
      if (!delta[b].is_monomial() && !delta[b].is_zero()) continue;
      Rational da = delta[a].is_zero() ? Rational(0) : delta[a].terms()[0].coeff;
      Rational db = delta[b].is_zero() ? Rational(0) : delta[b].terms()[0].coeff;
      bool same_shape = delta[a].is_zero() || delta[b].is_zero() ||
                        (delta[a].terms()[0].m_pow == delta[b].terms()[0].m_pow &&
                         delta[a].terms()[0].u_pow == delta[b].terms()[0].u_pow);
      if (same_shape) {
        Rational alpha_p = sgn(da) == 0 && sgn(db) == 0 ? Rational(0) : (sgn(da) == 0 ? Rational(1) : db);
        Rational beta_p = sgn(da) == 0 ? Rational(0) : da;
        ++pairs1;
        if (!(fa.pow(alpha_p) == fb.pow(beta_p))) {
          part1.passed = false;
          part1.witness = "f_" + ia.to_string() + "^(" + to_string(alpha_p) + ") != f_" + ib.to_string() + "^(" +
                          to_string(beta_p) + ")";
        }
      }
      // Part ii where f Delta are proportional with a rational factor.
      Scalar ga = fa * delta[a], gb = fb * delta[b];
      if (ga.is_zero() || gb.is_zero() || !gb.is_monomial()) continue;
      auto ratio = (ga * gb.inverse()).as_rational();
      if (!ratio) continue;
      ++pairs2;
      // 1 * f_a Delta_a = ratio * f_b Delta_b  =>  (f_a - 1) = ratio (f_b - 1)
      bool ok = (fa - one) == Scalar(*ratio) * (fb - one);
      for (const auto& t : sample_times(sol.interval())) {
        double lhs = (fa - one).eval(Rational(1), t);
        double rhs = to_double(*ratio) * (fb - one).eval(Rational(1), t);
        ok = ok && std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs));
      }
      if (!ok) {
        part2.passed = false;
        part2.witness = "pair " + ia.to_string() + "/" + ib.to_string();
      }
    }
  }
  if (part1.passed) part1.witness = std::to_string(pairs1) + " pairs";
  if (part2.passed) part2.witness = std::to_string(pairs2) + " pairs";
  return {part1, part2};
}

namespace {

Form n2_phi() {
  Form phi(3);
  for (auto [idx, s] : std::initializer_list<std::pair<MultiIndex, long>>{{MultiIndex{1, 4, 7}, 1},
                                                                          {MultiIndex{2, 6, 7}, 1},
                                                                          {MultiIndex{3, 5, 7}, 1},
                                                                          {MultiIndex{1, 2, 3}, 1},
                                                                          {MultiIndex{1, 5, 6}, 1},
                                                                          {MultiIndex{2, 4, 5}, 1},
                                                                          {MultiIndex{3, 4, 6}, -1}})
    phi.add(idx, Scalar(s));
  return phi;
}

}  // namespace

std::vector<CheckResult> n2_example_check(const AlgebraSpec& n2) {
  const RingContext ctx{make_rational(10, 3), 0};
  const Rational fifth = make_rational(1, 5), tenth = make_rational(-1, 10);
  FrameScaling scaling{{fifth, fifth, fifth, tenth, tenth, tenth, tenth}, ctx};
  ScaledAlgebra alg(n2, scaling);
  Form phi = n2_phi();
  std::vector<CheckResult> out;
  Form dphi = alg.d(phi);
  out.push_back({n2.name, "closed_family", dphi.is_zero(), dphi});
  Form res = flow_residual(alg, phi);
  out.push_back({n2.name, "flow_residual", res.is_zero(), res});
  G2Structure initial(ScaledAlgebra(n2), phi);
  TorsionClass tc = classify_torsion(initial);
  out.push_back({n2.name, "initial_torsion_closed", tc.label == TorsionLabel::closed,
                 tc.name() + "; d*phi_0 = " + render(initial.algebra().d(initial.psi()))});
  return out;
}

std::vector<CheckResult> h7_example_check(const AlgebraSpec& h7, const std::vector<Rational>& times) {
  const RingContext ctx{make_rational(-5, 3), 0};
  const Rational b = make_rational(1, 10);
  FrameScaling scaling{{b, b, b, b, b, b, make_rational(-3, 10)}, ctx};
  ScaledAlgebra alg(h7, scaling);
  Form psi = canonical_psi<Scalar>();
  std::vector<CheckResult> out;
  for (const auto& t : times) {
    CheckResult r{h7.name, "coflow_residual_t=" + to_string(t), false, {}};
    try {
      double worst = max_abs(coflow_residual_numeric(alg, psi, 1.0, to_double(t)));
      r.passed = worst < 1e-9;
      std::ostringstream os;
      os.precision(3);
      os << "max |residual| = " << worst;
      r.witness = os.str();
    } catch (const std::domain_error& e) {
      r.witness = std::string(e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace g2flow
