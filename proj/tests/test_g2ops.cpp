#include "g2flow/flow.hpp"

#include "support/generators.hpp"

#include <doctest.h>

using namespace g2flow;
using g2flow::testing::Gen;
using g2flow::testing::r;

namespace {

const std::vector<AlgebraSpec>& catalog() {
  static const auto c = load_catalog();
  return c;
}

const AlgebraSpec& alg(const char* name) { return find_algebra(catalog(), name); }

Form x(std::initializer_list<int> idx, Scalar c = Scalar(1L)) { return Form::basis(MultiIndex(idx), std::move(c)); }

Scalar mono(const Rational& c, int m_pow, const Rational& u_pow, const RingContext& ctx) {
  return Scalar::monomial(c, m_pow, u_pow, ctx);
}

FrameScaling random_scaling(Gen& g) {
  std::array<Rational, kDim> beta;
  for (auto& b : beta) b = g.small_rational(2, 4);
  return {beta, RingContext{g.nonzero_rational(4, 3), 2}};
}

}  // namespace

TEST_CASE("metric of the canonical form is the identity") {
  CHECK(is_identity(metric_from_phi(canonical_phi<Scalar>())));
  Metric g = metric_from_phi(canonical_phi<Scalar>().scaled(Scalar(8L)));
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) CHECK(g[i][j] == Scalar(i == j ? 4L : 0L));
}

TEST_CASE("metric of the scaled cp1 form in the e-basis") {
  FlowSolution sol = solve_flow_parameters(alg("cp1"));
  FrameScaling s = sol.scaling();
  Metric g = metric_from_phi(x_to_e(canonical_phi<Scalar>(), s));
  for (int i = 0; i < kDim; ++i) {
    Rational q = i == 6 ? r(1) : r(3, 2);
    CHECK(g[i][i] == Scalar::u_power(q, s.context));
    for (int j = 0; j < kDim; ++j)
      if (i != j) CHECK(g[i][j].is_zero());
  }
}

TEST_CASE("numeric metric agrees with the exact one") {
  NumericForm phi = canonical_phi<double>().scaled(8.0);
  NumericMetric g = metric_from_phi(phi);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) CHECK(g[i][j] == doctest::Approx(i == j ? 4.0 : 0.0));
  Form off = canonical_phi<Scalar>() + x({1, 2, 4});
  CHECK_THROWS_AS(metric_from_phi(off), std::domain_error);
}

TEST_CASE("G2Structure validates the metric") {
  ScaledAlgebra a(alg("cp3"), FrameScaling::unit());
  CHECK_NOTHROW(G2Structure(a, canonical_phi<Scalar>()));
  CHECK_THROWS(G2Structure(a, canonical_phi<Scalar>().scaled(Scalar(8L))));
  G2Structure s = G2Structure::canonical(a);
  CHECK(s.psi() == hodge_star(s.phi()));
  CHECK(s.psi() == canonical_psi<Scalar>());
}

TEST_CASE("torsion classes") {
  CHECK(classify_torsion(G2Structure::canonical(ScaledAlgebra(alg("abelian"), FrameScaling::unit()))).label ==
        TorsionLabel::parallel);
  for (int s = 1; s <= 7; ++s) {
    std::string name = "cp" + std::to_string(s);
    TorsionClass tc = classify_torsion(G2Structure::canonical(ScaledAlgebra(alg(name.c_str()), FrameScaling::unit())));
    REQUIRE(tc.label == TorsionLabel::lcp);
    CHECK(*tc.lee_form == x({7}, Scalar::m_power(1)));
  }
}

TEST_CASE("lcp relations are derived, not tabulated") {
  auto text = [](const char* name) {
    std::vector<std::string> out;
    for (const auto& rel : lcp_conditions(alg(name))) out.push_back(rel.to_string());
    return out;
  };
  CHECK(text("cp1").empty());
  CHECK(text("cp2") == std::vector<std::string>{"f_17 = f_36"});
  CHECK(text("cp4") == std::vector<std::string>{"f_17 = f_36 = f_45", "f_27 = f_46"});
  CHECK(text("cp6") == std::vector<std::string>{"f_17 = f_36 = f_45", "f_27 = f_35 = f_46"});
  CHECK(text("cp7") == std::vector<std::string>{"f_17 = f_36", "f_23 = f_57", "f_26 = f_47"});
}

TEST_CASE("lcp relations are exactly the conditions for lcp scalings") {
  // A scaling violating a cp2 relation leaves the lcp class.
  std::array<Rational, kDim> beta{r(1), r(0), r(0), r(0), r(0), r(0), r(0)};
  FrameScaling bad{beta, RingContext{r(1), 2}};
  CHECK(classify_torsion(G2Structure::canonical(ScaledAlgebra(alg("cp2"), bad))).label != TorsionLabel::lcp);
  // cp1 has no relations: any scaling stays lcp.
  CHECK(classify_torsion(G2Structure::canonical(ScaledAlgebra(alg("cp1"), bad))).label == TorsionLabel::lcp);
}

TEST_CASE("codifferential examples") {
  ScaledAlgebra cp1(alg("cp1"), FrameScaling::unit());
  CHECK(codifferential(cp1, x({7})) == Form::constant(Scalar::monomial(-6, 1, 0)));
  ScaledAlgebra abelian(alg("abelian"), FrameScaling::unit());
  for (int i = 1; i <= kDim; ++i) CHECK(codifferential(abelian, x({i})).is_zero());
  CHECK_THROWS_AS(codifferential(cp1, Form::constant(Scalar(1L))), std::invalid_argument);
}

TEST_CASE("cp1 Laplacian of the canonical form") {
  ScaledAlgebra cp1(alg("cp1"), FrameScaling::unit());
  Scalar m2 = Scalar::m_power(2);
  Form expected = (x({1, 2, 7}) + x({3, 4, 7}) + x({5, 6, 7})).scaled(m2 * Scalar(-8L)) +
                  (x({1, 3, 5}) - x({1, 4, 6}) - x({2, 3, 6}) - x({2, 4, 5})).scaled(m2 * Scalar(-9L));
  CHECK(laplacian(cp1, canonical_phi<Scalar>()) == expected);
}

TEST_CASE("closed-form Laplacian coefficients") {
  auto cp1 = laplacian_coefficients_closed_form(alg("cp1"));
  CHECK(cp1.at(MultiIndex{1, 2, 7}) == Scalar::monomial(-8, 2, 0));
  CHECK(cp1.at(MultiIndex{1, 3, 5}) == Scalar::monomial(-9, 2, 0));
  CHECK(laplacian_coefficients_closed_form(alg("cp2")).at(MultiIndex{3, 4, 7}) == Scalar::monomial(r(-20, 3), 2, 0));
  CHECK(laplacian_coefficients_closed_form(alg("cp7")).at(MultiIndex{3, 4, 7}) == Scalar::monomial(-6, 2, 0));
}

TEST_CASE("cp2 Laplacian coefficient on x^127 along its lcp scaling") {
  FlowSolution sol = solve_flow_parameters(alg("cp2"));
  ScaledAlgebra a(alg("cp2"), sol.scaling());
  Form lap = laplacian(a, canonical_phi<Scalar>());
  CHECK(lap.coeff(MultiIndex{1, 2, 7}) == mono(r(-22, 3), 2, -1, sol.context()));
}

TEST_CASE("generic Laplacian agrees with the closed form for every cp algebra") {
  for (int s = 1; s <= 7; ++s) {
    const AlgebraSpec& spec = alg(("cp" + std::to_string(s)).c_str());
    FlowSolution sol = solve_flow_parameters(spec);
    Form lap = laplacian(ScaledAlgebra(spec, sol.scaling()), canonical_phi<Scalar>());
    Scalar f7 = Scalar::u_power(-2 * sol.beta[6], sol.context());
    Form expected(3);
    for (const auto& [idx, c] : laplacian_coefficients_closed_form(spec))
      expected.add(idx, Scalar(static_cast<long>(EpsilonTable::eps3(idx))) * c * f7);
    CHECK_MESSAGE(lap == expected, spec.name);
  }
}

TEST_CASE("property: delta^2 = 0, star commutes with the Laplacian, abelian Laplacian vanishes") {
  Gen g(41);
  const char* names[] = {"cp1", "cp2", "cp3", "cp4", "cp5", "cp6", "cp7", "n2", "abelian"};
  for (int n = 0; n < 200; ++n) {
    const AlgebraSpec& spec = alg(names[g.integer(0, 8)]);
    FrameScaling s = spec.cp_index() ? random_scaling(g) : FrameScaling::unit(RingContext{r(0), 0});
    ScaledAlgebra a(spec, s);
    int k = g.integer(1, 6);
    Form f = g.form(k, s.context, 3);
    if (k >= 2) CHECK(codifferential(a, codifferential(a, f)).is_zero());
    CHECK(hodge_star(laplacian(a, f)) == laplacian(a, hodge_star(f)));
    if (spec.name == "abelian") CHECK(laplacian(a, f).is_zero());
  }
}

TEST_CASE("property: lcp persists along any relation-respecting scaling") {
  Gen g(7);
  for (int n = 0; n < 60; ++n) {
    int s = g.integer(1, 7);
    const AlgebraSpec& spec = alg(("cp" + std::to_string(s)).c_str());
    auto rows = exponent_relations(lcp_conditions(spec));
    // Relations compare pairs of exponent sums, so a uniform shift preserves them.
    FlowSolution sol = solve_flow_parameters(spec);
    std::array<Rational, kDim> beta = sol.beta;
    Rational shift = g.small_rational(2, 3);
    for (auto& b : beta) b += shift;
    FrameScaling sc{beta, RingContext{g.nonzero_rational(3, 2), 2}};
    for (const auto& row : rows) {
      Rational v = 0;
      for (int i = 0; i < kDim; ++i) v += row[i] * beta[i];
      REQUIRE(sgn(v) == 0);
    }
    TorsionClass tc = classify_torsion(G2Structure::canonical(ScaledAlgebra(spec, sc)));
    REQUIRE(tc.label == TorsionLabel::lcp);
    CHECK(x_to_e(*tc.lee_form, sc) == x({7}, Scalar::m_power(1)));
  }
}

TEST_CASE("property: closed forms are never reported lcp") {
  ScaledAlgebra n2(alg("n2"), FrameScaling::unit(RingContext{r(0), 0}));
  Form phi0 = x({1, 4, 7}) + x({2, 6, 7}) + x({3, 5, 7}) + x({1, 2, 3}) + x({1, 5, 6}) + x({2, 4, 5}) - x({3, 4, 6});
  TorsionClass tc = classify_torsion(G2Structure(n2, phi0));
  CHECK(tc.label == TorsionLabel::closed);
  CHECK_FALSE(tc.lee_form.has_value());
}
