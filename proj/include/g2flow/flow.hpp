#pragma once

// Laplacian flow and coflow of the canonical G2-structure under the power-law
// ansatz x^i = f_i e^i, f_i = u^{b_i}, u = 1 + kappa m^2 t.

#include "g2flow/check.hpp"
#include "g2flow/g2ops.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2flow {

/// Open time interval on which u = 1 - a m^2 t stays positive; bounds in units of 1/m^2.
struct TimeInterval {
  std::optional<Rational> lower;
  std::optional<Rational> upper;

  static TimeInterval where_positive(const Rational& a);
  std::string to_string() const;
};

/// f_i = (1 - alpha m^2 t)^{beta_i}.
struct FlowSolution {
  AlgebraSpec algebra;
  Rational alpha;
  std::array<Rational, kDim> beta{};

  RingContext context() const { return {-alpha, 2}; }
  FrameScaling scaling() const { return {beta, context()}; }
  TimeInterval interval() const { return TimeInterval::where_positive(alpha); }
};

/// f~_i = (1 - gamma m^2 t)^{delta_i}.
struct CoflowSolution {
  AlgebraSpec algebra;
  Rational gamma;
  std::array<Rational, kDim> delta{};

  RingContext context() const { return {-gamma, 2}; }
  FrameScaling scaling() const { return {delta, context()}; }
  TimeInterval interval() const { return TimeInterval::where_positive(gamma); }
};

enum class SolitonType { shrinking, steady, expanding };

std::string to_string(SolitonType t);

struct SolitonCertificate {
  Scalar lambda;
  /// lambda = lambda_over_u * m^2 / f_7^2.
  Rational lambda_over_u;
  /// The coefficient c of X = c x_7, i.e. -(m / f_7).
  Scalar vector_field;
  SolitonType type = SolitonType::steady;
};

/// Time derivative of a form whose x-basis coefficients are given; differentiates
/// the e-basis coefficients and returns the result in the x-basis.
Form time_derivative(const Form& x_form, const FrameScaling& scaling);

/// d phi/dt - Laplacian(phi) for phi written in the x-basis of alg.
Form flow_residual(const ScaledAlgebra& alg, const Form& phi);
/// d psi/dt + Laplacian(psi) for psi written in the x-basis of alg.
Form coflow_residual(const ScaledAlgebra& alg, const Form& psi);
/// Floating version for numeric-only algebras.
NumericForm coflow_residual_numeric(const ScaledAlgebra& alg, const Form& psi, double m, double t);

Form flow_residual(const AlgebraSpec& spec, const FlowSolution& sol);
Form coflow_residual(const AlgebraSpec& spec, const CoflowSolution& sol);

/// Solves the ansatz equations together with the LCP exponent relations exactly.
/// Throws std::runtime_error when the linear system is singular or inconsistent.
FlowSolution solve_flow_parameters(const AlgebraSpec& spec);

/// Throws std::domain_error when the exponent sum equals 2.
CoflowSolution flow_to_coflow(const FlowSolution& sol);
FlowSolution coflow_to_flow(const CoflowSolution& sol);

/// L_X a for the left-invariant field X = sum_p x[p-1] x_p.
Form lie_derivative(const ScaledAlgebra& alg, const std::array<Scalar, kDim>& x, const Form& a);
/// The same through Cartan's formula d i_X + i_X d.
Form lie_derivative_cartan(const ScaledAlgebra& alg, const std::array<Scalar, kDim>& x, const Form& a);
/// X = -(m / f_7) x_7.
Form lie_derivative_along_X7(const ScaledAlgebra& alg, const Form& phi);

class SolitonFailure : public std::runtime_error {
 public:
  SolitonFailure(const std::string& what, Form residual) : std::runtime_error(what), residual_(std::move(residual)) {}
  const Form& residual() const { return residual_; }

 private:
  Form residual_;
};

/// Certifies Laplacian(phi) - L_X phi = lambda phi along the solved flow.
SolitonCertificate soliton_check(const AlgebraSpec& spec);

/// Both parts of the Delta_ijk lemma on the given solution.
std::vector<CheckResult> power_law_lemma_checks(const FlowSolution& sol);

/// The closed warm-up flow on n2.
std::vector<CheckResult> n2_example_check(const AlgebraSpec& n2);
/// The numeric warm-up coflow on h7 at the given times.
std::vector<CheckResult> h7_example_check(const AlgebraSpec& h7, const std::vector<Rational>& times);

}  // namespace g2flow
