#pragma once

// G2-structures in the adapted x-basis: induced metric, torsion classes,
// locally conformal parallel conditions and the Hodge Laplacian.

#include "g2flow/liealg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace g2flow {

using Metric = std::array<std::array<Scalar, kDim>, kDim>;
using NumericMetric = std::array<std::array<double, kDim>, kDim>;

/// g = B * det(B)^(-1/9) with B_ij = (1/6) [i_i phi ^ i_j phi ^ phi]_{1234567}.
/// Exact mode needs B diagonal with single-term entries; otherwise throws std::domain_error.
Metric metric_from_phi(const Form& phi);
NumericMetric metric_from_phi(const NumericForm& phi);

bool is_identity(const Metric& g);

class G2Structure {
 public:
  /// Throws std::invalid_argument unless phi is a 3-form whose metric is the identity.
  G2Structure(ScaledAlgebra algebra, Form phi);
  static G2Structure canonical(ScaledAlgebra algebra);

  const ScaledAlgebra& algebra() const { return algebra_; }
  const Form& phi() const { return phi_; }
  const Form& psi() const { return psi_; }

 private:
  ScaledAlgebra algebra_;
  Form phi_;
  Form psi_;
};

enum class TorsionLabel { parallel, closed, coclosed, lcp, other };

struct TorsionClass {
  TorsionLabel label = TorsionLabel::other;
  /// The Lee form in the x-basis, present for lcp only.
  std::optional<Form> lee_form;

  std::string name() const;
};

TorsionClass classify_torsion(const G2Structure& s);

/// f_{P_1} = f_{P_2} = ... for index tuples P_r.
struct LcpRelation {
  std::vector<std::vector<int>> members;

  std::string to_string() const;
  friend bool operator==(const LcpRelation&, const LcpRelation&) = default;
};

/// Relations among the scaling functions that keep the canonical phi LCP with Lee form m e^7,
/// obtained by reducing d phi = 3 m e^7 ^ phi and d psi = 4 m e^7 ^ psi.
std::vector<LcpRelation> lcp_conditions(const AlgebraSpec& spec);

/// The relations as homogeneous linear equations in the exponents beta_1..beta_7.
std::vector<std::array<Rational, kDim>> exponent_relations(const std::vector<LcpRelation>& relations);

template <class C>
BasicForm<C> codifferential(const Differential<C>& d, const BasicForm<C>& a) {
  if (a.degree() == 0) throw std::invalid_argument("codifferential of a 0-form");
  BasicForm<C> r = hodge_star(d(hodge_star(a)));
  return a.degree() % 2 == 0 ? r : -r;
}

template <class C>
BasicForm<C> laplacian(const Differential<C>& d, const BasicForm<C>& a) {
  BasicForm<C> out(a.degree());
  if (a.degree() >= 1) out += d(codifferential(d, a));
  if (a.degree() < kDim) out += codifferential(d, d(a));
  return out;
}

Form codifferential(const ScaledAlgebra& alg, const Form& a);
Form laplacian(const ScaledAlgebra& alg, const Form& a);

/// f_7^2 Delta_ijk for (i,j,k) in A u B, as multiples of m^2. The Laplacian of the
/// canonical phi has coefficient eps(i,j,k) Delta_ijk on x^{ijk}.
std::map<MultiIndex, Scalar> laplacian_coefficients_closed_form(const AlgebraSpec& spec);

}  // namespace g2flow
