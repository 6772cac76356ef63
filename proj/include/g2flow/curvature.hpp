#pragma once

// Levi-Civita connection and curvature of the left-invariant metric making the
// x-basis orthonormal, computed at frozen t.

#include "g2flow/flow.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace g2flow {

/// gamma(k, i, j) = <nabla_{x_i} x_j, x_k>.
using ConnectionTable = BracketTable<Scalar>;

ConnectionTable levi_civita(const ScaledAlgebra& alg);

using Index4 = std::array<int, 4>;

/// Lexicographically least index tuple among the eight obtained from the pair
/// symmetries, with the sign relating it to the input.
std::pair<Index4, int> canonical_index(const Index4& q);

/// R_ijkl = g(R(x_i, x_j) x_k, x_l), stored by canonical representative.
class CurvatureTensor {
 public:
  CurvatureTensor() = default;
  explicit CurvatureTensor(std::map<Index4, Scalar> canonical) : entries_(std::move(canonical)) {}

  /// Nonzero entries keyed by canonical index tuple.
  const std::map<Index4, Scalar>& entries() const { return entries_; }
  Scalar operator()(int i, int j, int k, int l) const;
  bool is_zero() const { return entries_.empty(); }

 private:
  std::map<Index4, Scalar> entries_;
};

/// All 7^4 components computed directly (no symmetry assumed), index ((i*7+j)*7+k)*7+l, 0-based.
std::vector<Scalar> riemann_components(const ScaledAlgebra& alg);

/// Throws std::logic_error if the components violate a pair symmetry.
CurvatureTensor riemann(const ScaledAlgebra& alg);

/// Largest failure of the pair symmetries and first Bianchi identity, as a witness string; empty if none.
std::string symmetry_violation(const std::vector<Scalar>& components);
/// Floating components at (m, t); the only route for numeric-only algebras.
std::vector<double> riemann_components_numeric(const ScaledAlgebra& alg, double m, double t);
/// Largest defect among the pair symmetries and the first Bianchi identity.
double symmetry_residual(const std::vector<double>& components);
std::string bianchi_violation(const CurvatureTensor& r);

struct RicciData {
  Metric ric;
  std::optional<Scalar> einstein_constant;
};

/// Ric_ij = sum_k R_kijk.
RicciData ricci(const CurvatureTensor& r);
RicciData ricci(const ScaledAlgebra& alg);

Scalar scalar_curvature(const RicciData& ric);

enum class TimeLimit { to_minus_infinity, to_plus_infinity };

bool flat_limit_check(const CurvatureTensor& r, TimeLimit direction);

/// The curvature unit C_n = c m^2 / u used by the reference tables: n = 1 when all eta are
/// integers (c = -6), otherwise n = q - 1 for the common eta denominator q (c = -1/q).
struct CurvatureUnit {
  int which = 0;
  Rational coefficient;
};

CurvatureUnit curvature_unit(const AlgebraSpec& spec);

/// One reference curvature entry: R_ijkl = coeff * C_which.
struct TableEntry {
  std::string algebra;
  int which = 0;
  Rational coeff;
  Index4 index{};
};

/// Lines "cpN which coeff : ijkl -ijkl ..." ('#' comments); a leading '-' negates the entry.
std::vector<TableEntry> parse_curvature_table(const std::string& text);

/// Builds the tensor the entries describe for one algebra in the given ring context.
/// Throws std::invalid_argument if two entries contradict each other.
CurvatureTensor tensor_from_table(const std::vector<TableEntry>& entries, const std::string& algebra,
                                  const RingContext& context);

struct TableComparison {
  bool equal = true;
  /// Canonical entries where the computed and reference values differ.
  std::vector<std::string> differences;
};

TableComparison compare_tensors(const CurvatureTensor& computed, const CurvatureTensor& reference);

/// Coefficients over C for rendering, in canonical index order.
std::vector<std::pair<Index4, Rational>> table_rows(const CurvatureTensor& r, const CurvatureUnit& unit,
                                                    const RingContext& context);

struct RicciRatioCheck {
  bool passed = false;
  bool coflow_einstein = false;
  std::string witness;
};

/// Ric(coflow metric) = (u_flow / u_coflow) Ric(flow metric), compared at sampled (m, t).
RicciRatioCheck coflow_ricci_ratio_check(const AlgebraSpec& spec);

}  // namespace g2flow
