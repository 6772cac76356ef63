#pragma once

// Catalog of seven-dimensional Lie algebras given by structure constants in a
// fixed coframe, the rescaled coframe x^i = f_i e^i with f_i = u^{beta_i}, and
// the Chevalley-Eilenberg differential in that coframe.
//
// Sign convention: d alpha(X, Y) = -alpha([X, Y]) for invariant 1-forms.

#include "g2flow/exterior.hpp"

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace g2flow {

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownAlgebra : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using ConstantValue = std::variant<Rational, double>;

/// de^k contains value * e^{ij}; a double value marks a numeric-only algebra.
struct ExtraConstant {
  int k = 0;
  int i = 0;
  int j = 0;
  ConstantValue value;
};

struct AlgebraSpec {
  std::string name;
  /// eta_k / m, the eigenvalues of the derivation acting as ad(e_7).
  std::array<Rational, 6> eta{};
  /// (c^1_36, c^1_45, c^2_35, c^2_46, c^4_26, c^5_23) / m.
  std::array<Rational, 6> c6{};
  /// Additional constants without an m factor.
  std::vector<ExtraConstant> extra;

  bool numeric_only() const;
  /// s for the catalog entries cp1..cp7, 0 for everything else.
  int cp_index() const;
};

/// One normalized entry de^k ∋ value * m^{m_pow} e^{ij} with i < j.
struct StructureEntry {
  int k = 0;
  int i = 0;
  int j = 0;
  ConstantValue value;
  int m_pow = 0;
};

std::vector<StructureEntry> structure_entries(const AlgebraSpec& spec);

/// Positions of the six c6 constants as (k, i, j).
inline constexpr std::array<std::array<int, 3>, 6> kC6Positions = {
    {{1, 3, 6}, {1, 4, 5}, {2, 3, 5}, {2, 4, 6}, {4, 2, 6}, {5, 2, 3}}};

std::vector<AlgebraSpec> parse_catalog(std::string_view json_text);
/// Loads, validates (d^2 = 0) and sorts by name.
std::vector<AlgebraSpec> load_catalog(const std::filesystem::path& path);
/// G2FLOW_CATALOG if set, otherwise the catalog shipped with the sources.
std::vector<AlgebraSpec> load_catalog();
std::filesystem::path default_catalog_path();

const AlgebraSpec& find_algebra(const std::vector<AlgebraSpec>& catalog, std::string_view name);

/// Chevalley-Eilenberg differential determined by the images of the coframe.
template <class C>
class Differential {
 public:
  Differential() {
    for (auto& f : dx_) f = BasicForm<C>(2);
  }
  explicit Differential(std::array<BasicForm<C>, kDim> dx) : dx_(std::move(dx)) {
    for (const auto& f : dx_)
      if (f.degree() != 2) throw std::invalid_argument("coframe differential must be a 2-form");
  }

  const BasicForm<C>& of_coframe(int k) const { return dx_.at(k - 1); }

  BasicForm<C> operator()(const BasicForm<C>& a) const {
    if (a.degree() >= kDim) throw std::invalid_argument("exterior derivative of a top form");
    BasicForm<C> out(a.degree() + 1);
    std::vector<int> seq;
    for (const auto& [idx, c] : a.terms()) {
      const auto pos = idx.indices();
      for (std::size_t p = 0; p < pos.size(); ++p) {
        MultiIndex rest = idx.without(pos[p]);
        for (const auto& [j, v] : dx_[pos[p] - 1].terms()) {
          if (!j.disjoint(rest)) continue;
          seq.assign(pos.begin(), pos.begin() + static_cast<long>(p));
          for (int x : j.indices()) seq.push_back(x);
          seq.insert(seq.end(), pos.begin() + static_cast<long>(p) + 1, pos.end());
          C term = c * v;
          int sign = sequence_sign(seq) * (p % 2 == 0 ? 1 : -1);
          out.add(MultiIndex::from_mask(rest.mask() | j.mask()), sign > 0 ? term : -term);
        }
      }
    }
    return out;
  }

 private:
  std::array<BasicForm<C>, kDim> dx_;
};

/// a^k_{ij} with [x_i, x_j] = sum_k a^k_{ij} x_k (1-based).
template <class C>
class BracketTable {
 public:
  BracketTable() : a_(kDim * kDim * kDim) {}

  const C& operator()(int k, int i, int j) const { return a_[offset(k, i, j)]; }
  C& operator()(int k, int i, int j) { return a_[offset(k, i, j)]; }

  static BracketTable from_differential(const Differential<C>& d) {
    BracketTable t;
    for (int k = 1; k <= kDim; ++k) {
      for (const auto& [idx, v] : d.of_coframe(k).terms()) {
        auto ij = idx.indices();
        t(k, ij[0], ij[1]) = -v;
        t(k, ij[1], ij[0]) = v;
      }
    }
    return t;
  }

 private:
  static std::size_t offset(int k, int i, int j) {
    return static_cast<std::size_t>(((k - 1) * kDim + (i - 1)) * kDim + (j - 1));
  }
  std::vector<C> a_;
};

/// x^i = f_i e^i with f_i = u^{beta_i}; f_i(0) = 1 automatically.
struct FrameScaling {
  std::array<Rational, kDim> exponents{};
  RingContext context;

  static FrameScaling unit(RingContext context = {}) { return FrameScaling{{}, std::move(context)}; }
  bool is_unit() const;
  Scalar f(int i) const;
  Scalar f(MultiIndex idx) const;
};

/// Rewrites a form given in the x-basis in the time-independent e-basis (and back).
Form x_to_e(const Form& a, const FrameScaling& s);
Form e_to_x(const Form& a, const FrameScaling& s);

class ScaledAlgebra {
 public:
  explicit ScaledAlgebra(AlgebraSpec spec, FrameScaling scaling = FrameScaling::unit());

  const AlgebraSpec& spec() const { return spec_; }
  const FrameScaling& scaling() const { return scaling_; }
  bool numeric_only() const { return spec_.numeric_only(); }

  /// Exact differential in the x-basis; throws std::logic_error for numeric-only algebras.
  const Differential<Scalar>& differential() const;
  /// Floating differential in the x-basis at the given (m, t).
  Differential<double> numeric_differential(double m, double t) const;

  Form d(const Form& a) const { return differential()(a); }

 private:
  AlgebraSpec spec_;
  FrameScaling scaling_;
  std::optional<Differential<Scalar>> exact_;
};

Form exterior_d(const ScaledAlgebra& alg, const Form& a);
BracketTable<Scalar> x_structure_constants(const ScaledAlgebra& alg);

/// Largest |d(d x^k)| coefficient over k (0 for exact algebras satisfying Jacobi).
double jacobi_residual(const AlgebraSpec& spec);

}  // namespace g2flow
