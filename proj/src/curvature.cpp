#include "g2flow/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <numeric>
#include <sstream>

namespace g2flow {

namespace {

template <class C>
BracketTable<C> connection_from(const BracketTable<C>& a) {
  C half;
  if constexpr (std::is_same_v<C, double>) half = 0.5;
  else half = C(make_rational(1, 2));
  BracketTable<C> g;
  for (int k = 1; k <= kDim; ++k)
    for (int i = 1; i <= kDim; ++i)
      for (int j = 1; j <= kDim; ++j) g(k, i, j) = half * (a(k, i, j) - a(i, j, k) + a(j, k, i));
  return g;
}

std::size_t offset(int i, int j, int k, int l) {
  return static_cast<std::size_t>((((i - 1) * kDim + (j - 1)) * kDim + (k - 1)) * kDim + (l - 1));
}

template <class C>
std::vector<C> components_from(const BracketTable<C>& a) {
  const auto g = connection_from(a);
  auto nz = [](const C& c) { return !detail::coeff_is_zero(c); };
  std::vector<C> r(static_cast<std::size_t>(kDim * kDim * kDim * kDim));
  for (int i = 1; i <= kDim; ++i) {
    for (int j = 1; j <= kDim; ++j) {
      for (int k = 1; k <= kDim; ++k) {
        for (int l = 1; l <= kDim; ++l) {
          C s{};
          for (int p = 1; p <= kDim; ++p) {
            if (nz(g(p, j, k)) && nz(g(l, i, p))) s += g(p, j, k) * g(l, i, p);
            if (nz(g(p, i, k)) && nz(g(l, j, p))) s -= g(p, i, k) * g(l, j, p);
            if (nz(a(p, i, j)) && nz(g(l, p, k))) s -= a(p, i, j) * g(l, p, k);
          }
          r[offset(i, j, k, l)] = s;
        }
      }
    }
  }
  return r;
}

}  // namespace

ConnectionTable levi_civita(const ScaledAlgebra& alg) { return connection_from(x_structure_constants(alg)); }

std::pair<Index4, int> canonical_index(const Index4& q) {
  auto [i, j, k, l] = q;
  const std::array<std::pair<Index4, int>, 8> variants{{{{i, j, k, l}, 1},
                                                        {{j, i, k, l}, -1},
                                                        {{i, j, l, k}, -1},
                                                        {{j, i, l, k}, 1},
                                                        {{k, l, i, j}, 1},
                                                        {{l, k, i, j}, -1},
                                                        {{k, l, j, i}, -1},
                                                        {{l, k, j, i}, 1}}};
  return *std::min_element(variants.begin(), variants.end(),
                           [](const auto& a, const auto& b) { return a.first < b.first; });
}

Scalar CurvatureTensor::operator()(int i, int j, int k, int l) const {
  if (i == j || k == l) return Scalar();
  auto [key, sign] = canonical_index({i, j, k, l});
  auto it = entries_.find(key);
  if (it == entries_.end()) return Scalar();
  return sign > 0 ? it->second : -it->second;
}

std::vector<Scalar> riemann_components(const ScaledAlgebra& alg) { return components_from(x_structure_constants(alg)); }

std::vector<double> riemann_components_numeric(const ScaledAlgebra& alg, double m, double t) {
  return components_from(BracketTable<double>::from_differential(alg.numeric_differential(m, t)));
}

double symmetry_residual(const std::vector<double>& c) {
  auto at = [&](int i, int j, int k, int l) { return c[offset(i, j, k, l)]; };
  double worst = 0.0;
  for (int i = 1; i <= kDim; ++i)
    for (int j = 1; j <= kDim; ++j)
      for (int k = 1; k <= kDim; ++k)
        for (int l = 1; l <= kDim; ++l) {
          double v = at(i, j, k, l);
          worst = std::max({worst, std::abs(v + at(j, i, k, l)), std::abs(v + at(i, j, l, k)),
                            std::abs(v - at(k, l, i, j)), std::abs(v + at(j, k, i, l) + at(k, i, j, l))});
        }
  return worst;
}

std::string symmetry_violation(const std::vector<Scalar>& c) {
  auto at = [&](int i, int j, int k, int l) -> const Scalar& { return c[offset(i, j, k, l)]; };
  for (int i = 1; i <= kDim; ++i)
    for (int j = 1; j <= kDim; ++j)
      for (int k = 1; k <= kDim; ++k)
        for (int l = 1; l <= kDim; ++l) {
          const Scalar& v = at(i, j, k, l);
          std::string where = "R_" + std::to_string(i) + std::to_string(j) + std::to_string(k) + std::to_string(l);
          if (!(v == -at(j, i, k, l))) return where + " != -R_jikl";
          if (!(v == -at(i, j, l, k))) return where + " != -R_ijlk";
          if (!(v == at(k, l, i, j))) return where + " != R_klij";
          if (!(v + at(j, k, i, l) + at(k, i, j, l)).is_zero()) return where + ": first Bianchi identity fails";
        }
  return {};
}

std::string bianchi_violation(const CurvatureTensor& r) {
  for (int i = 1; i <= kDim; ++i)
    for (int j = 1; j <= kDim; ++j)
      for (int k = 1; k <= kDim; ++k)
        for (int l = 1; l <= kDim; ++l) {
          Scalar s = r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l);
          if (!s.is_zero())
            return "R_" + std::to_string(i) + std::to_string(j) + std::to_string(k) + std::to_string(l) +
                   " + R_" + std::to_string(j) + std::to_string(k) + std::to_string(i) + std::to_string(l) +
                   " + R_" + std::to_string(k) + std::to_string(i) + std::to_string(j) + std::to_string(l) +
                   " = " + s.to_string();
        }
  return {};
}

CurvatureTensor riemann(const ScaledAlgebra& alg) {
  auto c = riemann_components(alg);
  if (auto bad = symmetry_violation(c); !bad.empty()) throw std::logic_error(alg.spec().name + ": " + bad);
  std::map<Index4, Scalar> entries;
  for (int i = 1; i <= kDim; ++i)
    for (int j = 1; j <= kDim; ++j)
      for (int k = 1; k <= kDim; ++k)
        for (int l = 1; l <= kDim; ++l) {
          const Scalar& v = c[offset(i, j, k, l)];
          if (v.is_zero()) continue;
          auto [key, sign] = canonical_index({i, j, k, l});
          if (key == Index4{i, j, k, l}) entries.emplace(key, v);
        }
  return CurvatureTensor(std::move(entries));
}

RicciData ricci(const CurvatureTensor& r) {
  RicciData out;
  for (int i = 1; i <= kDim; ++i)
    for (int j = 1; j <= kDim; ++j) {
      Scalar s;
      for (int k = 1; k <= kDim; ++k) s += r(k, i, j, k);
      out.ric[i - 1][j - 1] = s;
    }
  bool einstein = true;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      if (i != j && !out.ric[i][j].is_zero()) einstein = false;
      if (i == j && !(out.ric[i][i] == out.ric[0][0])) einstein = false;
    }
  if (einstein) out.einstein_constant = out.ric[0][0];
  return out;
}

RicciData ricci(const ScaledAlgebra& alg) { return ricci(riemann(alg)); }

Scalar scalar_curvature(const RicciData& ric) {
  Scalar s;
  for (int i = 0; i < kDim; ++i) s += ric.ric[i][i];
  return s;
}

bool flat_limit_check(const CurvatureTensor& r, TimeLimit direction) {
  for (const auto& [idx, v] : r.entries()) {
    const auto& ctx = v.context();
    if (!ctx) return false;
    int needed = direction == TimeLimit::to_minus_infinity ? -1 : 1;
    if (sgn(ctx->kappa) != needed || ctx->m_degree != 2) return false;
    for (const auto& t : v.terms())
      if (sgn(t.u_pow) >= 0) return false;
  }
  return true;
}

CurvatureUnit curvature_unit(const AlgebraSpec& spec) {
  mpz_class q = 1;
  for (const auto& e : spec.eta) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), e.get_den_mpz_t());
  if (q == 1) return {1, Rational(-6)};
  return {static_cast<int>(q.get_si()) - 1, Rational(-1, q.get_si())};
}

std::vector<TableEntry> parse_curvature_table(const std::string& text) {
  std::vector<TableEntry> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("curvature table line " + std::to_string(lineno) + ": missing ':'");
    std::istringstream head(line.substr(0, colon)), body(line.substr(colon + 1));
    std::string name, coeff;
    int which = 0;
    if (!(head >> name >> which >> coeff)) throw std::invalid_argument("curvature table line " + std::to_string(lineno) + ": bad header");
    Rational c = parse_rational(coeff);
    std::string tok;
    while (body >> tok) {
      int sign = 1;
      if (tok[0] == '-') {
        sign = -1;
        tok.erase(0, 1);
      }
      if (tok.size() != 4) throw std::invalid_argument("curvature table line " + std::to_string(lineno) + ": bad index " + tok);
      Index4 q{};
      for (int n = 0; n < 4; ++n) {
        q[n] = tok[n] - '0';
        if (q[n] < 1 || q[n] > kDim) throw std::invalid_argument("curvature table line " + std::to_string(lineno) + ": bad index " + tok);
      }
      out.push_back({name, which, sign * c, q});
    }
  }
  return out;
}

namespace {

Rational unit_coefficient(int which) {
  if (which == 1) return Rational(-6);
  return Rational(-1, which + 1);
}

std::string index_name(const Index4& q) {
  std::string s = "R_";
  for (int i : q) s += std::to_string(i);
  return s;
}

}  // namespace

CurvatureTensor tensor_from_table(const std::vector<TableEntry>& entries, const std::string& algebra,
                                  const RingContext& context) {
  std::map<Index4, Scalar> map;
  for (const auto& e : entries) {
    if (e.algebra != algebra) continue;
    auto [key, sign] = canonical_index(e.index);
    Scalar v = Scalar::monomial(sign * e.coeff * unit_coefficient(e.which), 2, -1, context);
    auto [it, inserted] = map.emplace(key, v);
    if (!inserted && !(it->second == v))
      throw std::invalid_argument(algebra + ": table entries disagree on " + index_name(key));
  }
  std::erase_if(map, [](const auto& kv) { return kv.second.is_zero(); });
  return CurvatureTensor(std::move(map));
}

TableComparison compare_tensors(const CurvatureTensor& computed, const CurvatureTensor& reference) {
  TableComparison out;
  std::map<Index4, std::pair<Scalar, Scalar>> all;
  for (const auto& [k, v] : computed.entries()) all[k].first = v;
  for (const auto& [k, v] : reference.entries()) all[k].second = v;
  for (const auto& [k, pair] : all) {
    if (pair.first == pair.second) continue;
    out.equal = false;
    out.differences.push_back(index_name(k) + ": computed " + pair.first.to_string() + ", reference " +
                              pair.second.to_string());
  }
  return out;
}

std::vector<std::pair<Index4, Rational>> table_rows(const CurvatureTensor& r, const CurvatureUnit& unit,
                                                    const RingContext& context) {
  Scalar c_inverse = Scalar::monomial(1 / unit.coefficient, -2, 1, context);
  std::vector<std::pair<Index4, Rational>> out;
  for (const auto& [k, v] : r.entries()) {
    auto q = (v * c_inverse).as_rational();
    if (!q) throw std::logic_error(index_name(k) + " is not a constant multiple of the curvature unit");
    out.emplace_back(k, *q);
  }
  return out;
}

RicciRatioCheck coflow_ricci_ratio_check(const AlgebraSpec& spec) {
  FlowSolution flow = solve_flow_parameters(spec);
  CoflowSolution coflow = flow_to_coflow(flow);
  RicciData rf = ricci(ScaledAlgebra(spec, flow.scaling()));
  RicciData rc = ricci(ScaledAlgebra(spec, coflow.scaling()));
  RicciRatioCheck out;
  out.passed = true;
  out.coflow_einstein = rc.einstein_constant.has_value();
  const std::array<std::pair<Rational, Rational>, 6> samples{{{Rational(1), Rational(0)},
                                                               {Rational(1), make_rational(1, 100)},
                                                               {Rational(2), make_rational(-1, 100)},
                                                               {make_rational(1, 2), make_rational(1, 50)},
                                                               {make_rational(3, 2), make_rational(-1, 60)},
                                                               {Rational(1), make_rational(-1, 30)}}};
  for (const auto& [m, t] : samples) {
    double u_flow = 1.0 - to_double(flow.alpha * m * m * t);
    double u_coflow = 1.0 - to_double(coflow.gamma * m * m * t);
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        double lhs = rc.ric[i][j].eval(m, t);
        double rhs = u_flow / u_coflow * rf.ric[i][j].eval(m, t);
        if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, std::abs(rhs))) {
          out.passed = false;
          std::ostringstream os;
          os << "Ric_" << i + 1 << j + 1 << " at m=" << to_string(m) << ", t=" << to_string(t) << ": " << lhs
             << " vs " << rhs;
          out.witness = os.str();
        }
      }
  }
  if (out.passed) out.witness = std::string("6 samples; coflow Einstein: ") + (out.coflow_einstein ? "yes" : "no");
  return out;
}

}  // namespace g2flow
