#include "g2flow/g2ops.hpp"

#include "g2flow/linear.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace g2flow {

namespace {

template <class C>
C b_entry(const BasicForm<C>& phi, int i, int j) {
  BasicForm<C> top = wedge(wedge(interior(i, phi), interior(j, phi)), phi);
  return top.coeff(MultiIndex{1, 2, 3, 4, 5, 6, 7});
}

}  // namespace

Metric metric_from_phi(const Form& phi) {
  if (phi.degree() != 3) throw std::invalid_argument("metric_from_phi needs a 3-form");
  const Scalar sixth(make_rational(1, 6));
  Metric b;
  for (int i = 1; i <= kDim; ++i)
    for (int j = 1; j <= kDim; ++j) b[i - 1][j - 1] = sixth * b_entry(phi, i, j);
  Scalar det(1L);
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      if (i != j && !b[i][j].is_zero()) throw std::domain_error("non-diagonal metric requires numeric mode");
    }
    if (!b[i][i].is_monomial()) throw std::domain_error("non-monomial metric entry requires numeric mode");
    det *= b[i][i];
  }
  Scalar factor;
  try {
    factor = det.pow(make_rational(-1, 9));
  } catch (const std::domain_error&) {
    throw std::domain_error("metric normalization requires numeric mode");
  }
  for (auto& row : b)
    for (auto& v : row) v = v * factor;
  return b;
}

NumericMetric metric_from_phi(const NumericForm& phi) {
  if (phi.degree() != 3) throw std::invalid_argument("metric_from_phi needs a 3-form");
  NumericMetric b{};
  for (int i = 1; i <= kDim; ++i)
    for (int j = 1; j <= kDim; ++j) b[i - 1][j - 1] = b_entry(phi, i, j) / 6.0;
  NumericMetric lu = b;
  double det = 1.0;
  for (int c = 0; c < kDim; ++c) {
    int p = c;
    for (int r = c + 1; r < kDim; ++r)
      if (std::abs(lu[r][c]) > std::abs(lu[p][c])) p = r;
    if (lu[p][c] == 0.0) throw std::domain_error("degenerate 3-form");
    if (p != c) {
      std::swap(lu[p], lu[c]);
      det = -det;
    }
    det *= lu[c][c];
    for (int r = c + 1; r < kDim; ++r) {
      double f = lu[r][c] / lu[c][c];
      for (int k = c; k < kDim; ++k) lu[r][k] -= f * lu[c][k];
    }
  }
  double factor = std::cbrt(std::pow(std::abs(det), -1.0 / 3.0));
  if (det < 0) factor = -factor;
  for (auto& row : b)
    for (auto& v : row) v *= factor;
  return b;
}

bool is_identity(const Metric& g) {
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      if (!(g[i][j] == Scalar(i == j ? 1L : 0L))) return false;
  return true;
}

G2Structure::G2Structure(ScaledAlgebra algebra, Form phi)
    : algebra_(std::move(algebra)), phi_(std::move(phi)) {
  if (phi_.degree() != 3) throw std::invalid_argument("a G2-structure is given by a 3-form");
  if (!is_identity(metric_from_phi(phi_)))
    throw std::invalid_argument("the x-basis is not orthonormal for this 3-form");
  psi_ = hodge_star(phi_);
}

G2Structure G2Structure::canonical(ScaledAlgebra algebra) {
  return G2Structure(std::move(algebra), canonical_phi<Scalar>());
}

std::string TorsionClass::name() const {
  switch (label) {
    case TorsionLabel::parallel: return "parallel";
    case TorsionLabel::closed: return "closed";
    case TorsionLabel::coclosed: return "coclosed";
    case TorsionLabel::lcp: return "lcp";
    case TorsionLabel::other: return "other";
  }
  return "other";
}

TorsionClass classify_torsion(const G2Structure& s) {
  const ScaledAlgebra& alg = s.algebra();
  Form dphi = alg.d(s.phi());
  Form dpsi = alg.d(s.psi());
  if (dphi.is_zero() && dpsi.is_zero()) return {TorsionLabel::parallel, std::nullopt};
  if (dphi.is_zero()) return {TorsionLabel::closed, std::nullopt};
  if (dpsi.is_zero()) return {TorsionLabel::coclosed, std::nullopt};

  // 3 tau ^ phi = d phi and 4 tau ^ psi = d psi, tau = sum_i tau_i x^i.
  const auto& rows4 = MultiIndex::all_of_size(4);
  const auto& rows5 = MultiIndex::all_of_size(5);
  ScalarMatrix a;
  std::vector<Scalar> b;
  std::array<Form, kDim> tphi, tpsi;
  for (int i = 1; i <= kDim; ++i) {
    tphi[i - 1] = wedge(Form::basis(MultiIndex{i}), s.phi()).scaled(Scalar(3L));
    tpsi[i - 1] = wedge(Form::basis(MultiIndex{i}), s.psi()).scaled(Scalar(4L));
  }
  for (auto idx : rows4) {
    std::vector<Scalar> row;
    for (int i = 0; i < kDim; ++i) row.push_back(tphi[i].coeff(idx));
    a.push_back(std::move(row));
    b.push_back(dphi.coeff(idx));
  }
  for (auto idx : rows5) {
    std::vector<Scalar> row;
    for (int i = 0; i < kDim; ++i) row.push_back(tpsi[i].coeff(idx));
    a.push_back(std::move(row));
    b.push_back(dpsi.coeff(idx));
  }
  ScalarSolution sol;
  try {
    sol = solve_linear(std::move(a), std::move(b));
  } catch (const std::domain_error&) {
    return {TorsionLabel::other, std::nullopt};
  }
  if (!sol.consistent || sol.nullity != 0) return {TorsionLabel::other, std::nullopt};
  Form tau(1);
  for (int i = 1; i <= kDim; ++i) tau.add(MultiIndex{i}, sol.values[i - 1]);
  if (!alg.d(tau).is_zero()) return {TorsionLabel::other, std::nullopt};
  return {TorsionLabel::lcp, tau};
}

std::string LcpRelation::to_string() const {
  std::ostringstream os;
  for (std::size_t n = 0; n < members.size(); ++n) {
    if (n > 0) os << " = ";
    os << "f_";
    for (int i : members[n]) os << i;
  }
  return os.str();
}

namespace detail {

using Exponents = std::array<int, kDim>;

// Laurent polynomial in f_1..f_7 with rational coefficients.
class Laurent {
 public:
  Laurent() = default;
  Laurent(long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_[Exponents{}] = Rational(c);
  }
  static Laurent monomial(const Rational& c, const Exponents& e) {
    Laurent l;
    if (sgn(c) != 0) l.terms_[e] = c;
    return l;
  }

  const std::map<Exponents, Rational>& terms() const { return terms_; }

  Laurent operator-() const {
    Laurent out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) {
    for (const auto& [e, c] : b.terms_) a.accumulate(e, c);
    return a;
  }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e;
        for (int i = 0; i < kDim; ++i) e[i] = ea[i] + eb[i];
        out.accumulate(e, ca * cb);
      }
    }
    return out;
  }
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }
  friend bool is_zero(const Laurent& l) { return l.terms_.empty(); }

 private:
  void accumulate(const Exponents& e, const Rational& c) {
    Rational& slot = terms_[e];
    slot += c;
    if (sgn(slot) == 0) terms_.erase(e);
  }

  std::map<Exponents, Rational> terms_;
};

Exponents unit_vector(int i, int power = 1) {
  Exponents e{};
  e[i - 1] = power;
  return e;
}

// Generic-f differential: dx^k contains c m f_k/(f_i f_j) x^{ij}; the common m is dropped.
Differential<Laurent> generic_differential(const AlgebraSpec& spec) {
  std::array<BasicForm<Laurent>, kDim> dx;
  for (auto& f : dx) f = BasicForm<Laurent>(2);
  for (const auto& e : structure_entries(spec)) {
    Exponents ex{};
    ex[e.k - 1] += 1;
    ex[e.i - 1] -= 1;
    ex[e.j - 1] -= 1;
    dx[e.k - 1].add(MultiIndex{e.i, e.j}, Laurent::monomial(std::get<Rational>(e.value), ex));
  }
  return Differential<Laurent>(std::move(dx));
}

using Relation = std::array<Rational, kDim>;

class RelationSpan {
 public:
  const std::vector<Relation>& basis() const { return rows_; }

  bool contains(const Relation& v) const {
    RationalMatrix m;
    for (const auto& r : rows_) m.emplace_back(r.begin(), r.end());
    int before = matrix_rank(m);
    m.emplace_back(v.begin(), v.end());
    return matrix_rank(std::move(m)) == before;
  }
  bool add(const Relation& v) {
    if (contains(v)) return false;
    rows_.push_back(v);
    return true;
  }

 private:
  std::vector<Relation> rows_;
};

Relation difference(const Exponents& a, const Exponents& b) {
  Relation r;
  for (int i = 0; i < kDim; ++i) r[i] = a[i] - b[i];
  return r;
}

// Reduces the system sum_r c_r f^{v_r} = 0 (each equation) to relations f^v = 1,
// using f_i(0) = 1 and positivity.
RelationSpan reduce_equations(std::vector<Laurent> equations, const std::string& name) {
  RelationSpan span;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Laurent> pending;
    for (const auto& eq : equations) {
      std::vector<std::pair<Exponents, Rational>> classes;
      for (const auto& [e, c] : eq.terms()) {
        auto it = std::find_if(classes.begin(), classes.end(),
                               [&](const auto& cl) { return span.contains(difference(cl.first, e)); });
        if (it == classes.end()) classes.emplace_back(e, c);
        else it->second += c;
      }
      std::erase_if(classes, [](const auto& cl) { return sgn(cl.second) == 0; });
      if (classes.empty()) continue;
      if (classes.size() == 1) throw std::logic_error(name + ": LCP system has no solution");
      if (classes.size() == 2) {
        if (classes[0].second != -classes[1].second)
          throw std::logic_error(name + ": LCP system forces a constant ratio other than 1");
        span.add(difference(classes[0].first, classes[1].first));
        changed = true;
        continue;
      }
      pending.push_back(eq);
    }
    equations = std::move(pending);
  }
  if (!equations.empty()) throw std::logic_error(name + ": LCP system could not be reduced to monomial relations");
  return span;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

std::vector<LcpRelation> lcp_conditions(const AlgebraSpec& spec) {
  using detail::Laurent;
  if (spec.cp_index() == 0) throw std::invalid_argument("lcp_conditions supports cp1..cp7 only, got " + spec.name);
  auto d = detail::generic_differential(spec);
  auto phi = canonical_phi<Laurent>();
  auto psi = canonical_psi<Laurent>();
  // m e^7 = m f_7^{-1} x^7
  auto lee = BasicForm<Laurent>::basis(MultiIndex{7}, Laurent::monomial(Rational(1), detail::unit_vector(7, -1)));
  auto r3 = d(phi) - wedge(lee, phi).scaled(Laurent(3));
  auto r4 = d(psi) - wedge(lee, psi).scaled(Laurent(4));
  std::vector<Laurent> equations;
  for (const auto& [idx, c] : r3.terms()) equations.push_back(c);
  for (const auto& [idx, c] : r4.terms()) equations.push_back(c);
  detail::RelationSpan span = detail::reduce_equations(std::move(equations), spec.name);

  // Each derived relation f^v = 1 reads f_P = f_N with P, N the positive and negative parts of v;
  // relations sharing a side are chained.
  std::vector<std::vector<int>> keys;
  std::vector<std::pair<int, int>> links;
  auto key_of = [&](const std::vector<int>& k) {
    auto it = std::find(keys.begin(), keys.end(), k);
    if (it != keys.end()) return static_cast<int>(it - keys.begin());
    keys.push_back(k);
    return static_cast<int>(keys.size()) - 1;
  };
  for (const auto& v : span.basis()) {
    std::vector<int> lhs, rhs;
    for (int i = 1; i <= kDim; ++i) {
      long e = v[i - 1].get_num().get_si();
      for (long n = 0; n < std::abs(e); ++n) (e > 0 ? lhs : rhs).push_back(i);
    }
    links.emplace_back(key_of(lhs), key_of(rhs));
  }
  detail::UnionFind uf(static_cast<int>(keys.size()));
  for (auto [a, b] : links) uf.unite(a, b);
  std::vector<LcpRelation> out;
  for (int a = 0; a < static_cast<int>(keys.size()); ++a) {
    LcpRelation rel;
    bool is_root = true;
    for (int b = 0; b < static_cast<int>(keys.size()); ++b) {
      if (uf.find(b) != uf.find(a)) continue;
      if (b < a) is_root = false;
      rel.members.push_back(keys[b]);
    }
    if (!is_root) continue;
    std::sort(rel.members.begin(), rel.members.end());
    out.push_back(std::move(rel));
  }
  std::sort(out.begin(), out.end(),
            [](const LcpRelation& a, const LcpRelation& b) { return a.members.front() < b.members.front(); });
  return out;
}

std::vector<std::array<Rational, kDim>> exponent_relations(const std::vector<LcpRelation>& relations) {
  std::vector<std::array<Rational, kDim>> out;
  for (const auto& rel : relations) {
    for (std::size_t n = 1; n < rel.members.size(); ++n) {
      std::array<Rational, kDim> row{};
      for (int i : rel.members[0]) row[i - 1] += 1;
      for (int i : rel.members[n]) row[i - 1] -= 1;
      out.push_back(row);
    }
  }
  return out;
}

Form codifferential(const ScaledAlgebra& alg, const Form& a) { return codifferential(alg.differential(), a); }

Form laplacian(const ScaledAlgebra& alg, const Form& a) { return laplacian(alg.differential(), a); }

std::map<MultiIndex, Scalar> laplacian_coefficients_closed_form(const AlgebraSpec& spec) {
  const int s = spec.cp_index();
  if (s == 0) throw std::invalid_argument("closed-form Laplacian coefficients exist for cp1..cp7 only, got " + spec.name);
  auto delta = [s](int k) { return Rational(s == k ? 1 : 0); };
  const auto& h = spec.eta;  // h[k-1] = eta_k / m
  auto q = [](long n, long d) { return make_rational(n, d); };
  std::map<MultiIndex, Rational> v;
  v[MultiIndex{1, 2, 7}] = 3 * (4 + h[2] + h[3] + h[4] + h[5]) + 4 * (h[0] + h[1]);
  v[MultiIndex{3, 4, 7}] = q(6, 5) * delta(7) + 4 * (h[2] + h[3]);
  v[MultiIndex{5, 6, 7}] = q(6, 5) * delta(7) + 4 * (h[4] + h[5]);
  v[MultiIndex{1, 3, 5}] = q(4, 3) * delta(6) + 3 * (h[1] + h[3] + h[5]);
  v[MultiIndex{1, 4, 6}] = q(8, 5) * delta(4) + 2 * delta(5) + q(4, 3) * delta(6) + 3 * (h[1] + h[2] + h[4]);
  v[MultiIndex{2, 3, 6}] = q(8, 3) * delta(2) + 2 * delta(3) + q(8, 5) * delta(4) + q(4, 3) * delta(6) +
                           q(24, 5) * delta(7) + 3 * (h[0] + h[3] + h[4]);
  v[MultiIndex{2, 4, 5}] = 2 * delta(3) + q(8, 5) * delta(4) + 2 * delta(5) + q(4, 3) * delta(6) +
                           3 * (h[0] + h[2] + h[5]);
  std::map<MultiIndex, Scalar> out;
  for (const auto& [idx, c] : v) out.emplace(idx, Scalar::monomial(c, 2, 0));
  return out;
}

}  // namespace g2flow
