#include "g2flow/liealg.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef G2FLOW_CATALOG_DEFAULT
#define G2FLOW_CATALOG_DEFAULT "data/catalog.json"
#endif

namespace g2flow {

bool AlgebraSpec::numeric_only() const {
  return std::any_of(extra.begin(), extra.end(),
                     [](const ExtraConstant& e) { return std::holds_alternative<double>(e.value); });
}

int AlgebraSpec::cp_index() const {
  if (name.size() == 3 && name.starts_with("cp") && name[2] >= '1' && name[2] <= '7') return name[2] - '0';
  return 0;
}

std::vector<StructureEntry> structure_entries(const AlgebraSpec& spec) {
  std::vector<StructureEntry> out;
  for (int k = 1; k <= 6; ++k) {
    if (sgn(spec.eta[k - 1]) != 0) out.push_back({k, k, 7, spec.eta[k - 1], 1});
  }
  for (std::size_t n = 0; n < kC6Positions.size(); ++n) {
    if (sgn(spec.c6[n]) == 0) continue;
    auto [k, i, j] = kC6Positions[n];
    out.push_back({k, i, j, spec.c6[n], 1});
  }
  for (const auto& e : spec.extra) {
    StructureEntry s{e.k, e.i, e.j, e.value, 0};
    if (s.i > s.j) {
      std::swap(s.i, s.j);
      std::visit([](auto& v) { v = -v; }, s.value);
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

using nlohmann::json;

Rational rational_field(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw CatalogError(where + ": expected \"num/den\" string or integer");
}

std::array<Rational, 6> six(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 6) throw CatalogError(where + ": expected 6 entries");
  std::array<Rational, 6> out;
  for (std::size_t n = 0; n < 6; ++n) out[n] = rational_field(j[n], where);
  return out;
}

int frame_index(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw CatalogError(where + ": index must be an integer");
  int v = j.get<int>();
  if (v < 1 || v > kDim) throw CatalogError(where + ": index out of range 1..7");
  return v;
}

}  // namespace

std::vector<AlgebraSpec> parse_catalog(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw CatalogError(std::string("catalog is not valid JSON: ") + e.what());
  }
  if (!doc.contains("algebras") || !doc["algebras"].is_array()) throw CatalogError("catalog lacks an \"algebras\" array");
  std::vector<AlgebraSpec> out;
  for (const auto& rec : doc["algebras"]) {
    if (!rec.contains("name") || !rec["name"].is_string()) throw CatalogError("algebra record without a name");
    AlgebraSpec spec;
    spec.name = rec["name"].get<std::string>();
    const std::string where = "algebra " + spec.name;
    spec.eta = six(rec.value("eta", json::array({0, 0, 0, 0, 0, 0})), where + " eta");
    spec.c6 = six(rec.value("c6", json::array({0, 0, 0, 0, 0, 0})), where + " c6");
    for (const auto& e : rec.value("extra", json::array())) {
      if (!e.is_array() || e.size() != 4) throw CatalogError(where + ": extra entries are [k, i, j, value]");
      ExtraConstant c;
      c.k = frame_index(e[0], where);
      c.i = frame_index(e[1], where);
      c.j = frame_index(e[2], where);
      if (c.i == c.j) throw CatalogError(where + ": extra entry with i == j");
      if (e[3].is_number_float()) c.value = e[3].get<double>();
      else c.value = rational_field(e[3], where);
      spec.extra.push_back(std::move(c));
    }
    out.push_back(std::move(spec));
  }
  std::sort(out.begin(), out.end(), [](const AlgebraSpec& a, const AlgebraSpec& b) { return a.name < b.name; });
  for (std::size_t n = 1; n < out.size(); ++n) {
    if (out[n].name == out[n - 1].name) throw CatalogError("duplicate algebra " + out[n].name);
  }
  for (const auto& spec : out) {
    double r = jacobi_residual(spec);
    double tol = spec.numeric_only() ? 1e-12 : 0.0;
    if (r > tol) throw CatalogError("algebra " + spec.name + " violates d^2 = 0 (Jacobi)");
  }
  return out;
}

std::vector<AlgebraSpec> load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open catalog " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

std::filesystem::path default_catalog_path() {
  if (const char* env = std::getenv("G2FLOW_CATALOG"); env != nullptr && *env != '\0') return env;
  return G2FLOW_CATALOG_DEFAULT;
}

std::vector<AlgebraSpec> load_catalog() { return load_catalog(default_catalog_path()); }

const AlgebraSpec& find_algebra(const std::vector<AlgebraSpec>& catalog, std::string_view name) {
  for (const auto& spec : catalog)
    if (spec.name == name) return spec;
  throw UnknownAlgebra("unknown algebra: " + std::string(name));
}

bool FrameScaling::is_unit() const {
  return std::all_of(exponents.begin(), exponents.end(), [](const Rational& b) { return sgn(b) == 0; });
}

Scalar FrameScaling::f(int i) const { return Scalar::u_power(exponents.at(i - 1), context); }

Scalar FrameScaling::f(MultiIndex idx) const {
  Rational q = 0;
  for (int i : idx.indices()) q += exponents[i - 1];
  return Scalar::u_power(q, context);
}

Form x_to_e(const Form& a, const FrameScaling& s) {
  Form out(a.degree());
  for (const auto& [idx, c] : a.terms()) out.add(idx, c * s.f(idx));
  return out;
}

Form e_to_x(const Form& a, const FrameScaling& s) {
  Form out(a.degree());
  for (const auto& [idx, c] : a.terms()) out.add(idx, c * s.f(idx).inverse());
  return out;
}

namespace {

Rational x_exponent(const FrameScaling& s, int k, int i, int j) {
  return s.exponents[k - 1] - s.exponents[i - 1] - s.exponents[j - 1];
}

}  // namespace

ScaledAlgebra::ScaledAlgebra(AlgebraSpec spec, FrameScaling scaling)
    : spec_(std::move(spec)), scaling_(std::move(scaling)) {
  if (spec_.numeric_only()) return;
  std::array<Form, kDim> dx;
  for (auto& f : dx) f = Form(2);
  for (const auto& e : structure_entries(spec_)) {
    const Rational& v = std::get<Rational>(e.value);
    dx[e.k - 1].add(MultiIndex{e.i, e.j},
                    Scalar::monomial(v, e.m_pow, x_exponent(scaling_, e.k, e.i, e.j), scaling_.context));
  }
  exact_.emplace(std::move(dx));
}

const Differential<Scalar>& ScaledAlgebra::differential() const {
  if (!exact_) throw std::logic_error("algebra " + spec_.name + " requires numeric mode");
  return *exact_;
}

Differential<double> ScaledAlgebra::numeric_differential(double m, double t) const {
  std::array<NumericForm, kDim> dx;
  for (auto& f : dx) f = NumericForm(2);
  for (const auto& e : structure_entries(spec_)) {
    double v = std::visit([](const auto& x) {
      if constexpr (std::is_same_v<std::decay_t<decltype(x)>, double>) return x;
      else return to_double(x);
    }, e.value);
    double factor = Scalar::monomial(Rational(1), e.m_pow, x_exponent(scaling_, e.k, e.i, e.j), scaling_.context)
                        .eval(m, t);
    dx[e.k - 1].add(MultiIndex{e.i, e.j}, v * factor);
  }
  return Differential<double>(std::move(dx));
}

Form exterior_d(const ScaledAlgebra& alg, const Form& a) { return alg.d(a); }

BracketTable<Scalar> x_structure_constants(const ScaledAlgebra& alg) {
  return BracketTable<Scalar>::from_differential(alg.differential());
}

double jacobi_residual(const AlgebraSpec& spec) {
  ScaledAlgebra alg(spec);
  if (!spec.numeric_only()) {
    for (int k = 1; k <= kDim; ++k) {
      if (!alg.d(alg.d(Form::basis(MultiIndex{k}))).is_zero()) return 1.0;
    }
    return 0.0;
  }
  auto d = alg.numeric_differential(1.0, 0.0);
  double worst = 0.0;
  for (int k = 1; k <= kDim; ++k) worst = std::max(worst, max_abs(d(d(NumericForm::basis(MultiIndex{k})))));
  return worst;
}

}  // namespace g2flow
