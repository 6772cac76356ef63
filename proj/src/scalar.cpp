#include "g2flow/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

namespace g2flow {
namespace {

bool term_less(const Term& a, const Term& b) {
  if (a.m_pow != b.m_pow) return a.m_pow < b.m_pow;
  return a.u_pow < b.u_pow;
}

bool same_monomial(const Term& a, const Term& b) {
  return a.m_pow == b.m_pow && a.u_pow == b.u_pow;
}

std::optional<RingContext> merge_contexts(const std::optional<RingContext>& a,
                                          const std::optional<RingContext>& b) {
  if (!a) return b;
  if (!b) return a;
  if (!(*a == *b)) {
    throw ContextMismatch("scalars from different ring contexts (kappa " + to_string(a->kappa) +
                          " vs " + to_string(b->kappa) + ")");
  }
  return a;
}

bool has_u_terms(const std::vector<Term>& terms) {
  return std::any_of(terms.begin(), terms.end(), [](const Term& t) { return sgn(t.u_pow) != 0; });
}

}  // namespace

Scalar::Scalar(long value) {
  if (value != 0) terms_.push_back(Term{Rational(value), 0, Rational(0)});
}

Scalar::Scalar(const Rational& value) {
  if (sgn(value) != 0) terms_.push_back(Term{value, 0, Rational(0)});
}

Scalar::Scalar(std::vector<Term> terms, std::optional<RingContext> context)
    : terms_(std::move(terms)), context_(std::move(context)) {
  normalize();
}

Scalar Scalar::monomial(const Rational& coeff, int m_pow, const Rational& u_pow,
                        std::optional<RingContext> context) {
  if (sgn(u_pow) != 0 && !context) {
    throw std::invalid_argument("u-dependent monomial requires a ring context");
  }
  return Scalar({Term{coeff, m_pow, u_pow}}, std::move(context));
}

Scalar Scalar::u_power(const Rational& q, const RingContext& context) {
  return monomial(Rational(1), 0, q, context);
}

Scalar Scalar::m_power(int p) { return monomial(Rational(1), p, Rational(0)); }

void Scalar::normalize() {
  for (auto& t : terms_) {
    t.coeff.canonicalize();
    t.u_pow.canonicalize();
  }
  std::sort(terms_.begin(), terms_.end(), term_less);
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && same_monomial(merged.back(), t)) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return sgn(t.coeff) == 0; });
  terms_ = std::move(merged);
}

std::optional<Rational> Scalar::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].m_pow == 0 && sgn(terms_[0].u_pow) == 0) {
    return terms_[0].coeff;
  }
  return std::nullopt;
}

Scalar Scalar::with_context(const RingContext& context) const {
  return Scalar(terms_, merge_contexts(context_, context));
}

Scalar Scalar::inverse() const {
  if (!is_monomial()) throw std::domain_error("inverse of non-monomial scalar " + to_string());
  const Term& t = terms_[0];
  return Scalar({Term{1 / t.coeff, -t.m_pow, -t.u_pow}}, context_);
}

Scalar Scalar::pow(const Rational& exponent) const {
  if (exponent == 0) return Scalar({Term{Rational(1), 0, Rational(0)}}, context_);
  if (!is_monomial()) throw std::domain_error("power of non-monomial scalar " + to_string());
  const Term& t = terms_[0];
  Rational m_exp = exponent * t.m_pow;
  if (m_exp.get_den() != 1) throw std::domain_error("non-integral m exponent in power");
  Rational c;
  if (exponent.get_den() == 1) {
    mpz_class e = exponent.get_num();
    if (!e.fits_slong_p()) throw std::domain_error("exponent too large");
    long ei = e.get_si();
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), t.coeff.get_num_mpz_t(), static_cast<unsigned long>(std::abs(ei)));
    mpz_pow_ui(d.get_mpz_t(), t.coeff.get_den_mpz_t(), static_cast<unsigned long>(std::abs(ei)));
    c = ei >= 0 ? Rational(n, d) : Rational(d, n);
    c.canonicalize();
  } else {
    auto root = exact_root(t.coeff, exponent.get_den().get_ui());
    if (!root) throw std::domain_error("coefficient has no exact rational root");
    c = Scalar(*root).pow(Rational(exponent.get_num())).terms_.at(0).coeff;
  }
  return Scalar({Term{c, static_cast<int>(m_exp.get_num().get_si()), t.u_pow * exponent}}, context_);
}

Scalar Scalar::operator-() const {
  auto out = terms_;
  for (auto& t : out) t.coeff = -t.coeff;
  return Scalar(std::move(out), context_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  auto ctx = merge_contexts(a.context_, b.context_);
  std::vector<Term> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return Scalar(std::move(terms), std::move(ctx));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  auto ctx = merge_contexts(a.context_, b.context_);
  std::vector<Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      terms.push_back(Term{x.coeff * y.coeff, x.m_pow + y.m_pow, x.u_pow + y.u_pow});
    }
  }
  return Scalar(std::move(terms), std::move(ctx));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.context_ && b.context_ && !(*a.context_ == *b.context_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const Term& x = a.terms_[i];
    const Term& y = b.terms_[i];
    if (x.m_pow != y.m_pow || x.u_pow != y.u_pow || x.coeff != y.coeff) return false;
  }
  return true;
}

Scalar ddt(const Scalar& a) {
  if (!a.context()) {
    if (has_u_terms(a.terms())) throw std::logic_error("unbound scalar with u terms");
    return Scalar();
  }
  const RingContext& ctx = *a.context();
  Scalar out = Scalar().with_context(ctx);
  for (const auto& t : a.terms()) {
    if (sgn(t.u_pow) == 0) continue;
    out += Scalar::monomial(t.coeff * t.u_pow * ctx.kappa, t.m_pow + ctx.m_degree, t.u_pow - 1, ctx);
  }
  return out;
}

double Scalar::eval(double m, double t) const {
  double u = 1.0;
  if (context_) u = 1.0 + to_double(context_->kappa) * std::pow(m, context_->m_degree) * t;
  if (has_u_terms(terms_) && u <= 0.0) {
    throw std::domain_error("u = " + std::to_string(u) + " is not positive");
  }
  double sum = 0.0;
  for (const auto& term : terms_) {
    double v = to_double(term.coeff) * std::pow(m, term.m_pow);
    if (sgn(term.u_pow) != 0) v *= std::pow(u, to_double(term.u_pow));
    sum += v;
  }
  return sum;
}

double Scalar::eval(const Rational& m, const Rational& t) const {
  if (context_ && has_u_terms(terms_)) {
    Rational m_pow = 1;
    for (int i = 0; i < context_->m_degree; ++i) m_pow *= m;
    Rational u = 1 + context_->kappa * m_pow * t;
    if (sgn(u) <= 0) throw std::domain_error("u = " + g2flow::to_string(u) + " is not positive");
  }
  return eval(to_double(m), to_double(t));
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    c = abs(c);
    bool bare = t.m_pow == 0 && sgn(t.u_pow) == 0;
    std::string factors;
    if (t.m_pow == 1) factors += "m";
    else if (t.m_pow != 0) factors += "m^" + std::to_string(t.m_pow);
    if (sgn(t.u_pow) != 0) {
      if (!factors.empty()) factors += "*";
      factors += "u^" + (t.u_pow.get_den() == 1 && sgn(t.u_pow) > 0 ? g2flow::to_string(t.u_pow)
                                                                      : "(" + g2flow::to_string(t.u_pow) + ")");
    }
    if (bare || c != 1) {
      os << g2flow::to_string(c);
      if (!factors.empty()) os << "*";
    }
    os << factors;
    first = false;
  }
  return os.str();
}

}  // namespace g2flow
