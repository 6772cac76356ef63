#pragma once

// Exact coefficients of the form  sum_r c_r * m^{p_r} * u^{q_r}
// with u = 1 + kappa * m^d * t treated as an opaque generator.

#include "g2flow/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2flow {

/// The constant kappa of u = 1 + kappa * m^{m_degree} * t.
/// m_degree is 2 for the Lee-parameter graded ring and 0 for the
/// ungraded warm-up fixtures (u = 1 + kappa * t).
struct RingContext {
  Rational kappa;
  int m_degree = 2;

  friend bool operator==(const RingContext& a, const RingContext& b) {
    return a.kappa == b.kappa && a.m_degree == b.m_degree;
  }
};

class ContextMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Term {
  Rational coeff;
  int m_pow = 0;
  Rational u_pow;
};

/// Immutable exact scalar. A Scalar without a context may only carry
/// u-free terms; it combines with any context.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value);  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& value);  // NOLINT(google-explicit-constructor)

  static Scalar monomial(const Rational& coeff, int m_pow, const Rational& u_pow,
                         std::optional<RingContext> context = std::nullopt);
  /// u^q in the given context.
  static Scalar u_power(const Rational& q, const RingContext& context);
  static Scalar m_power(int p);

  const std::vector<Term>& terms() const { return terms_; }
  const std::optional<RingContext>& context() const { return context_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  /// The value if this is a pure rational constant.
  std::optional<Rational> as_rational() const;

  /// Rebinds an unbound scalar to a context (no-op if already bound to it).
  Scalar with_context(const RingContext& context) const;

  /// Monomials only; throws std::domain_error otherwise.
  Scalar inverse() const;
  Scalar pow(const Rational& exponent) const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  /// Equal terms in compatible contexts.
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Floating evaluation; throws std::domain_error when u <= 0.
  double eval(double m, double t) const;
  double eval(const Rational& m, const Rational& t) const;

  std::string to_string() const;

 private:
  Scalar(std::vector<Term> terms, std::optional<RingContext> context);
  void normalize();

  std::vector<Term> terms_;
  std::optional<RingContext> context_;
};

Scalar ddt(const Scalar& a);

inline Scalar add(const Scalar& a, const Scalar& b) { return a + b; }
inline Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }

inline bool is_zero(const Scalar& s) { return s.is_zero(); }

}  // namespace g2flow
