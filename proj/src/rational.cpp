#include "g2flow/rational.hpp"

#include <stdexcept>

namespace g2flow {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

std::optional<Rational> exact_root(const Rational& r, unsigned long n) {
  if (n == 0) throw std::invalid_argument("zeroth root");
  if (sgn(r) < 0 && n % 2 == 0) return std::nullopt;
  mpz_class num = r.get_num();
  mpz_class den = r.get_den();
  mpz_class num_root, den_root;
  if (mpz_root(num_root.get_mpz_t(), num.get_mpz_t(), n) == 0) return std::nullopt;
  if (mpz_root(den_root.get_mpz_t(), den.get_mpz_t(), n) == 0) return std::nullopt;
  Rational out(num_root, den_root);
  out.canonicalize();
  return out;
}

}  // namespace g2flow
