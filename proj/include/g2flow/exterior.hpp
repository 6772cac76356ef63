#pragma once

// Alternating forms on a 7-dimensional space with a fixed orthonormal,
// oriented coframe x^1..x^7 (orientation x^{1234567}).

#include "g2flow/scalar.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2flow {

inline constexpr int kDim = 7;

inline bool is_zero(double v) { return v == 0.0; }

namespace detail {
// Unqualified so that coefficient types declared later are found by ADL.
template <class C>
bool coeff_is_zero(const C& c) {
  return is_zero(c);
}
}  // namespace detail

/// Strictly increasing index tuple in 1..7, stored as a bitmask.
class MultiIndex {
 public:
  constexpr MultiIndex() = default;
  MultiIndex(std::initializer_list<int> indices);

  static MultiIndex from_mask(std::uint8_t mask) {
    MultiIndex m;
    m.mask_ = static_cast<std::uint8_t>(mask & 0x7F);
    return m;
  }
  /// Parses "127" style digit strings.
  static MultiIndex parse(const std::string& digits);
  /// All index sets of size k in lexicographic order.
  static const std::vector<MultiIndex>& all_of_size(int k);

  std::uint8_t mask() const { return mask_; }
  int size() const;
  bool contains(int i) const { return (mask_ >> (i - 1)) & 1U; }
  std::vector<int> indices() const;
  MultiIndex complement() const { return from_mask(static_cast<std::uint8_t>(~mask_)); }
  MultiIndex with(int i) const { return from_mask(mask_ | (1U << (i - 1))); }
  MultiIndex without(int i) const { return from_mask(mask_ & ~(1U << (i - 1))); }
  bool disjoint(MultiIndex o) const { return (mask_ & o.mask_) == 0; }
  std::string to_string() const;

  /// Lexicographic order of the index tuples.
  friend bool operator<(MultiIndex a, MultiIndex b);
  friend bool operator==(MultiIndex a, MultiIndex b) { return a.mask_ == b.mask_; }

 private:
  std::uint8_t mask_ = 0;
};

/// Sign of sorting x^{a} followed by x^{b} (disjoint) into increasing order.
int concat_sign(MultiIndex a, MultiIndex b);

/// Sign of the permutation sorting `seq`; 0 when an index repeats.
int sequence_sign(std::span<const int> seq);

/// A k-form: sparse map from MultiIndex to coefficient; zero coefficients are never stored.
template <class C>
class BasicForm {
 public:
  using Coeff = C;
  using Map = std::map<MultiIndex, C>;

  BasicForm() = default;
  explicit BasicForm(int degree) : degree_(degree) {
    if (degree < 0 || degree > kDim) throw std::invalid_argument("form degree out of range");
  }

  static BasicForm basis(MultiIndex idx, C coeff = C(1)) {
    BasicForm f(idx.size());
    f.add(idx, std::move(coeff));
    return f;
  }
  static BasicForm constant(C value) { return basis(MultiIndex{}, std::move(value)); }

  int degree() const { return degree_; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  C coeff(MultiIndex idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? C() : it->second;
  }

  void add(MultiIndex idx, const C& value) {
    if (idx.size() != degree_) throw std::invalid_argument("index length does not match form degree");
    auto it = terms_.find(idx);
    if (it == terms_.end()) {
      if (!detail::coeff_is_zero(value)) terms_.emplace(idx, value);
      return;
    }
    it->second = it->second + value;
    if (detail::coeff_is_zero(it->second)) terms_.erase(it);
  }

  BasicForm& operator+=(const BasicForm& o) {
    check_degree(o);
    for (const auto& [idx, c] : o.terms_) add(idx, c);
    return *this;
  }
  BasicForm& operator-=(const BasicForm& o) {
    check_degree(o);
    for (const auto& [idx, c] : o.terms_) add(idx, -c);
    return *this;
  }
  friend BasicForm operator+(BasicForm a, const BasicForm& b) { return a += b; }
  friend BasicForm operator-(BasicForm a, const BasicForm& b) { return a -= b; }
  BasicForm operator-() const { return scaled(C(-1)); }

  BasicForm scaled(const C& s) const {
    BasicForm out(degree_);
    for (const auto& [idx, c] : terms_) out.add(idx, s * c);
    return out;
  }
  friend BasicForm operator*(const C& s, const BasicForm& f) { return f.scaled(s); }

  /// Coefficient-wise transform (e.g. exact -> numeric).
  template <class D, class Fn>
  BasicForm<D> map(Fn&& fn) const {
    BasicForm<D> out(degree_);
    for (const auto& [idx, c] : terms_) out.add(idx, fn(idx, c));
    return out;
  }

  friend bool operator==(const BasicForm& a, const BasicForm& b) {
    if (a.degree_ != b.degree_ || a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [idx, c] : a.terms_) {
      if (!(idx == it->first) || !(c == it->second)) return false;
      ++it;
    }
    return true;
  }

 private:
  void check_degree(const BasicForm& o) const {
    if (o.degree_ != degree_) throw std::invalid_argument("adding forms of different degree");
  }

  int degree_ = 0;
  Map terms_;
};

using Form = BasicForm<Scalar>;
using NumericForm = BasicForm<double>;

template <class C>
BasicForm<C> wedge(const BasicForm<C>& a, const BasicForm<C>& b) {
  if (a.degree() + b.degree() > kDim) throw std::invalid_argument("wedge degree overflow");
  BasicForm<C> out(a.degree() + b.degree());
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      if (!ia.disjoint(ib)) continue;
      MultiIndex joined = MultiIndex::from_mask(ia.mask() | ib.mask());
      C prod = ca * cb;
      out.add(joined, concat_sign(ia, ib) > 0 ? prod : -prod);
    }
  }
  return out;
}

/// *x^I = sign(I, I^c) x^{I^c} for the orthonormal coframe.
template <class C>
BasicForm<C> hodge_star(const BasicForm<C>& a) {
  BasicForm<C> out(kDim - a.degree());
  for (const auto& [idx, c] : a.terms()) {
    MultiIndex comp = idx.complement();
    out.add(comp, concat_sign(idx, comp) > 0 ? c : -c);
  }
  return out;
}

/// Contraction with the i-th frame vector.
template <class C>
BasicForm<C> interior(int i, const BasicForm<C>& a) {
  if (i < 1 || i > kDim) throw std::invalid_argument("frame index out of range");
  if (a.degree() == 0) throw std::invalid_argument("interior product of a 0-form");
  BasicForm<C> out(a.degree() - 1);
  for (const auto& [idx, c] : a.terms()) {
    if (!idx.contains(i)) continue;
    int before = MultiIndex::from_mask(idx.mask() & ((1U << (i - 1)) - 1)).size();
    out.add(idx.without(i), before % 2 == 0 ? c : -c);
  }
  return out;
}

/// Component of a form on an arbitrary (possibly unsorted, possibly repeating) index sequence.
template <class C>
C component(const BasicForm<C>& a, std::span<const int> seq) {
  int s = sequence_sign(seq);
  if (s == 0) return C();
  MultiIndex idx;
  for (int i : seq) idx = idx.with(i);
  C c = a.coeff(idx);
  return s > 0 ? c : -c;
}

/// epsilon(i,j,k) on A u B and epsilon(l,m,n,o) on K u {(2,4,6,7)}; 0 elsewhere.
struct EpsilonTable {
  static int eps3(MultiIndex idx);
  static int eps4(MultiIndex idx);
  static const std::vector<MultiIndex>& phi_support();  // A u B, lexicographic
  static const std::vector<MultiIndex>& psi_support();  // K u {2467}, lexicographic
};

template <class C>
BasicForm<C> canonical_phi() {
  BasicForm<C> f(3);
  for (MultiIndex idx : EpsilonTable::phi_support()) f.add(idx, C(EpsilonTable::eps3(idx)));
  return f;
}

template <class C>
BasicForm<C> canonical_psi() {
  BasicForm<C> f(4);
  for (MultiIndex idx : EpsilonTable::psi_support()) f.add(idx, C(EpsilonTable::eps4(idx)));
  return f;
}

/// "c*e^{127} - e^{135} ..." with terms in MultiIndex order.
std::string render(const Form& f, const std::string& basis = "e");
std::string render(const NumericForm& f, const std::string& basis = "e");

double max_abs(const NumericForm& f);

}  // namespace g2flow
