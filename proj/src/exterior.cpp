#include "g2flow/exterior.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace g2flow {

MultiIndex::MultiIndex(std::initializer_list<int> indices) {
  int last = 0;
  for (int i : indices) {
    if (i <= last || i > kDim) throw std::invalid_argument("multi-index must be strictly increasing in 1..7");
    mask_ = static_cast<std::uint8_t>(mask_ | (1U << (i - 1)));
    last = i;
  }
}

MultiIndex MultiIndex::parse(const std::string& digits) {
  MultiIndex out;
  int last = 0;
  for (char ch : digits) {
    int i = ch - '0';
    if (i <= last || i > kDim) throw std::invalid_argument("bad multi-index: " + digits);
    out = out.with(i);
    last = i;
  }
  return out;
}

const std::vector<MultiIndex>& MultiIndex::all_of_size(int k) {
  static const auto table = [] {
    std::array<std::vector<MultiIndex>, kDim + 1> t;
    for (unsigned mask = 0; mask < (1U << kDim); ++mask) {
      auto idx = from_mask(static_cast<std::uint8_t>(mask));
      t[idx.size()].push_back(idx);
    }
    for (auto& v : t) std::sort(v.begin(), v.end());
    return t;
  }();
  return table.at(k);
}

int MultiIndex::size() const { return std::popcount(static_cast<unsigned>(mask_)); }

std::vector<int> MultiIndex::indices() const {
  std::vector<int> out;
  for (int i = 1; i <= kDim; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::string MultiIndex::to_string() const {
  std::string s;
  for (int i : indices()) s += static_cast<char>('0' + i);
  return s;
}

bool operator<(MultiIndex a, MultiIndex b) {
  static const auto rank = [] {
    std::array<int, 128> order{};
    std::array<std::uint8_t, 128> masks{};
    for (unsigned m = 0; m < 128; ++m) masks[m] = static_cast<std::uint8_t>(m);
    std::sort(masks.begin(), masks.end(), [](std::uint8_t x, std::uint8_t y) {
      auto a = MultiIndex::from_mask(x).indices();
      auto b = MultiIndex::from_mask(y).indices();
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    for (int r = 0; r < 128; ++r) order[masks[r]] = r;
    return order;
  }();
  return rank[a.mask()] < rank[b.mask()];
}

int concat_sign(MultiIndex a, MultiIndex b) {
  // count pairs (i in a, j in b) with i > j
  int inversions = 0;
  for (int i = 1; i <= kDim; ++i) {
    if (!a.contains(i)) continue;
    inversions += MultiIndex::from_mask(b.mask() & ((1U << (i - 1)) - 1)).size();
  }
  return inversions % 2 == 0 ? 1 : -1;
}

int sequence_sign(std::span<const int> seq) {
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] == seq[j]) return 0;
      if (seq[i] > seq[j]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

int EpsilonTable::eps3(MultiIndex idx) {
  static const std::map<MultiIndex, int> table = {
      {MultiIndex{1, 2, 7}, 1},  {MultiIndex{1, 3, 5}, 1},  {MultiIndex{3, 4, 7}, 1},
      {MultiIndex{5, 6, 7}, 1},  {MultiIndex{1, 4, 6}, -1}, {MultiIndex{2, 3, 6}, -1},
      {MultiIndex{2, 4, 5}, -1}};
  auto it = table.find(idx);
  return it == table.end() ? 0 : it->second;
}

int EpsilonTable::eps4(MultiIndex idx) {
  static const std::map<MultiIndex, int> table = {
      {MultiIndex{1, 2, 3, 4}, 1}, {MultiIndex{1, 2, 5, 6}, 1}, {MultiIndex{1, 3, 6, 7}, 1},
      {MultiIndex{1, 4, 5, 7}, 1}, {MultiIndex{2, 3, 5, 7}, 1}, {MultiIndex{3, 4, 5, 6}, 1},
      {MultiIndex{2, 4, 6, 7}, -1}};
  auto it = table.find(idx);
  return it == table.end() ? 0 : it->second;
}

const std::vector<MultiIndex>& EpsilonTable::phi_support() {
  static const std::vector<MultiIndex> v = [] {
    std::vector<MultiIndex> out;
    for (auto idx : MultiIndex::all_of_size(3))
      if (eps3(idx) != 0) out.push_back(idx);
    return out;
  }();
  return v;
}

const std::vector<MultiIndex>& EpsilonTable::psi_support() {
  static const std::vector<MultiIndex> v = [] {
    std::vector<MultiIndex> out;
    for (auto idx : MultiIndex::all_of_size(4))
      if (eps4(idx) != 0) out.push_back(idx);
    return out;
  }();
  return v;
}

namespace {

template <class C, class Fmt>
std::string render_impl(const BasicForm<C>& f, const std::string& basis, Fmt&& fmt) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : f.terms()) {
    if (!first) os << " + ";
    std::string s = fmt(c);
    bool compound = s.find_first_of("+", 1) != std::string::npos || s.find(" - ") != std::string::npos;
    if (compound) s = "(" + s + ")";
    os << s;
    if (idx.size() > 0) os << "*" << basis << "^{" << idx.to_string() << "}";
    first = false;
  }
  return os.str();
}

}  // namespace

std::string render(const Form& f, const std::string& basis) {
  return render_impl(f, basis, [](const Scalar& s) { return s.to_string(); });
}

std::string render(const NumericForm& f, const std::string& basis) {
  return render_impl(f, basis, [](double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
  });
}

double max_abs(const NumericForm& f) {
  double m = 0.0;
  for (const auto& [idx, c] : f.terms()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace g2flow
