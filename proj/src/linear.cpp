#include "g2flow/linear.hpp"

#include <stdexcept>

namespace g2flow {

namespace {

bool nonzero(const Rational& r) { return sgn(r) != 0; }
bool nonzero(const Scalar& s) { return !s.is_zero(); }

// Reduced row echelon form; returns the pivot column of each pivot row.
template <class T, class PickPivot, class Invert>
std::vector<int> reduce(std::vector<std::vector<T>>& a, std::vector<T>& b, PickPivot&& pick, Invert&& invert) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<int> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = pick(a, r, c);
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    T inv = invert(a[r][c]);
    for (auto& v : a[r]) v = inv * v;
    b[r] = inv * b[r];
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || !nonzero(a[i][c])) continue;
      T factor = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = a[i][j] - factor * a[r][j];
      b[i] = b[i] - factor * b[r];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

template <class T, class Result>
Result finish(const std::vector<std::vector<T>>& a, const std::vector<T>& b, const std::vector<int>& pivots) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  Result out;
  out.rank = static_cast<int>(pivots.size());
  out.nullity = static_cast<int>(cols) - out.rank;
  out.consistent = true;
  for (std::size_t i = pivots.size(); i < b.size(); ++i)
    if (nonzero(b[i])) out.consistent = false;
  out.values.assign(cols, T());
  for (std::size_t i = 0; i < pivots.size(); ++i) out.values[static_cast<std::size_t>(pivots[i])] = b[i];
  return out;
}

void check_shape(std::size_t rows, std::size_t b_rows, const auto& a) {
  if (rows != b_rows) throw std::invalid_argument("right-hand side length does not match the matrix");
  for (const auto& row : a)
    if (row.size() != a[0].size()) throw std::invalid_argument("ragged matrix");
}

}  // namespace

RationalSolution solve_linear(RationalMatrix a, std::vector<Rational> b) {
  check_shape(a.size(), b.size(), a);
  auto pick = [](const RationalMatrix& m, std::size_t r, std::size_t c) {
    for (std::size_t i = r; i < m.size(); ++i)
      if (nonzero(m[i][c])) return i;
    return m.size();
  };
  auto invert = [](const Rational& v) { return Rational(1 / v); };
  auto pivots = reduce(a, b, pick, invert);
  return finish<Rational, RationalSolution>(a, b, pivots);
}

int matrix_rank(RationalMatrix a) {
  std::vector<Rational> b(a.size());
  return solve_linear(std::move(a), std::move(b)).rank;
}

ScalarSolution solve_linear(ScalarMatrix a, std::vector<Scalar> b) {
  check_shape(a.size(), b.size(), a);
  auto pick = [](const ScalarMatrix& m, std::size_t r, std::size_t c) {
    bool any = false;
    for (std::size_t i = r; i < m.size(); ++i) {
      if (m[i][c].is_zero()) continue;
      any = true;
      if (m[i][c].is_monomial()) return i;
    }
    if (any) throw std::domain_error("elimination needs a multi-term pivot");
    return m.size();
  };
  auto invert = [](const Scalar& v) { return v.inverse(); };
  auto pivots = reduce(a, b, pick, invert);
  return finish<Scalar, ScalarSolution>(a, b, pivots);
}

}  // namespace g2flow
