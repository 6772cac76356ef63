#pragma once

// Exact linear algebra: Gauss-Jordan over the rationals, and elimination over
// Scalars restricted to invertible (single-term) pivots.

#include "g2flow/scalar.hpp"

#include <vector>

namespace g2flow {

using RationalMatrix = std::vector<std::vector<Rational>>;

struct RationalSolution {
  bool consistent = false;
  int rank = 0;
  int nullity = 0;
  /// A particular solution with all free variables set to zero.
  std::vector<Rational> values;
};

RationalSolution solve_linear(RationalMatrix a, std::vector<Rational> b);

int matrix_rank(RationalMatrix a);

using ScalarMatrix = std::vector<std::vector<Scalar>>;

struct ScalarSolution {
  bool consistent = false;
  int rank = 0;
  int nullity = 0;
  std::vector<Scalar> values;
};

/// Throws std::domain_error if some column needs a multi-term pivot.
ScalarSolution solve_linear(ScalarMatrix a, std::vector<Scalar> b);

}  // namespace g2flow
