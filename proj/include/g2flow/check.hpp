#pragma once

#include "g2flow/exterior.hpp"

#include <string>
#include <variant>
#include <vector>

namespace g2flow {

/// What a check shows when it fails (or what it computed when it passes).
using Witness = std::variant<std::monostate, Scalar, Form, std::string>;

struct CheckResult {
  std::string algebra;
  std::string check;
  bool passed = false;
  Witness witness;
};

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

std::string witness_text(const Witness& w);

}  // namespace g2flow
