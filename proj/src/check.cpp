#include "g2flow/check.hpp"

namespace g2flow {

std::string witness_text(const Witness& w) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const Scalar& s) const { return s.to_string(); }
    std::string operator()(const Form& f) const { return render(f, "x"); }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, w);
}

}  // namespace g2flow
