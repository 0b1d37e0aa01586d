#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qdeform {

// A construction could not be carried out for the requested parameters, e.g. a
// negative radicand at a root of unity. Carries the offending eigenvalues.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, std::vector<std::string> offending = {})
      : std::runtime_error(compose(what, offending)), offending_(std::move(offending)) {}

  const std::vector<std::string>& offending() const { return offending_; }

 private:
  static std::string compose(const std::string& what, const std::vector<std::string>& offending) {
    std::string out = what;
    for (size_t i = 0; i < offending.size() && i < 8; ++i) out += (i ? ", " : ": ") + offending[i];
    if (offending.size() > 8) out += ", ...";
    return out;
  }

  std::vector<std::string> offending_;
};

}  // namespace qdeform
