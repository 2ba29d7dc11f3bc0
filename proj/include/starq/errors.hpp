#pragma once

#include <stdexcept>
#include <string>

namespace starq {

/// Thrown when an enumeration or verification would exceed its work budget
/// and the caller asked for an exact answer.
class BudgetExceeded : public std::runtime_error {
  public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace starq
