#pragma once

#include <stdexcept>
#include <string>

namespace negdep {

/// Thrown when an enumeration would exceed its configured state budget.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace negdep
