#pragma once

#include <stdexcept>
#include <string>

namespace bnp {

// Enumeration refused because it would exceed the configured budget.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bnp
