#pragma once

#include <stdexcept>
#include <string>

namespace sidonlab {

// Bad input: malformed files, out-of-range parameters, contract violations.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A brute-force enumeration would exceed its configured tuple budget.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sidonlab
