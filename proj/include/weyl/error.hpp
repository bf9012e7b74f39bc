#pragma once

#include <stdexcept>
#include <string>

namespace weyl {

// Bad input or a violated precondition.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Input is well formed but outside the exactly representable range.
class RangeError : public ValidationError {
public:
    explicit RangeError(const std::string& what) : ValidationError(what) {}
};

// Work or memory limit exceeded.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}

}  // namespace weyl
