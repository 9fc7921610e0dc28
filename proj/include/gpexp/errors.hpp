#pragma once

#include <stdexcept>
#include <string>

namespace gpexp {

// Invalid arguments, malformed pmfs or configs. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An enumeration or codebook budget was exceeded. CLI maps this to exit code 3.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An optimizer could not produce a feasible result.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gpexp
