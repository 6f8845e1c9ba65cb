#pragma once

#include <stdexcept>
#include <string>

namespace qsel {

// Invalid or inconsistent configuration / argument values.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Resource guards (qubit-count caps, budget limits).
struct guard_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical failure at runtime (non-finite loss, broken invariant).
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qsel
