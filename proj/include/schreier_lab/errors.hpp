#pragma once

#include <stdexcept>
#include <string>

namespace schreier_lab {

struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised when an index set, partition or window is asked for elements beyond what is materialized.
struct truncation_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct oracle_limit : std::length_error {
    using std::length_error::length_error;
};

struct unsupported_exponent : std::domain_error {
    using std::domain_error::domain_error;
};

struct cannot_select : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace schreier_lab
