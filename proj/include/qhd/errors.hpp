#pragma once

#include <stdexcept>

namespace qhd {

// Bad user input: malformed expressions, arity mismatches, out-of-range
// qubit indices.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested register exceeds the configured caps.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A measurement reading that cannot correspond to any integer solution
// count (signals a corrupted or statistically impossible reading).
struct inconsistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation was invoked outside its protocol, e.g. the concurrence
// ancilla was not in |1> or a required delta measurement is missing.
struct protocol_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qhd
