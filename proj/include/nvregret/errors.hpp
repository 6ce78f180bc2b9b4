#pragma once

#include <stdexcept>
#include <string>

namespace nvregret {

// Argument violates an operation's contract (bad cost, bad tolerance, ...).
struct invalid_parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input data is malformed or empty (bad literal, empty sample set, ...).
struct invalid_input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A request would exceed a configured enumeration or size cap.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The design optimizer only supports critical fractiles q >= 0.5.
struct unsupported_regime_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nvregret
