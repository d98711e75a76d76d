#pragma once

#include <stdexcept>
#include <string>

namespace twistsum {

// Bad user input: rejected before any computation starts.
struct validation_error : std::invalid_argument {
    explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Working precision (N), series cutoff (E) or matrix size (J) was too small
// to decide the quantity being asked for.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Two routes that must agree disagreed. Signals an implementation bug,
// never bad data.
struct internal_check_error : std::logic_error {
    explicit internal_check_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace twistsum
