#pragma once

#include <stdexcept>
#include <string>

namespace sorsvd {

/// Operand dimensions do not conform (e.g. inner dimensions of a product).
struct shape_error : std::invalid_argument {
    explicit shape_error(const std::string& msg) : std::invalid_argument("shape: " + msg) {}
};

/// A scalar or integer argument is outside its admissible range.
struct parameter_error : std::invalid_argument {
    explicit parameter_error(const std::string& msg) : std::invalid_argument("parameter: " + msg) {}
};

/// File or stream level failure (missing file, bad magic, truncated payload).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error("io: " + msg) {}
};

/// A kernel produced NaN/Inf or an iterative routine failed to converge.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error("numerical: " + msg) {}
};

/// A theoretical bound cannot be evaluated because its hypothesis fails
/// (e.g. the test-matrix block is not full row rank).
struct bound_inapplicable_error : std::domain_error {
    explicit bound_inapplicable_error(const std::string& msg)
        : std::domain_error("bound inapplicable: " + msg) {}
};

}  // namespace sorsvd
