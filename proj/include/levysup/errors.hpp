#pragma once

#include <stdexcept>
#include <string>

namespace levysup {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// model class does not support the requested operation
struct UnsupportedClass : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotIntegrable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// E e^{X_1} (or a required exponential moment) is infinite
struct MomentFailure : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace levysup
