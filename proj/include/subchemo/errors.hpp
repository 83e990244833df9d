#pragma once

#include <stdexcept>
#include <string>

namespace subchemo {

/// Bad user input or configuration. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical breakdown: NaN/Inf state, linear-solve failure, mass-balance
/// violation. The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem failure. The CLI maps this to exit code 4.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace subchemo
