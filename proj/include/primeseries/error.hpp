#pragma once

#include <stdexcept>
#include <string>

namespace primeseries {

/// Input outside a function's mathematical domain (e.g. F_i <= a).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller misuse: bad flag combinations, too few points, out-of-order input.
class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Request exceeds a supported width or guard (64-bit limit, exact-mode depth).
class capacity_error : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Numerical method cannot proceed (zero second difference, non-monotone data).
class degeneracy_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace primeseries
