#ifndef QFIX_ERRORS_HPP
#define QFIX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qfix {

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Input outside the mathematical domain of an operation (w < 1, ln 0, ...).
struct domain_error : error {
    using error::error;
};

// Violated precondition on n, m, b, l, n_f, k or a format contract.
struct parameter_error : error {
    using error::error;
};

// Value does not fit the declared register format.
struct overflow_error : parameter_error {
    using parameter_error::parameter_error;
};

// Malformed literal.
struct parse_error : parameter_error {
    using parameter_error::parameter_error;
};

}  // namespace qfix

#endif
