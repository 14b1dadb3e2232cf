#ifndef ZETALAB_ERRORS_HPP
#define ZETALAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zetalab {

struct MissedZeros : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, long line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
    long line_number;
};

struct OrderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct IdentityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace zetalab

#endif
