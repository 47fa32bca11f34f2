#pragma once

#include <stdexcept>
#include <string>

namespace sncinv {

// Violated mathematical precondition (inadmissible center, datum/model
// mismatch, non-invertible denominator, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file or expression; the message carries a location path.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sncinv
