#pragma once

#include <stdexcept>
#include <string>

namespace nehari {

// Bad input: malformed grids, non-finite samples, violated preconditions.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Well-formed input whose data makes the requested construction meaningless
// (non-log-integrable defect, vanishing denominators, non-contractive Hankel).
class DegenerateError : public std::runtime_error {
public:
    DegenerateError(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace nehari
