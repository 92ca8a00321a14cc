#pragma once

#include <stdexcept>
#include <string>

namespace ssd4 {

// Stable error codes; the C API and CLI expose these names verbatim.
enum class Status : int {
    ok = 0,
    parse_error,
    unsupported_field,
    field_mismatch,
    variable_mismatch,
    positive_exponent_present,
    no_solution_in_field,
    search_space_too_large,
    zero_class,
    not_d4,
    descent_failed,
    eta_is_one,
    identity_failed,
    not_a_unit,
    even_degree_f,
    precision_exhausted,
    invalid_argument,
    io_error,
};

const char* status_name(Status s);

class Error : public std::runtime_error {
public:
    Error(Status code, std::string message, long position = -1)
        : std::runtime_error(std::move(message)), code_(code), position_(position) {}

    Status code() const noexcept { return code_; }
    // Byte offset into the offending input for parse errors, -1 otherwise.
    long position() const noexcept { return position_; }

private:
    Status code_;
    long position_;
};

[[noreturn]] inline void fail(Status code, std::string message, long position = -1) {
    throw Error(code, std::move(message), position);
}

} // namespace ssd4
