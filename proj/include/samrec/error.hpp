#pragma once

#include <stdexcept>
#include <string>

namespace samrec {

enum class ErrorCode {
    invalid_argument,
    not_found,
    duplicate_id,
    kind_mismatch,
    invalid_interaction_type,
    parse,
    io,
    empty_input,
    state,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace samrec
