#pragma once

#include <stdexcept>
#include <string>

namespace symeq {

enum class ErrorCode {
    invalid_argument = 1,
    invalid_codeword,
    undefined_distance,
    out_of_range,
    parse,
    io,
    construction_failed,
    enumeration_cap,
    no_witness,
    invalid_plan,
    framing,
};

// Library failure tagged with one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace symeq
