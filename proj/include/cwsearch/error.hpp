#pragma once

#include <stdexcept>
#include <string>

namespace cwsearch {

enum class errc {
    invalid_argument = 1,
    not_square,
    modulus_mismatch,
    not_divisor,
    out_of_range,
    parse,
    io,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

}  // namespace cwsearch
