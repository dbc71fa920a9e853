#pragma once

#include <stdexcept>
#include <string>

namespace dynstr {

// Malformed input text: ragged dictionaries, bad headers, illegal symbols.
struct format_error : std::runtime_error {
    explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

// Protocol misuse: calling an operation whose stated precondition does not hold.
struct contract_error : std::logic_error {
    explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

// Out-of-universe or out-of-bounds arguments throw std::out_of_range.

}  // namespace dynstr
