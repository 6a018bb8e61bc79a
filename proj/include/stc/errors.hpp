#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stc {

// Error families. The CLI maps each to a distinct exit code.

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DecodeError : std::runtime_error {
    explicit DecodeError(const std::string& what, std::size_t offset = npos)
        : std::runtime_error(what), offset_(offset) {}

    // Offset of the first inconsistency in the decoder input, if known.
    std::size_t offset() const noexcept { return offset_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t offset_;
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace stc
