#pragma once

#include <stdexcept>
#include <string>

namespace fareyforge {

// Bad arguments to an operation (unknown vertex, overlapping parts, ...).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input document; the message names the offending element.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// An exhaustive operation exceeded its configured cap.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fareyforge
