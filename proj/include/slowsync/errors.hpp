#pragma once

#include <stdexcept>
#include <string>

namespace slowsync {

/// Bad user input: malformed text, out-of-range argument, invalid config.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Request exceeds a built-in resource guard (state count, table size, ...).
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace slowsync
