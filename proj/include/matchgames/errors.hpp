#pragma once

#include <stdexcept>
#include <string>

namespace matchgames {

// Raised when an exhaustive routine would exceed its configured size cap.
class SizeLimitError : public std::runtime_error {
public:
    explicit SizeLimitError(const std::string& what) : std::runtime_error("size limit: " + what) {}
};

// Malformed input or violated precondition on caller-supplied data.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace matchgames
