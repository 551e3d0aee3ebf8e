#pragma once

#include <stdexcept>
#include <string>

namespace chaoskit {

// Bad user-supplied data: malformed files, out-of-range ids, broken invariants.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A computation was refused because it would exceed a hard resource cap.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace chaoskit
