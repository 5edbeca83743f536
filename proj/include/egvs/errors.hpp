#pragma once

#include <stdexcept>
#include <string>

namespace egvs {

/// Invalid user input: bad file contents, violated preconditions, out-of-range
/// arguments. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Broken internal invariant. The CLI maps this to exit code 70.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace egvs
