#pragma once

#include <stdexcept>
#include <string>

namespace bagpack {

// Base class for all library errors. InputError marks problems with
// user-supplied data or configuration; the CLI maps it to exit code 2,
// anything else to exit code 1.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

}  // namespace bagpack
