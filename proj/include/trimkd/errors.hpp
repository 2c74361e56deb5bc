#pragma once

#include <stdexcept>
#include <string>

namespace trimkd {

// Invalid argument values or violated preconditions of a library call.
class parameter_error : public std::invalid_argument {
public:
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

// Problems with user-supplied data (files, malformed cells, empty samples).
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

// Numeric failures: detection found nothing, a bracket collapsed, a root
// does not exist for the given inputs.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// A closed-form route does not cover the requested case; the caller is
// expected to fall back to a numeric route.
class unsupported_case : public std::runtime_error {
public:
    explicit unsupported_case(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace trimkd
