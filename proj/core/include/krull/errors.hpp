#ifndef KRULL_ERRORS_HPP
#define KRULL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace krull {

/// Base for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid specification, configuration, or argument (CLI exit code 2).
class spec_error : public error {
public:
    explicit spec_error(const std::string& what) : error(what) {}
};

/// A truncation bound, factoring limit, or search budget was exceeded
/// (CLI exit code 3). The input may be fine; the configured limits are not.
class bound_error : public error {
public:
    explicit bound_error(const std::string& what) : error(what) {}
};

} // namespace krull

#endif
