#pragma once

#include <stdexcept>
#include <string>

namespace gridsynth {

// Input file could not be read or did not match the expected syntax.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Input parsed but violates a model invariant (dangling reference, bad sum, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Bad configuration (overlapping period windows, missing table row, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric failure at run time (non-convergence, infeasible dispatch, ...).
class RuntimeFailure : public std::runtime_error {
public:
    explicit RuntimeFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gridsynth
