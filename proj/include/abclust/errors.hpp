#pragma once

#include <stdexcept>
#include <string>

namespace abclust {

/// Bad user input: malformed files, unknown labels, invalid parameters.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: singular systems, violated residual contracts.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Classification cannot produce a usable split (e.g. all scores equal).
class DegenerateError : public NumericError {
public:
    explicit DegenerateError(const std::string& what) : NumericError(what) {}
};

} // namespace abclust
