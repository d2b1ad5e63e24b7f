#pragma once

#include <stdexcept>
#include <string>

namespace lrqt {

/// Caller supplied something outside an operation's preconditions.
class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation ran but could not produce a trustworthy result.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lrqt
