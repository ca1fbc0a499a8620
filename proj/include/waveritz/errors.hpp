#ifndef WAVERITZ_ERRORS_HPP
#define WAVERITZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace waveritz {

// Invalid user-facing parameters (genus out of range, bad window size, ...).
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Requested wavelet family cannot be built.
class UnsupportedFamilyError : public ParameterError {
public:
    explicit UnsupportedFamilyError(const std::string& msg) : ParameterError(msg) {}
};

// Index bookkeeping mismatch between a vector and a BasisLayout.
class LayoutError : public std::invalid_argument {
public:
    explicit LayoutError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numerical breakdown (degenerate refinement operator, zero-norm state, ...).
class DegeneracyError : public std::runtime_error {
public:
    explicit DegeneracyError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operator requested for a basis too rough to support it.
class SmoothnessError : public ParameterError {
public:
    explicit SmoothnessError(const std::string& msg) : ParameterError(msg) {}
};

// Malformed or unreadable cache / data files.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace waveritz

#endif
