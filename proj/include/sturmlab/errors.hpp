#ifndef STURMLAB_ERRORS_HPP
#define STURMLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sturmlab {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A finite directive sequence ran out of terms.
struct sequence_exhausted : error {
    explicit sequence_exhausted(const std::string& what) : error(what) {}
};

// Refinement cap reached before an interval comparison became conclusive.
struct precision_exhausted : error {
    explicit precision_exhausted(const std::string& what) : error(what) {}
};

// An enumeration would exceed its configured budget.
struct budget_exceeded : error {
    explicit budget_exceeded(const std::string& what) : error(what) {}
};

// Invalid user-supplied configuration or degenerate input.
struct config_error : error {
    explicit config_error(const std::string& what) : error(what) {}
};

} // namespace sturmlab

#endif
