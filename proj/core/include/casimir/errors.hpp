#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// A quadrature or series failed to reach its requested tolerance. Carries
/// the best available estimate so callers can decide whether to keep it.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// Loss of significance detected in a scaled Bessel combination.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The truncated scattering matrix is unusable (spectral radius >= 1 or a
/// non-finite entry); signals geometry/truncation misuse.
class AssemblyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (tables, result files).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace casimir
