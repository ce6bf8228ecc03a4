#ifndef PLAB_ERRORS_HPP
#define PLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace plab {

/// Malformed or out-of-range input (bad dimensions, NaN entries, ...).
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Both control fields vanish where mixing angles are required.
struct DegenerateControlError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Requested closed-form result outside its validity regime
/// (e.g. asymmetric excited-state widths).
struct UnsupportedRegimeError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Degenerate configuration for which the requested diagnostic is undefined.
struct UnsupportedCaseError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Eigenvector continuation lost a branch; carries the offending wavenumber.
struct TrackingError : std::runtime_error {
    double k;
    TrackingError(const std::string& msg, double k_offending)
        : std::runtime_error(msg), k(k_offending) {}
};

/// Pulse spectrum carries too much weight outside the adiabatic window.
struct NonadiabaticSpectrumError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Time step violates the stated stability/accuracy bound.
struct StepSizeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace plab

#endif
