#pragma once

#include <stdexcept>
#include <string>

namespace scat1d {

/// Bad or non-finite user input (CSV contents, parameters out of range).
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A precondition of an operation does not hold (wrong spectral regime,
/// resonance/mode mismatch, missing data).
struct precondition_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// An iterative solver failed to reach its tolerance.
struct divergence_error : std::runtime_error {
    divergence_error(const std::string& what, double last_residual)
        : std::runtime_error(what), residual(last_residual) {}
    double residual;
};

/// Evaluation too close to a spectral singularity (lambda = 0, |W| ~ 0).
struct singularity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested truncation/tolerance cannot be met with the configured budget.
struct truncation_error : std::runtime_error {
    truncation_error(const std::string& what, int suggested_terms)
        : std::runtime_error(what), suggested(suggested_terms) {}
    int suggested;
};

/// Time step constraint violated in a marching scheme.
struct step_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Spectral data outside the admissible range (e.g. eigenvalue <= -1 for
/// the Klein-Gordon branch).
struct spectral_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace scat1d
