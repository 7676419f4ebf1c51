#pragma once

#include <stdexcept>
#include <string>

namespace rdg {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A probability vector contains a negative entry.
struct NegativeMass : Error {
    using Error::Error;
};

/// A probability vector does not sum to one within tolerance.
struct NotNormalized : Error {
    using Error::Error;
};

/// alpha outside the admissible interval (1/2 - tau/2, 1/2).
struct InvalidAlpha : Error {
    using Error::Error;
};

/// A colour with positive mass admits no vertex type.
struct OrphanColour : Error {
    using Error::Error;
};

/// A drawn colour has no admissible source or target vertex in the realization.
struct EmptyAdmissibleSet : Error {
    using Error::Error;
};

/// Two experiment configurations disagree on the compared metric or sample size.
struct MetricMismatch : Error {
    using Error::Error;
};

} // namespace rdg
