#ifndef PHOTONLINK_ERRORS_HPP
#define PHOTONLINK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace photonlink {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// |delta| < 10 g: dispersive approximation not applicable.
struct DispersiveRegimeViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Steady-state photon number at or above n_crit.
struct CriticalPhotonExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Occupancy below background beyond statistical tolerance.
struct NegativeNoise : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A formula was evaluated outside its stated validity range.
struct ValidityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive step size underflowed.
struct IntegratorFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Top ladder level accumulated population; increase n_levels.
struct TruncationLeak : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No spectral peak above the noise floor.
struct NoOscillation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace photonlink

#endif
