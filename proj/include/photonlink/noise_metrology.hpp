#ifndef PHOTONLINK_NOISE_METROLOGY_HPP
#define PHOTONLINK_NOISE_METROLOGY_HPP

#include <vector>

#include "photonlink/cqed.hpp"
#include "photonlink/errors.hpp"

namespace photonlink::metrology {

/// Lossy path from photodiode to the device antenna at one frequency.
struct LinkPath {
    double attenuation;   // power ratio A in (0, 1]
    double impedance;     // Ohm
    double target_omega;  // rad/s

    LinkPath(double attenuation, double impedance, double target_omega);

    /// theta = hbar * omega / Z [J/Ohm], always recomputed.
    double theta() const;
};

enum class OccupancyKind { cavity, qubit };

struct OccupancyMeasurement {
    double photocurrent;  // A
    double occupancy;     // n_bar (cavity) or effective qubit n
    double background;    // occupancy at zero photocurrent
    OccupancyKind kind;

    OccupancyMeasurement(double photocurrent, double occupancy,
                         double background, OccupancyKind kind);
};

/// Photon-number spectral density at the load: n = A S_I Z / (hbar omega).
double occupancy_from_noise(double s_i, const LinkPath& path);

/// Cavity-side inversion S_I = (n - background) hbar omega_c / (A Z).
/// Throws NegativeNoise when n < background beyond tolerance.
double extract_si_from_cavity(const OccupancyMeasurement& m,
                              const LinkPath& path, double tolerance = 1e-12);

/// Qubit-side inversion via detailed balance:
/// S_I = (hbar omega_q / (A Z Gamma_ext)) [(G_int+G_ext) n - G_int n_int].
double extract_si_from_qubit(const OccupancyMeasurement& m,
                             const cqed::TransmonParams& t,
                             const LinkPath& path, double n_int,
                             double tolerance = 1e-12);

/// Invert the Stark shift to the intracavity photon number:
/// n = stark / (beta 2 chi).
double stark_calibration(const cqed::DispersiveParams& d, double stark_shift);

struct FitResult {
    double slope;
    double intercept;
    double slope_stderr;
};

/// Weighted least squares y = intercept + slope * x with sigma weights.
FitResult weighted_linear_fit(const std::vector<double>& x,
                              const std::vector<double>& y,
                              const std::vector<double>& sigma);

/// Ordinary least squares on (log x, log y); slope is the power-law index.
FitResult loglog_slope(const std::vector<double>& x,
                       const std::vector<double>& y);

} // namespace photonlink::metrology

#endif
