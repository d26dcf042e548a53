#ifndef PHOTONLINK_DYNAMICS_HPP
#define PHOTONLINK_DYNAMICS_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "photonlink/cqed.hpp"
#include "photonlink/errors.hpp"

namespace photonlink::dynamics {

using ComplexMatrix = Eigen::MatrixXcd;

/// Truncated anharmonic ladder in the frame rotating at the drive
/// frequency. Diagonal entries are -n*detuning - alpha*n(n-1)/2; the
/// drive couples neighbours with sqrt(n+1) matrix elements.
struct LadderHamiltonian {
    int n_levels;
    double anharmonicity;  // rad/s
    double detuning;       // omega_d - omega_q [rad/s]

    LadderHamiltonian(int n_levels, double anharmonicity, double detuning = 0.0);

    /// Drift part (diagonal), independent of the drive.
    ComplexMatrix drift() const;

    /// Drive coupling (Omega/2)(b + b^dag) for unit Omega.
    ComplexMatrix drive_coupling() const;

    /// Lowering operator b with sqrt(n) elements.
    ComplexMatrix lowering() const;
};

/// Dissipation rates. gamma_down is the spontaneous (zero-temperature)
/// relaxation rate; the bath occupancy adds absorption at n_bath*gamma_down
/// and stimulated emission, so the total down rate is (1+n_bath)*gamma_down.
struct DissipatorSpec {
    double gamma_down;  // 1/s
    double n_bath;      // dimensionless
    double gamma_phi;   // 1/s, pure dephasing

    DissipatorSpec(double gamma_down, double n_bath, double gamma_phi);

    double gamma_up() const { return n_bath * gamma_down; }
};

/// Normalized drive envelope S(t) in [0, 1].
struct PulseShape {
    std::function<double(double)> envelope;  // S(t/duration grid in seconds)
    double duration;                         // s
    double mean;                             // integral S / duration
    double mean_square;                      // integral S^2 / duration

    static PulseShape constant(double duration);
    static PulseShape cosine_squared(double duration);
};

struct IntegratorOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int n_samples = 2048;
    double fixed_step = 0.0;  // > 0 selects the fixed-step path
    double truncation_limit = 1e-3;
};

struct TimeTrace {
    std::vector<double> times;                     // s
    std::vector<std::vector<double>> populations;  // [sample][level]
    std::vector<double> sigma_x;                   // 2 Re rho_01 per sample

    double excited_population(std::size_t i) const { return populations[i][1]; }
};

struct DriveSpec {
    double amplitude;  // Omega [rad/s], peak 0-1 Rabi rate
    PulseShape shape;
};

/// Lindblad evolution of the driven damped ladder starting from |g>.
/// Throws TruncationLeak when the top level exceeds the configured limit
/// and IntegratorFailure on step underflow.
TimeTrace evolve_lindblad(const LadderHamiltonian& h, const DissipatorSpec& d,
                          const DriveSpec& drive, double t_final,
                          const IntegratorOptions& opts = {});

/// Dominant oscillation frequency of P_e(t) [rad/s] via windowed DFT with
/// quadratic peak interpolation. Throws NoOscillation when no peak stands
/// above the spectral floor.
double rabi_frequency(const TimeTrace& trace);

struct RabiCurvePoint {
    double photon_flux;        // 1/s at the antenna
    double photocurrent;       // A at the photodiode, via the link mapping
    double omega_two_level;    // 2 sqrt(flux Gamma_ext) [rad/s]
    double omega_multilevel;   // measured from simulation [rad/s]
};

/// Link parameters needed to place the photocurrent axis on a Rabi sweep:
/// A * (1/2) Z I^2 = hbar omega_q * flux.
struct RabiLinkMap {
    double attenuation;  // power ratio in (0, 1]
    double impedance;    // Ohm
};

/// Two-level line vs multilevel simulation over a list of photon fluxes.
std::vector<RabiCurvePoint> rabi_vs_amplitude(const cqed::TransmonParams& t,
                                              const std::vector<double>& fluxes,
                                              const RabiLinkMap& link,
                                              const IntegratorOptions& opts = {});

/// Analytic Ramsey trace: <sigma_x>(delay) = cos((detuning + stark) delay)
/// * exp(-Gamma_2 delay), Gamma_2 = Gamma_1/2 + Gamma_phi.
TimeTrace ramsey(const cqed::TransmonParams& t, const DissipatorSpec& d,
                 double stark_shift, const std::vector<double>& delays,
                 double detuning = 0.0);

} // namespace photonlink::dynamics

#endif
