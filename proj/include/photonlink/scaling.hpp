#ifndef PHOTONLINK_SCALING_HPP
#define PHOTONLINK_SCALING_HPP

#include <vector>

#include "photonlink/errors.hpp"
#include "photonlink/noise_metrology.hpp"

namespace photonlink::scaling {

enum class WiringKind { coax, photonic };

/// One control-line technology and its heat-load parameters.
struct WiringTech {
    WiringKind kind;
    double passive_load;  // W per line
    double attenuation;   // coax only, power ratio in (0, 1]
    double responsivity;  // photonic only, A/W
    double impedance;     // Ohm

    static WiringTech coax(double passive_load, double attenuation);
    static WiringTech photonic(double passive_load, double responsivity,
                               double impedance);
};

struct ControlPulseSpec {
    double omega_q;     // rad/s
    double rabi;        // Omega_R [rad/s]
    double gamma_ext;   // 1/s
    double shape_mean;  // S_bar in (0, 1]
    double duty_cycle;  // D in [0, 1]

    ControlPulseSpec(double omega_q, double rabi, double gamma_ext,
                     double shape_mean, double duty_cycle);
};

struct ReadoutNoiseBudget {
    double photocurrent;  // A
    double n_bar;         // shot-noise occupancy at the load
    double efficiency;    // 1/(1 + 2 n_bar)
};

/// Shot-noise budget at the optimal readout point 2 chi = kappa,
/// omega_d = omega_c: I = sqrt(kappa theta) |alpha|,
/// n = 2e sqrt(kappa/theta) |alpha|, eta = 1/(1+2n).
ReadoutNoiseBudget readout_noise_budget(double kappa,
                                        const metrology::LinkPath& path,
                                        double alpha_sq);

/// Pi-pulse error with shot-noise-driven excitation:
/// eps = (pi/sqrt(2)) [ (G_down/I) sqrt(theta/G_ext) + 2e sqrt(G_ext/theta) ].
/// Throws ValidityViolation unless Omega_R >= 10 (1+n) G_down.
double gate_error(const ControlPulseSpec& spec, const metrology::LinkPath& path,
                  double gamma_down, double i_avg);

/// High-photocurrent floor of gate_error.
double gate_error_asymptote(const metrology::LinkPath& path, double gamma_ext);

/// Heat dissipated at the cold stage while a control pulse is on [W].
double active_heat(const ControlPulseSpec& spec, const WiringTech& tech);

/// N = cooling / (passive + D * active).
double qubit_count(const ControlPulseSpec& spec, const WiringTech& tech,
                   double cooling);

/// Duty cycle at which two technologies support the same qubit count,
/// found by bisection on log D over [d_lo, d_hi]. Throws ConfigError when
/// no sign change exists in the bracket.
double crossover_duty_cycle(const ControlPulseSpec& spec, const WiringTech& a,
                            const WiringTech& b, double cooling,
                            double d_lo = 1e-5, double d_hi = 1.0,
                            double rel_tol = 1e-6);

} // namespace photonlink::scaling

#endif
