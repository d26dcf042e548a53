#ifndef PHOTONLINK_CQED_HPP
#define PHOTONLINK_CQED_HPP

#include <complex>

#include "photonlink/errors.hpp"

namespace photonlink::cqed {

/// Transmon parameters. The anharmonicity is positive in the convention
/// where the 1-2 transition sits at omega_q - alpha.
struct TransmonParams {
    double omega_q;        // rad/s
    double anharmonicity;  // rad/s, > 0
    double gamma_int;      // 1/s
    double gamma_ext;      // 1/s
    int n_levels;          // ladder truncation, >= 2

    TransmonParams(double omega_q, double anharmonicity, double gamma_int,
                   double gamma_ext, int n_levels = 5);

    double gamma_1() const { return gamma_int + gamma_ext; }
};

struct CavityParams {
    double omega_c;  // rad/s
    double kappa;    // rad/s
    double g;        // rad/s, exchange coupling

    CavityParams(double omega_c, double kappa, double g);
};

/// Derived dispersive quantities. Construction is guarded by the
/// |delta| >= 10 g validity policy.
struct DispersiveParams {
    double delta;   // omega_c - omega_q [rad/s]
    double chi;     // rad/s
    double beta;    // kappa^2 / (kappa^2 + 4 chi^2)
    double n_crit;  // delta^2 / 4 g^2
};

/// Cavity steady states for qubit in g and e, plus derived readout figures.
struct CoherentReadoutState {
    std::complex<double> alpha_g;
    std::complex<double> alpha_e;
    double phase_shift;  // per-state output phase magnitude 2 atan(2 chi / kappa)
    double gamma_m;      // kappa |alpha_e - alpha_g|^2 [1/s]
};

struct StarkDephasing {
    double stark_shift;  // rad/s
    double gamma_phi;    // 1/s
    bool valid_regime;   // false when n_bar > 0.1 (formula wants n_bar << 1)
};

/// chi = (g^2/delta) * alpha/(delta + alpha), beta, n_crit.
/// Throws DispersiveRegimeViolation when |delta| < 10 g.
DispersiveParams dispersive_params(const TransmonParams& t, const CavityParams& c);

/// Transmon + cavity with the derived dispersive quantities.
struct CqedSystem {
    TransmonParams transmon;
    CavityParams cavity;
    DispersiveParams dispersive;

    CqedSystem(TransmonParams t, CavityParams c)
        : transmon(t), cavity(c), dispersive(dispersive_params(t, c)) {}
};

/// Steady-state cavity amplitude for the given qubit state ('g' or 'e'):
/// alpha = i sqrt(kappa) a_in / (omega_d - omega_c -/+ chi + i kappa/2).
/// Throws CriticalPhotonExceeded when |alpha|^2 >= n_crit.
std::complex<double> cavity_steady_state(const DispersiveParams& d,
                                         const CavityParams& c,
                                         std::complex<double> drive_amp,
                                         double omega_d, char qubit_state);

/// Reflected output field alpha_out = sqrt(kappa) alpha - a_in.
std::complex<double> output_field(const CavityParams& c,
                                  std::complex<double> alpha,
                                  std::complex<double> drive_amp);

/// Both steady states and the measurement rate in one record.
CoherentReadoutState readout_state(const DispersiveParams& d,
                                   const CavityParams& c,
                                   std::complex<double> drive_amp,
                                   double omega_d);

/// Gamma_m = kappa |alpha_e - alpha_g|^2.
double measurement_rate(const CavityParams& c, std::complex<double> alpha_g,
                        std::complex<double> alpha_e);

/// Steady-state assignment fidelity F = erf(sqrt(eta tau Gamma_m / 2)).
double readout_fidelity(double gamma_m, double tau, double eta);

/// Thermal-photon Stark shift beta*2*chi*n_bar and dephasing
/// beta*(4 chi^2/kappa)*n_bar.
StarkDephasing stark_and_dephasing(const DispersiveParams& d,
                                   const CavityParams& c, double n_bar);

/// Excited-state population from bath occupancies via detailed balance:
/// n = (G_int n_int + G_ext n_ext)/(G_int + G_ext), P_e = n/(1+n).
double detailed_balance_population(const TransmonParams& t, double n_int,
                                   double n_ext);

/// Omega_R = 2 sqrt(photon_flux * Gamma_ext).
double rabi_rate_analytic(const TransmonParams& t, double photon_flux);

} // namespace photonlink::cqed

#endif
