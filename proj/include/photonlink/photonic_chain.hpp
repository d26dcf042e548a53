#ifndef PHOTONLINK_PHOTONIC_CHAIN_HPP
#define PHOTONLINK_PHOTONIC_CHAIN_HPP

#include "photonlink/constants.hpp"
#include "photonlink/errors.hpp"

namespace photonlink::photonics {

/// Laser source. RIN is treated as white over the band of interest.
struct Laser {
    double wavelength;  // m
    double mean_power;  // W
    double rin;         // 1/Hz

    Laser(double wavelength, double mean_power, double rin);

    /// Optical angular frequency 2*pi*c/wavelength [rad/s].
    double optical_omega() const;
};

/// Lossless, infinite-extinction Mach-Zehnder intensity modulator.
struct EomModel {
    double v_pi;               // V
    double v_dc;               // V, bias (0 = quadrature)
    double input_impedance;    // Ohm
    double noise_temperature;  // K

    EomModel(double v_pi, double v_dc, double input_impedance,
             double noise_temperature);
};

struct Photodiode {
    double responsivity;  // A/W
    double cutoff_3db;    // Hz, RC 3 dB frequency
    double dark_current;  // A
    double bias_voltage;  // V, inert metadata

    Photodiode(double responsivity, double cutoff_3db,
               double dark_current = 0.0, double bias_voltage = 0.0);
};

/// Intensity modulation tone riding on the mean optical power.
struct ModulationTone {
    double depth;      // dimensionless, in [0, 1]
    double frequency;  // rad/s
    double phase;      // rad

    ModulationTone(double depth, double frequency, double phase = 0.0);
};

/// Per-source photocurrent noise decomposition [A^2/Hz].
struct NoiseBudget {
    double shot;
    double eom_voltage;
    double rin;
    double total;  // shot + eom_voltage + rin
};

/// Laser + EOM + photodiode, with the quantum-efficiency bound
/// R <= e/(hbar*omega_o) checked against the laser wavelength.
struct PhotonicChain {
    Laser laser;
    EomModel eom;
    Photodiode photodiode;

    PhotonicChain(Laser laser, EomModel eom, Photodiode photodiode);
};

/// Maximum responsivity e/(hbar*omega_o) for a given wavelength [A/W].
double max_responsivity(double wavelength);

/// EOM output power P(v_in) = P_mean * (1 + sin(pi (v_in + v_dc)/v_pi)).
double eom_transfer(const EomModel& eom, double mean_power, double v_in);

/// I = R * P_optical + dark current.
double photocurrent(const Photodiode& pd, double p_optical);

/// Single-pole low-pass magnitude |H| = 1/sqrt(1 + (omega/omega_3dB)^2).
double pd_transfer(const Photodiode& pd, double omega);

/// Delivered microwave power P = (1/2) m^2 I^2 |H|^2 Z.
double microwave_power(double i_avg, const ModulationTone& tone,
                       const Photodiode& pd, double z_load);

/// Shot noise 2 e I |H(omega)|^2 [A^2/Hz].
double shot_noise(double i_avg, double omega, const Photodiode& pd);

/// Photocurrent noise from EOM input voltage noise:
/// S_V * I^2 * pi^2 / v_pi^2 with S_V = 4 k_B T_N Z_EOM.
double eom_noise(const EomModel& eom, double i_avg);

/// Photocurrent noise from laser RIN: I^2 * RIN.
double rin_noise(const Laser& laser, double i_avg);

/// Component-wise noise budget at the photodiode output.
NoiseBudget total_noise(const Laser& laser, const EomModel& eom,
                        const Photodiode& pd, double i_avg, double omega);

} // namespace photonlink::photonics

#endif
