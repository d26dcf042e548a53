#include "photonlink/photonic_chain.hpp"

#include <cmath>
#include <string>

namespace photonlink::photonics {

namespace {

void require(bool ok, const std::string& msg)
{
    if (!ok) throw ConfigError(msg);
}

} // namespace

Laser::Laser(double wavelength_, double mean_power_, double rin_)
    : wavelength(wavelength_), mean_power(mean_power_), rin(rin_)
{
    require(wavelength > 0, "laser.wavelength must be > 0");
    require(mean_power >= 0, "laser.mean_power must be >= 0");
    require(rin >= 0, "laser.rin must be >= 0");
}

double Laser::optical_omega() const
{
    return constants::two_pi * constants::speed_of_light / wavelength;
}

EomModel::EomModel(double v_pi_, double v_dc_, double input_impedance_,
                   double noise_temperature_)
    : v_pi(v_pi_), v_dc(v_dc_), input_impedance(input_impedance_),
      noise_temperature(noise_temperature_)
{
    require(v_pi > 0, "eom.v_pi must be > 0");
    require(input_impedance > 0, "eom.input_impedance must be > 0");
    require(noise_temperature >= 0, "eom.noise_temperature must be >= 0");
}

Photodiode::Photodiode(double responsivity_, double cutoff_3db_,
                       double dark_current_, double bias_voltage_)
    : responsivity(responsivity_), cutoff_3db(cutoff_3db_),
      dark_current(dark_current_), bias_voltage(bias_voltage_)
{
    require(responsivity >= 0, "photodiode.responsivity must be >= 0");
    require(cutoff_3db > 0, "photodiode.cutoff_3db must be > 0");
    require(dark_current >= 0, "photodiode.dark_current must be >= 0");
}

ModulationTone::ModulationTone(double depth_, double frequency_, double phase_)
    : depth(depth_), frequency(frequency_), phase(phase_)
{
    require(depth >= 0 && depth <= 1, "tone.depth must be in [0, 1]");
    require(frequency >= 0, "tone.frequency must be >= 0");
}

PhotonicChain::PhotonicChain(Laser laser_, EomModel eom_, Photodiode photodiode_)
    : laser(laser_), eom(eom_), photodiode(photodiode_)
{
    const double bound = max_responsivity(laser.wavelength);
    if (photodiode.responsivity > bound) {
        throw ConfigError(
            "photodiode.responsivity " + std::to_string(photodiode.responsivity) +
            " A/W exceeds the quantum-efficiency bound " + std::to_string(bound) +
            " A/W at wavelength " + std::to_string(laser.wavelength * 1e9) + " nm");
    }
}

double max_responsivity(double wavelength)
{
    const double omega_o = constants::two_pi * constants::speed_of_light / wavelength;
    return constants::elementary_charge / (constants::hbar * omega_o);
}

double eom_transfer(const EomModel& eom, double mean_power, double v_in)
{
    return mean_power * (1.0 + std::sin(std::numbers::pi * (v_in + eom.v_dc) / eom.v_pi));
}

double photocurrent(const Photodiode& pd, double p_optical)
{
    return pd.responsivity * p_optical + pd.dark_current;
}

double pd_transfer(const Photodiode& pd, double omega)
{
    const double omega_3db = constants::to_angular(pd.cutoff_3db);
    const double x = omega / omega_3db;
    return 1.0 / std::sqrt(1.0 + x * x);
}

double microwave_power(double i_avg, const ModulationTone& tone,
                       const Photodiode& pd, double z_load)
{
    const double h = pd_transfer(pd, tone.frequency);
    return 0.5 * tone.depth * tone.depth * i_avg * i_avg * h * h * z_load;
}

double shot_noise(double i_avg, double omega, const Photodiode& pd)
{
    const double h = pd_transfer(pd, omega);
    return 2.0 * constants::elementary_charge * i_avg * h * h;
}

double eom_noise(const EomModel& eom, double i_avg)
{
    const double s_v = 4.0 * constants::boltzmann * eom.noise_temperature *
                       eom.input_impedance;
    const double pi_over_vpi = std::numbers::pi / eom.v_pi;
    return s_v * i_avg * i_avg * pi_over_vpi * pi_over_vpi;
}

double rin_noise(const Laser& laser, double i_avg)
{
    return i_avg * i_avg * laser.rin;
}

NoiseBudget total_noise(const Laser& laser, const EomModel& eom,
                        const Photodiode& pd, double i_avg, double omega)
{
    NoiseBudget b;
    b.shot = shot_noise(i_avg, omega, pd);
    b.eom_voltage = eom_noise(eom, i_avg);
    b.rin = rin_noise(laser, i_avg);
    b.total = b.shot + b.eom_voltage + b.rin;
    return b;
}

} // namespace photonlink::photonics
