#include "photonlink/scaling.hpp"

#include <cmath>

#include "photonlink/constants.hpp"

namespace photonlink::scaling {

WiringTech WiringTech::coax(double passive_load, double attenuation)
{
    if (passive_load < 0) throw ConfigError("passive_load must be >= 0");
    if (attenuation <= 0 || attenuation > 1) {
        throw ConfigError("coax attenuation must be in (0, 1]");
    }
    return WiringTech{WiringKind::coax, passive_load, attenuation, 0.0, 0.0};
}

WiringTech WiringTech::photonic(double passive_load, double responsivity,
                                double impedance)
{
    if (passive_load < 0) throw ConfigError("passive_load must be >= 0");
    if (responsivity <= 0) throw ConfigError("responsivity must be > 0");
    if (impedance <= 0) throw ConfigError("impedance must be > 0");
    return WiringTech{WiringKind::photonic, passive_load, 1.0, responsivity,
                      impedance};
}

ControlPulseSpec::ControlPulseSpec(double omega_q_, double rabi_,
                                   double gamma_ext_, double shape_mean_,
                                   double duty_cycle_)
    : omega_q(omega_q_), rabi(rabi_), gamma_ext(gamma_ext_),
      shape_mean(shape_mean_), duty_cycle(duty_cycle_)
{
    if (omega_q <= 0) throw ConfigError("omega_q must be > 0");
    if (rabi < 0) throw ConfigError("rabi must be >= 0");
    if (gamma_ext <= 0) throw ConfigError("gamma_ext must be > 0");
    if (shape_mean <= 0 || shape_mean > 1) {
        throw ConfigError("shape_mean must be in (0, 1]");
    }
    if (duty_cycle < 0 || duty_cycle > 1) {
        throw ConfigError("duty_cycle must be in [0, 1]");
    }
}

ReadoutNoiseBudget readout_noise_budget(double kappa,
                                        const metrology::LinkPath& path,
                                        double alpha_sq)
{
    if (kappa <= 0) throw ConfigError("kappa must be > 0");
    if (alpha_sq < 0) throw ConfigError("alpha_sq must be >= 0");
    const double alpha = std::sqrt(alpha_sq);
    const double theta = path.theta();
    ReadoutNoiseBudget b;
    b.photocurrent = std::sqrt(kappa * theta) * alpha;
    b.n_bar = 2.0 * constants::elementary_charge * std::sqrt(kappa / theta) * alpha;
    b.efficiency = 1.0 / (1.0 + 2.0 * b.n_bar);
    return b;
}

double gate_error(const ControlPulseSpec& spec, const metrology::LinkPath& path,
                  double gamma_down, double i_avg)
{
    if (gamma_down < 0) throw ConfigError("gamma_down must be >= 0");
    if (i_avg <= 0) throw ConfigError("i_avg must be > 0");
    const double theta = path.theta();
    const double e = constants::elementary_charge;

    // shot-noise occupancy seen by the qubit through the external coupling
    const double n_ext = 2.0 * e * i_avg / theta;
    const double n_bar =
        (gamma_down > 0) ? spec.gamma_ext * n_ext / gamma_down : 0.0;
    const double omega_r = i_avg * std::sqrt(2.0 * spec.gamma_ext / theta);
    if (omega_r < 10.0 * (1.0 + n_bar) * gamma_down) {
        throw ValidityViolation(
            "pi-pulse error formula requires Omega_R >> (1+n) Gamma_down");
    }

    return std::numbers::pi / std::sqrt(2.0) *
           (gamma_down / i_avg * std::sqrt(theta / spec.gamma_ext) +
            2.0 * e * std::sqrt(spec.gamma_ext / theta));
}

double gate_error_asymptote(const metrology::LinkPath& path, double gamma_ext)
{
    return std::numbers::pi / std::sqrt(2.0) * 2.0 *
           constants::elementary_charge *
           std::sqrt(gamma_ext / path.theta());
}

double active_heat(const ControlPulseSpec& spec, const WiringTech& tech)
{
    const double p_bar = constants::hbar * spec.omega_q * spec.rabi * spec.rabi *
                         spec.shape_mean * spec.shape_mean /
                         (4.0 * spec.gamma_ext);
    if (tech.kind == WiringKind::coax) {
        return p_bar * (1.0 / tech.attenuation - 1.0);
    }
    if (p_bar == 0.0) return 0.0;
    return std::sqrt(2.0 * p_bar /
                     (tech.impedance * tech.responsivity * tech.responsivity));
}

double qubit_count(const ControlPulseSpec& spec, const WiringTech& tech,
                   double cooling)
{
    if (cooling <= 0) throw ConfigError("cooling must be > 0");
    const double load =
        tech.passive_load + spec.duty_cycle * active_heat(spec, tech);
    if (load <= 0) throw ConfigError("per-line heat load must be > 0");
    return cooling / load;
}

double crossover_duty_cycle(const ControlPulseSpec& spec, const WiringTech& a,
                            const WiringTech& b, double cooling, double d_lo,
                            double d_hi, double rel_tol)
{
    if (d_lo <= 0 || d_hi <= d_lo) throw ConfigError("bad bisection bracket");
    auto diff = [&](double d) {
        ControlPulseSpec s = spec;
        s.duty_cycle = d;
        return qubit_count(s, a, cooling) - qubit_count(s, b, cooling);
    };
    double lo = std::log(d_lo), hi = std::log(d_hi);
    double f_lo = diff(d_lo), f_hi = diff(d_hi);
    if (f_lo * f_hi > 0) {
        throw ConfigError("no crossover in bracket");
    }
    while (hi - lo > rel_tol) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = diff(std::exp(mid));
        if (f_lo * f_mid <= 0) {
            hi = mid;
            f_hi = f_mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

} // namespace photonlink::scaling
