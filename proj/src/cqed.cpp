#include "photonlink/cqed.hpp"

#include <cmath>
#include <string>

namespace photonlink::cqed {

namespace {

void require(bool ok, const std::string& msg)
{
    if (!ok) throw ConfigError(msg);
}

} // namespace

TransmonParams::TransmonParams(double omega_q_, double anharmonicity_,
                               double gamma_int_, double gamma_ext_,
                               int n_levels_)
    : omega_q(omega_q_), anharmonicity(anharmonicity_), gamma_int(gamma_int_),
      gamma_ext(gamma_ext_), n_levels(n_levels_)
{
    require(omega_q > 0, "transmon.omega_q must be > 0");
    require(anharmonicity > 0, "transmon.anharmonicity must be > 0");
    require(gamma_int >= 0, "transmon.gamma_int must be >= 0");
    require(gamma_ext >= 0, "transmon.gamma_ext must be >= 0");
    require(n_levels >= 2, "transmon.n_levels must be >= 2");
}

CavityParams::CavityParams(double omega_c_, double kappa_, double g_)
    : omega_c(omega_c_), kappa(kappa_), g(g_)
{
    require(omega_c > 0, "cavity.omega_c must be > 0");
    require(kappa > 0, "cavity.kappa must be > 0");
    require(g >= 0, "cavity.g must be >= 0");
}

DispersiveParams dispersive_params(const TransmonParams& t, const CavityParams& c)
{
    const double delta = c.omega_c - t.omega_q;
    if (std::abs(delta) < 10.0 * c.g) {
        throw DispersiveRegimeViolation(
            "dispersive regime requires |delta| >= 10 g, got |delta| = " +
            std::to_string(std::abs(delta)) + " rad/s vs 10 g = " +
            std::to_string(10.0 * c.g) + " rad/s");
    }
    DispersiveParams d;
    d.delta = delta;
    d.chi = (c.g * c.g / delta) * t.anharmonicity / (delta + t.anharmonicity);
    d.beta = c.kappa * c.kappa / (c.kappa * c.kappa + 4.0 * d.chi * d.chi);
    d.n_crit = delta * delta / (4.0 * c.g * c.g);
    return d;
}

std::complex<double> cavity_steady_state(const DispersiveParams& d,
                                         const CavityParams& c,
                                         std::complex<double> drive_amp,
                                         double omega_d, char qubit_state)
{
    require(qubit_state == 'g' || qubit_state == 'e',
            "qubit_state must be 'g' or 'e'");
    // Cavity pulled to omega_c + chi for g, omega_c - chi for e.
    const double pull = (qubit_state == 'g') ? -d.chi : d.chi;
    const std::complex<double> denom(omega_d - c.omega_c + pull, c.kappa / 2.0);
    const std::complex<double> alpha =
        std::complex<double>(0.0, std::sqrt(c.kappa)) * drive_amp / denom;
    if (std::norm(alpha) >= d.n_crit) {
        throw CriticalPhotonExceeded(
            "|alpha|^2 = " + std::to_string(std::norm(alpha)) +
            " >= n_crit = " + std::to_string(d.n_crit));
    }
    return alpha;
}

std::complex<double> output_field(const CavityParams& c,
                                  std::complex<double> alpha,
                                  std::complex<double> drive_amp)
{
    return std::sqrt(c.kappa) * alpha - drive_amp;
}

CoherentReadoutState readout_state(const DispersiveParams& d,
                                   const CavityParams& c,
                                   std::complex<double> drive_amp,
                                   double omega_d)
{
    CoherentReadoutState s;
    s.alpha_g = cavity_steady_state(d, c, drive_amp, omega_d, 'g');
    s.alpha_e = cavity_steady_state(d, c, drive_amp, omega_d, 'e');
    s.phase_shift = 2.0 * std::atan(2.0 * d.chi / c.kappa);
    s.gamma_m = measurement_rate(c, s.alpha_g, s.alpha_e);
    return s;
}

double measurement_rate(const CavityParams& c, std::complex<double> alpha_g,
                        std::complex<double> alpha_e)
{
    return c.kappa * std::norm(alpha_e - alpha_g);
}

double readout_fidelity(double gamma_m, double tau, double eta)
{
    require(tau >= 0, "tau must be >= 0");
    require(eta > 0 && eta <= 1, "eta must be in (0, 1]");
    return std::erf(std::sqrt(eta * tau * gamma_m / 2.0));
}

StarkDephasing stark_and_dephasing(const DispersiveParams& d,
                                   const CavityParams& c, double n_bar)
{
    require(n_bar >= 0, "n_bar must be >= 0");
    StarkDephasing out;
    out.stark_shift = d.beta * 2.0 * d.chi * n_bar;
    out.gamma_phi = d.beta * 4.0 * d.chi * d.chi / c.kappa * n_bar;
    out.valid_regime = n_bar <= 0.1;
    return out;
}

double detailed_balance_population(const TransmonParams& t, double n_int,
                                   double n_ext)
{
    require(n_int >= 0 && n_ext >= 0, "occupancies must be >= 0");
    require(t.gamma_1() > 0, "Gamma_int + Gamma_ext must be > 0");
    const double n = (t.gamma_int * n_int + t.gamma_ext * n_ext) / t.gamma_1();
    return n / (1.0 + n);
}

double rabi_rate_analytic(const TransmonParams& t, double photon_flux)
{
    require(photon_flux >= 0, "photon_flux must be >= 0");
    return 2.0 * std::sqrt(photon_flux * t.gamma_ext);
}

} // namespace photonlink::cqed
