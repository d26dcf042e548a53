#include "photonlink/dynamics.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "photonlink/constants.hpp"

namespace photonlink::dynamics {

using std::complex;
using namespace std::complex_literals;

LadderHamiltonian::LadderHamiltonian(int n_levels_, double anharmonicity_,
                                     double detuning_)
    : n_levels(n_levels_), anharmonicity(anharmonicity_), detuning(detuning_)
{
    if (n_levels < 2) throw ConfigError("n_levels must be >= 2");
    if (anharmonicity < 0) throw ConfigError("anharmonicity must be >= 0");
}

ComplexMatrix LadderHamiltonian::drift() const
{
    ComplexMatrix h = ComplexMatrix::Zero(n_levels, n_levels);
    for (int n = 0; n < n_levels; ++n) {
        h(n, n) = -n * detuning - anharmonicity * n * (n - 1) / 2.0;
    }
    return h;
}

ComplexMatrix LadderHamiltonian::drive_coupling() const
{
    ComplexMatrix b = lowering();
    return 0.5 * (b + b.adjoint()).eval();
}

ComplexMatrix LadderHamiltonian::lowering() const
{
    ComplexMatrix b = ComplexMatrix::Zero(n_levels, n_levels);
    for (int n = 0; n < n_levels - 1; ++n) {
        b(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
    }
    return b;
}

DissipatorSpec::DissipatorSpec(double gamma_down_, double n_bath_,
                               double gamma_phi_)
    : gamma_down(gamma_down_), n_bath(n_bath_), gamma_phi(gamma_phi_)
{
    if (gamma_down < 0 || n_bath < 0 || gamma_phi < 0) {
        throw ConfigError("dissipator rates must be >= 0");
    }
}

PulseShape PulseShape::constant(double duration)
{
    return PulseShape{[](double) { return 1.0; }, duration, 1.0, 1.0};
}

PulseShape PulseShape::cosine_squared(double duration)
{
    auto env = [duration](double t) {
        const double s = std::sin(std::numbers::pi * t / duration);
        return s * s;
    };
    // mean of sin^2 over a full window is exactly 1/2, mean square 3/8
    return PulseShape{env, duration, 0.5, 0.375};
}

namespace {

struct LindbladGenerator {
    ComplexMatrix h_drift;
    ComplexMatrix h_drive;  // unit-amplitude coupling
    std::vector<ComplexMatrix> collapse;
    std::vector<ComplexMatrix> collapse_sq;  // C^dag C, precomputed

    ComplexMatrix operator()(double t, const ComplexMatrix& rho,
                             const DriveSpec& drive) const
    {
        double amp = drive.amplitude;
        if (t <= drive.shape.duration) amp *= drive.shape.envelope(t);
        else amp = 0.0;
        const ComplexMatrix h = h_drift + amp * h_drive;

        ComplexMatrix out = -1.0i * (h * rho - rho * h);
        for (std::size_t k = 0; k < collapse.size(); ++k) {
            out += collapse[k] * rho * collapse[k].adjoint();
            out -= 0.5 * (collapse_sq[k] * rho + rho * collapse_sq[k]);
        }
        return out;
    }
};

LindbladGenerator make_generator(const LadderHamiltonian& h,
                                 const DissipatorSpec& d)
{
    LindbladGenerator gen;
    gen.h_drift = h.drift();
    gen.h_drive = h.drive_coupling();
    const ComplexMatrix b = h.lowering();
    const double down = d.gamma_down * (1.0 + d.n_bath);
    if (down > 0) gen.collapse.push_back(std::sqrt(down) * b);
    if (d.gamma_up() > 0) gen.collapse.push_back(std::sqrt(d.gamma_up()) * b.adjoint());
    if (d.gamma_phi > 0) {
        gen.collapse.push_back(std::sqrt(2.0 * d.gamma_phi) *
                               (b.adjoint() * b).eval());
    }
    for (const auto& c : gen.collapse) {
        gen.collapse_sq.push_back(c.adjoint() * c);
    }
    return gen;
}

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187,
                 A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;

double error_norm(const ComplexMatrix& err, const ComplexMatrix& y0,
                  const ComplexMatrix& y1, double rtol, double atol)
{
    double m = 0.0;
    for (int j = 0; j < err.cols(); ++j) {
        for (int i = 0; i < err.rows(); ++i) {
            const double scale =
                atol + rtol * std::max(std::abs(y0(i, j)), std::abs(y1(i, j)));
            m = std::max(m, std::abs(err(i, j)) / scale);
        }
    }
    return m;
}

// Advance rho from t to t_end with adaptive Dopri5 (or fixed steps when
// opts.fixed_step > 0).
void integrate_to(const LindbladGenerator& gen, const DriveSpec& drive,
                  ComplexMatrix& rho, double& t, double t_end,
                  double& h_step, const IntegratorOptions& opts)
{
    auto f = [&](double tt, const ComplexMatrix& y) { return gen(tt, y, drive); };

    if (opts.fixed_step > 0) {
        while (t < t_end - 1e-300) {
            const double h = std::min(opts.fixed_step, t_end - t);
            const ComplexMatrix k1 = f(t, rho);
            const ComplexMatrix k2 = f(t + C2 * h, rho + h * (A21 * k1));
            const ComplexMatrix k3 = f(t + C3 * h, rho + h * (A31 * k1 + A32 * k2));
            const ComplexMatrix k4 =
                f(t + C4 * h, rho + h * (A41 * k1 + A42 * k2 + A43 * k3));
            const ComplexMatrix k5 = f(
                t + C5 * h, rho + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
            const ComplexMatrix k6 =
                f(t + h, rho + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 +
                                    A65 * k5));
            rho += h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
            t += h;
        }
        return;
    }

    const double h_min = 1e-16 * std::max(std::abs(t_end), 1.0);
    while (t < t_end - 1e-300) {
        double h = std::min(h_step, t_end - t);
        const ComplexMatrix k1 = f(t, rho);
        for (;;) {
            const ComplexMatrix k2 = f(t + C2 * h, rho + h * (A21 * k1));
            const ComplexMatrix k3 = f(t + C3 * h, rho + h * (A31 * k1 + A32 * k2));
            const ComplexMatrix k4 =
                f(t + C4 * h, rho + h * (A41 * k1 + A42 * k2 + A43 * k3));
            const ComplexMatrix k5 = f(
                t + C5 * h, rho + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
            const ComplexMatrix k6 =
                f(t + h, rho + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 +
                                    A65 * k5));
            const ComplexMatrix y1 =
                rho + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
            const ComplexMatrix k7 = f(t + h, y1);
            const ComplexMatrix err = h * (E1 * k1 + E3 * k3 + E4 * k4 +
                                           E5 * k5 + E6 * k6 + E7 * k7);
            const double en = error_norm(err, rho, y1, opts.rel_tol, opts.abs_tol);
            if (en <= 1.0) {
                rho = y1;
                t += h;
                const double grow =
                    (en > 0) ? 0.9 * std::pow(en, -0.2) : 5.0;
                h_step = h * std::min(5.0, std::max(0.2, grow));
                break;
            }
            h *= std::max(0.1, 0.9 * std::pow(en, -0.2));
            if (h < h_min) {
                throw IntegratorFailure("step size underflow at t = " +
                                        std::to_string(t));
            }
        }
    }
}

} // namespace

TimeTrace evolve_lindblad(const LadderHamiltonian& h, const DissipatorSpec& d,
                          const DriveSpec& drive, double t_final,
                          const IntegratorOptions& opts)
{
    if (t_final <= 0) throw ConfigError("t_final must be > 0");
    const LindbladGenerator gen = make_generator(h, d);

    ComplexMatrix rho = ComplexMatrix::Zero(h.n_levels, h.n_levels);
    rho(0, 0) = 1.0;

    TimeTrace trace;
    trace.times.reserve(opts.n_samples + 1);
    trace.populations.reserve(opts.n_samples + 1);
    trace.sigma_x.reserve(opts.n_samples + 1);

    double t = 0.0;
    double h_step = t_final / (100.0 * opts.n_samples);
    for (int i = 0; i <= opts.n_samples; ++i) {
        const double t_sample = t_final * i / opts.n_samples;
        if (i > 0) integrate_to(gen, drive, rho, t, t_sample, h_step, opts);
        std::vector<double> pops(h.n_levels);
        for (int n = 0; n < h.n_levels; ++n) pops[n] = rho(n, n).real();
        // the top level is a truncation artifact only when the ladder has
        // more than the two physical qubit levels
        if (h.n_levels >= 3 && pops[h.n_levels - 1] > opts.truncation_limit) {
            throw TruncationLeak("top-level population " +
                                 std::to_string(pops[h.n_levels - 1]) +
                                 " exceeds " +
                                 std::to_string(opts.truncation_limit));
        }
        trace.times.push_back(t_sample);
        trace.populations.push_back(std::move(pops));
        trace.sigma_x.push_back(2.0 * rho(0, 1).real());
    }
    return trace;
}

double rabi_frequency(const TimeTrace& trace)
{
    const std::size_t n = trace.times.size();
    if (n < 16) throw NoOscillation("trace too short");
    const double dt = trace.times[1] - trace.times[0];

    // mean-subtracted, Hann-windowed P_e
    std::vector<double> x(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += trace.excited_population(i);
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w =
            0.5 - 0.5 * std::cos(constants::two_pi * i / (n - 1));
        x[i] = (trace.excited_population(i) - mean) * w;
    }

    // zero-padded direct DFT; trace lengths are small enough
    const std::size_t n_pad = 4 * n;
    std::vector<double> power(n_pad / 2);
    for (std::size_t k = 1; k < n_pad / 2; ++k) {
        double re = 0.0, im = 0.0;
        const double w0 = constants::two_pi * k / n_pad;
        for (std::size_t i = 0; i < n; ++i) {
            re += x[i] * std::cos(w0 * i);
            im -= x[i] * std::sin(w0 * i);
        }
        power[k] = re * re + im * im;
    }

    std::size_t k_peak = 1;
    double p_max = 0.0, p_sum = 0.0;
    for (std::size_t k = 1; k < power.size(); ++k) {
        p_sum += power[k];
        if (power[k] > p_max) {
            p_max = power[k];
            k_peak = k;
        }
    }
    const double p_floor = p_sum / static_cast<double>(power.size() - 1);
    if (p_max < 10.0 * p_floor || k_peak + 1 >= power.size()) {
        throw NoOscillation("no dominant spectral peak");
    }
    // require at least ~5 periods in the record
    if (k_peak < 5 * n_pad / n) {
        throw NoOscillation("fewer than 5 oscillation periods in trace");
    }

    // quadratic interpolation on log power around the peak
    const double lm = std::log(power[k_peak - 1]);
    const double l0 = std::log(power[k_peak]);
    const double lp = std::log(power[k_peak + 1]);
    const double denom = lm - 2.0 * l0 + lp;
    const double shift = (denom != 0.0) ? 0.5 * (lm - lp) / denom : 0.0;
    const double k_interp = static_cast<double>(k_peak) + shift;
    return constants::two_pi * k_interp / (n_pad * dt);
}

std::vector<RabiCurvePoint> rabi_vs_amplitude(const cqed::TransmonParams& t,
                                              const std::vector<double>& fluxes,
                                              const RabiLinkMap& link,
                                              const IntegratorOptions& opts)
{
    if (link.attenuation <= 0 || link.attenuation > 1) {
        throw ConfigError("link.attenuation must be in (0, 1]");
    }
    if (link.impedance <= 0) throw ConfigError("link.impedance must be > 0");

    std::vector<RabiCurvePoint> curve;
    curve.reserve(fluxes.size());
    const DissipatorSpec no_loss(0.0, 0.0, 0.0);

    for (double flux : fluxes) {
        RabiCurvePoint p;
        p.photon_flux = flux;
        p.photocurrent = std::sqrt(2.0 * constants::hbar * t.omega_q * flux /
                                   (link.attenuation * link.impedance));
        p.omega_two_level = cqed::rabi_rate_analytic(t, flux);
        if (p.omega_two_level == 0.0) {
            p.omega_multilevel = 0.0;
        } else {
            const double t_final = 30.0 * constants::two_pi / p.omega_two_level;
            IntegratorOptions sim_opts = opts;
            // leakage to the top level is the observable here, not a fault
            sim_opts.truncation_limit = 1.0;
            // the drive tracks the power-shifted 0-1 transition: level |1> is
            // pushed up by |<1|H_d|2>|^2 / alpha = Omega^2 / (2 alpha)
            const double stark = p.omega_two_level * p.omega_two_level /
                                 (2.0 * t.anharmonicity);
            const LadderHamiltonian ladder(t.n_levels, t.anharmonicity, stark);
            const DriveSpec drive{p.omega_two_level,
                                  PulseShape::constant(t_final)};
            const TimeTrace trace =
                evolve_lindblad(ladder, no_loss, drive, t_final, sim_opts);
            p.omega_multilevel = rabi_frequency(trace);
        }
        curve.push_back(p);
    }
    return curve;
}

TimeTrace ramsey(const cqed::TransmonParams& t, const DissipatorSpec& d,
                 double stark_shift, const std::vector<double>& delays,
                 double detuning)
{
    const double gamma_2 = t.gamma_1() / 2.0 + d.gamma_phi;
    const double omega = detuning + stark_shift;

    TimeTrace trace;
    trace.times = delays;
    trace.populations.reserve(delays.size());
    trace.sigma_x.reserve(delays.size());
    for (double delay : delays) {
        if (delay < 0) throw ConfigError("delays must be >= 0");
        const double s =
            std::cos(omega * delay) * std::exp(-gamma_2 * delay);
        trace.sigma_x.push_back(s);
        trace.populations.push_back({(1.0 - s) / 2.0, (1.0 + s) / 2.0});
    }
    return trace;
}

} // namespace photonlink::dynamics
