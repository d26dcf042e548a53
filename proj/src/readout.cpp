#include "photonlink/readout.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "photonlink/constants.hpp"

namespace photonlink::readout {

namespace {

// counter-based per-shot RNG: splitmix64 over (seed, shot index)
std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state)
{
    return (splitmix64(state) >> 11) * 0x1.0p-53;
}

struct ShotRng {
    std::uint64_t state;

    ShotRng(std::uint64_t seed, std::uint64_t shot)
        : state(seed ^ (0xD1B54A32D192ED03ULL * (shot + 1))) {}

    double gaussian()
    {
        double u1 = uniform01(state);
        while (u1 <= 0.0) u1 = uniform01(state);
        const double u2 = uniform01(state);
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(constants::two_pi * u2);
    }

    double exponential(double mean)
    {
        double u = uniform01(state);
        while (u <= 0.0) u = uniform01(state);
        return -mean * std::log(u);
    }
};

struct SignalModel {
    double mu_g;
    double mu_e;
    double sigma;
    double gamma_m;
};

SignalModel build_model(const cqed::CqedSystem& sys, const ReadoutProtocol& proto)
{
    const std::complex<double> a_in(std::sqrt(proto.drive_photon_flux), 0.0);
    const auto state = cqed::readout_state(sys.dispersive, sys.cavity, a_in,
                                           sys.cavity.omega_c);
    const double kappa = sys.cavity.kappa;
    const double tau = proto.integration_time;

    // transient approach at rate kappa/2: time-averaged amplitude fraction
    const double kt = kappa * tau / 2.0;
    const double ring_up = 1.0 - (1.0 - std::exp(-kt)) / kt;

    const std::complex<double> mid = 0.5 * (state.alpha_g + state.alpha_e);
    const std::complex<double> rot = std::polar(1.0, -proto.demod_phase);

    SignalModel m;
    m.mu_g = ring_up * (rot * (state.alpha_g - mid)).real();
    m.mu_e = ring_up * (rot * (state.alpha_e - mid)).real();
    // vacuum-limited: separation |alpha_e - alpha_g| against this sigma gives
    // F = erf(sqrt(eta tau Gamma_m / 2)) for well-separated Gaussians
    m.sigma = 0.5 / std::sqrt(proto.efficiency * tau * kappa);
    m.gamma_m = state.gamma_m;
    return m;
}

} // namespace

ReadoutProtocol::ReadoutProtocol(double drive_photon_flux_,
                                 double integration_time_, double demod_phase_,
                                 long shots_, double efficiency_, double t1_)
    : drive_photon_flux(drive_photon_flux_), integration_time(integration_time_),
      demod_phase(demod_phase_), shots(shots_), efficiency(efficiency_), t1(t1_)
{
    if (drive_photon_flux < 0) throw ConfigError("drive_photon_flux must be >= 0");
    if (integration_time <= 0) throw ConfigError("integration_time must be > 0");
    if (shots < 2) throw ConfigError("shots must be >= 2");
    if (efficiency <= 0 || efficiency > 1) {
        throw ConfigError("efficiency must be in (0, 1]");
    }
}

double optimal_demod_phase(const cqed::CqedSystem& sys,
                           const ReadoutProtocol& proto)
{
    const std::complex<double> a_in(std::sqrt(proto.drive_photon_flux), 0.0);
    const auto state = cqed::readout_state(sys.dispersive, sys.cavity, a_in,
                                           sys.cavity.omega_c);
    return std::arg(state.alpha_e - state.alpha_g);
}

double flux_for_photon_number(const cqed::CqedSystem& sys, double photon_number)
{
    // |alpha|^2 = kappa |a_in|^2 / (chi^2 + kappa^2/4) at omega_d = omega_c
    const double chi = sys.dispersive.chi;
    const double kappa = sys.cavity.kappa;
    return photon_number * (chi * chi + kappa * kappa / 4.0) / kappa;
}

ShotHistogram simulate_shots(const cqed::CqedSystem& sys,
                             const ReadoutProtocol& proto, std::uint64_t seed,
                             int bins)
{
    const SignalModel m = build_model(sys, proto);
    const double tau = proto.integration_time;
    const long n_g = proto.shots / 2;
    const long n_e = proto.shots - n_g;

    std::vector<double> samples_g(n_g), samples_e(n_e);
    for (long i = 0; i < n_g; ++i) {
        ShotRng rng(seed, static_cast<std::uint64_t>(i));
        samples_g[i] = m.mu_g + m.sigma * rng.gaussian();
    }
    for (long i = 0; i < n_e; ++i) {
        ShotRng rng(seed, static_cast<std::uint64_t>(n_g + i));
        double mean = m.mu_e;
        if (proto.t1 > 0) {
            const double t_decay = rng.exponential(proto.t1);
            if (t_decay < tau) {
                const double f = t_decay / tau;
                mean = f * m.mu_e + (1.0 - f) * m.mu_g;
            }
        }
        samples_e[i] = mean + m.sigma * rng.gaussian();
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double s : samples_g) { lo = std::min(lo, s); hi = std::max(hi, s); }
    for (double s : samples_e) { lo = std::min(lo, s); hi = std::max(hi, s); }
    const double span = (hi > lo) ? hi - lo : 1.0;
    lo -= 1e-9 * span;
    hi += 1e-9 * span;

    ShotHistogram h;
    h.bin_edges.resize(bins + 1);
    for (int k = 0; k <= bins; ++k) {
        h.bin_edges[k] = lo + (hi - lo) * k / bins;
    }
    h.counts_g.assign(bins, 0);
    h.counts_e.assign(bins, 0);
    auto bin_of = [&](double s) {
        int k = static_cast<int>((s - lo) / (hi - lo) * bins);
        return std::clamp(k, 0, bins - 1);
    };
    for (double s : samples_g) ++h.counts_g[bin_of(s)];
    for (double s : samples_e) ++h.counts_e[bin_of(s)];

    h.gamma_m = m.gamma_m;
    h.mu_g = m.mu_g;
    h.mu_e = m.mu_e;
    h.sigma = m.sigma;
    fidelity_from_histogram(h);
    return h;
}

void fidelity_from_histogram(ShotHistogram& h)
{
    const std::size_t bins = h.counts_g.size();
    long total_g = 0, total_e = 0;
    for (std::size_t k = 0; k < bins; ++k) {
        total_g += h.counts_g[k];
        total_e += h.counts_e[k];
    }
    if (total_g == 0 || total_e == 0) {
        throw ConfigError("both preparations must be populated");
    }

    // find the median edge of the combined distribution for tie-breaking
    const long total = total_g + total_e;
    long run = 0;
    std::size_t median_edge = 0;
    for (std::size_t k = 0; k < bins; ++k) {
        run += h.counts_g[k] + h.counts_e[k];
        if (2 * run >= total) {
            median_edge = k + 1;
            break;
        }
    }

    double best = 0.0;
    std::size_t best_edge = median_edge;
    long cum_g = 0, cum_e = 0;
    for (std::size_t k = 1; k <= bins; ++k) {
        cum_g += h.counts_g[k - 1];
        cum_e += h.counts_e[k - 1];
        const double f = std::abs(static_cast<double>(cum_g) / total_g -
                                  static_cast<double>(cum_e) / total_e);
        const bool closer =
            std::llabs(static_cast<long long>(k) -
                       static_cast<long long>(median_edge)) <
            std::llabs(static_cast<long long>(best_edge) -
                       static_cast<long long>(median_edge));
        if (f > best || (f == best && closer)) {
            best = f;
            best_edge = k;
        }
    }
    h.fidelity = best;
    h.threshold = h.bin_edges[best_edge];
}

} // namespace photonlink::readout
