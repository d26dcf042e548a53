#include <doctest.h>

#include <cmath>
#include <complex>

#include "photonlink/constants.hpp"
#include "photonlink/cqed.hpp"
#include "photonlink/readout.hpp"

using namespace photonlink;
using namespace photonlink::readout;
namespace pc = photonlink::constants;

namespace {

cqed::CqedSystem table1_system()
{
    return cqed::CqedSystem(
        cqed::TransmonParams(pc::to_angular(5.052e9), pc::to_angular(210e6),
                             44949.49494949495, 5050.505050505051, 5),
        cqed::CavityParams(pc::to_angular(10.866e9), pc::to_angular(3.09e6),
                           pc::to_angular(294e6)));
}

// drive flux that makes eta*tau*Gamma_m/2 equal the requested value
double flux_for_snr_sq(const cqed::CqedSystem& sys, double eta, double tau,
                       double target)
{
    const double probe_flux = 1e6;
    const auto state =
        cqed::readout_state(sys.dispersive, sys.cavity,
                            {std::sqrt(probe_flux), 0.0}, sys.cavity.omega_c);
    const double gamma_m_per_flux = state.gamma_m / probe_flux;
    return 2.0 * target / (eta * tau * gamma_m_per_flux);
}

// analytic-binned histogram of two Gaussians with the given means
ShotHistogram gaussian_pair_histogram(double mu_g, double mu_e, double sigma,
                                      long shots_per_prep, int bins = 401)
{
    ShotHistogram h;
    const double lo = std::min(mu_g, mu_e) - 6.0 * sigma;
    const double hi = std::max(mu_g, mu_e) + 6.0 * sigma;
    h.bin_edges.resize(bins + 1);
    for (int k = 0; k <= bins; ++k) {
        h.bin_edges[k] = lo + (hi - lo) * k / bins;
    }
    auto cdf = [](double x, double mu, double s) {
        return 0.5 * std::erfc((mu - x) / (s * std::numbers::sqrt2));
    };
    h.counts_g.assign(bins, 0);
    h.counts_e.assign(bins, 0);
    for (int k = 0; k < bins; ++k) {
        const double a = h.bin_edges[k], b = h.bin_edges[k + 1];
        h.counts_g[k] = std::lround(
            shots_per_prep * (cdf(b, mu_g, sigma) - cdf(a, mu_g, sigma)));
        h.counts_e[k] = std::lround(
            shots_per_prep * (cdf(b, mu_e, sigma) - cdf(a, mu_e, sigma)));
    }
    return h;
}

} // namespace

TEST_CASE("protocol validation")
{
    CHECK_NOTHROW(ReadoutProtocol(1e9, 4e-7, 0.0, 100, 0.5, 2e-5));
    CHECK_THROWS_AS(ReadoutProtocol(-1.0, 4e-7, 0.0, 100, 0.5, 2e-5),
                    ConfigError);
    CHECK_THROWS_AS(ReadoutProtocol(1e9, 0.0, 0.0, 100, 0.5, 2e-5), ConfigError);
    CHECK_THROWS_AS(ReadoutProtocol(1e9, 4e-7, 0.0, 100, 0.0, 2e-5), ConfigError);
    CHECK_THROWS_AS(ReadoutProtocol(1e9, 4e-7, 0.0, 100, 1.5, 2e-5), ConfigError);
    CHECK_THROWS_AS(ReadoutProtocol(1e9, 4e-7, 0.0, 1, 0.5, 2e-5), ConfigError);
}

TEST_CASE("drive flux for a target photon number")
{
    const auto sys = table1_system();
    const double flux = flux_for_photon_number(sys, 15.0);
    const auto alpha = cqed::cavity_steady_state(
        sys.dispersive, sys.cavity, {std::sqrt(flux), 0.0}, sys.cavity.omega_c,
        'g');
    CHECK(std::norm(alpha) == doctest::Approx(15.0).epsilon(1e-10));
}

TEST_CASE("optimal demodulation phase maximizes the projected separation")
{
    const auto sys = table1_system();
    const double flux = flux_for_photon_number(sys, 10.0);
    const ReadoutProtocol base(flux, 4e-7, 0.0, 100, 0.5, 0.0);
    const double phi_opt = optimal_demod_phase(sys, base);

    const auto state =
        cqed::readout_state(sys.dispersive, sys.cavity, {std::sqrt(flux), 0.0},
                            sys.cavity.omega_c);
    auto projected_sep = [&](double phi) {
        return std::abs(
            (std::polar(1.0, -phi) * (state.alpha_e - state.alpha_g)).real());
    };
    CHECK(projected_sep(phi_opt) ==
          doctest::Approx(std::abs(state.alpha_e - state.alpha_g))
              .epsilon(1e-12));
    for (double dphi = 0.1; dphi < 3.0; dphi += 0.4) {
        CHECK(projected_sep(phi_opt) >= projected_sep(phi_opt + dphi));
    }
}

TEST_CASE("fidelity from histogram")
{
    SUBCASE("identical distributions give zero at the median")
    {
        auto h = gaussian_pair_histogram(0.0, 0.0, 1.0, 20000);
        fidelity_from_histogram(h);
        CHECK(h.fidelity == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(h.threshold == doctest::Approx(0.0).epsilon(0.05));
    }

    SUBCASE("disjoint distributions give one")
    {
        auto h = gaussian_pair_histogram(0.0, 0.0, 1.0, 20000);
        // shift all excited counts into a disjoint block of bins
        h.counts_e.assign(h.counts_e.size(), 0);
        h.counts_e.back() = 20000;
        h.counts_g.back() = 0;
        fidelity_from_histogram(h);
        CHECK(h.fidelity == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("4 sigma separation gives erf(sqrt(2))")
    {
        auto h = gaussian_pair_histogram(-2.0, 2.0, 1.0, 2000000);
        fidelity_from_histogram(h);
        CHECK(h.fidelity == doctest::Approx(std::erf(std::numbers::sqrt2))
                                .epsilon(0.005 / 0.9545));
        CHECK(h.threshold == doctest::Approx(0.0).epsilon(0.05));
    }

    SUBCASE("an empty preparation is rejected")
    {
        auto h = gaussian_pair_histogram(-2.0, 2.0, 1.0, 1000);
        h.counts_e.assign(h.counts_e.size(), 0);
        CHECK_THROWS_AS(fidelity_from_histogram(h), ConfigError);
    }
}

TEST_CASE("monte-carlo fidelity matches the erf formula without decay")
{
    const auto sys = table1_system();
    const double eta = 0.4;
    const double tau = 1e-4;  // kappa*tau >> 1: transient contribution ~0
    const double flux = flux_for_snr_sq(sys, eta, tau, 2.0);

    ReadoutProtocol proto(flux, tau, 0.0, 40000, eta, 0.0);
    proto.demod_phase = optimal_demod_phase(sys, proto);

    const auto h = simulate_shots(sys, proto, 7);
    const double expected =
        cqed::readout_fidelity(h.gamma_m, tau, eta);  // erf(sqrt(2)) = 0.9545
    CHECK(expected == doctest::Approx(std::erf(std::numbers::sqrt2)).epsilon(1e-9));
    CHECK(h.fidelity == doctest::Approx(expected).epsilon(0.01 / expected));

    SUBCASE("convergence within three standard errors at 1e5 shots")
    {
        ReadoutProtocol big = proto;
        big.shots = 100000;
        const auto hb = simulate_shots(sys, big, 11);
        // se(F) ~ sqrt(2 p(1-p) / (shots/2)), p = P(e|g) = 0.0228
        const double se = std::sqrt(2.0 * 0.0228 * 0.9772 / 50000.0);
        CHECK(std::abs(hb.fidelity - expected) < 3.0 * se + 0.002);
    }

    SUBCASE("vanishing efficiency destroys the fidelity")
    {
        ReadoutProtocol blind = proto;
        blind.efficiency = 1e-6;
        const auto hb = simulate_shots(sys, blind, 5);
        CHECK(hb.fidelity < 0.05);
    }
}

TEST_CASE("monte-carlo reproducibility")
{
    const auto sys = table1_system();
    const double flux = flux_for_photon_number(sys, 15.0);
    ReadoutProtocol proto(flux, 4e-7, 0.0, 4000, 0.4, 2e-5);
    proto.demod_phase = optimal_demod_phase(sys, proto);

    const auto a = simulate_shots(sys, proto, 42);
    const auto b = simulate_shots(sys, proto, 42);
    CHECK(a.counts_g == b.counts_g);
    CHECK(a.counts_e == b.counts_e);
    CHECK(a.bin_edges == b.bin_edges);
    CHECK(a.fidelity == b.fidelity);
    CHECK(a.threshold == b.threshold);

    const auto c = simulate_shots(sys, proto, 43);
    CHECK(a.counts_g != c.counts_g);
}

TEST_CASE("fidelity degrades monotonically with faster qubit decay")
{
    const auto sys = table1_system();
    const double flux = flux_for_photon_number(sys, 15.0);
    const double tau = 4e-7;

    double prev = 1.1;
    for (double t1 : {0.0, 100e-6, 20e-6, 4e-6, 1e-6}) {  // 0 = no decay
        ReadoutProtocol proto(flux, tau, 0.0, 40000, 0.4, t1);
        proto.demod_phase = optimal_demod_phase(sys, proto);
        const auto h = simulate_shots(sys, proto, 19);
        CHECK(h.fidelity < prev);
        prev = h.fidelity;
    }
}

TEST_CASE("device-parameter operating point lands in the expected band")
{
    const auto sys = table1_system();
    const double flux = flux_for_photon_number(sys, 15.0);
    const double tau = 4e-7;
    ReadoutProtocol proto(flux, tau, 0.0, 40000, 0.4, 2e-5);
    proto.demod_phase = optimal_demod_phase(sys, proto);
    const auto h = simulate_shots(sys, proto, 42);
    CHECK(h.fidelity >= 0.96);
    CHECK(h.fidelity <= 0.99);

    SUBCASE("ground preparation is a single gaussian at mu_g")
    {
        long total = 0;
        double mean = 0.0;
        for (std::size_t k = 0; k < h.counts_g.size(); ++k) {
            const double mid = 0.5 * (h.bin_edges[k] + h.bin_edges[k + 1]);
            mean += h.counts_g[k] * mid;
            total += h.counts_g[k];
        }
        mean /= total;
        CHECK(total == 20000);
        CHECK(mean == doctest::Approx(h.mu_g).epsilon(0.02).scale(h.sigma));
    }

    SUBCASE("excited preparation develops a shoulder toward mu_g")
    {
        // count excited shots on the ground side of the threshold: they are
        // decay events, so they grow with tau/t1
        auto ground_side_fraction = [&](double t1) {
            ReadoutProtocol p(flux, tau, h.threshold, 40000, 0.4, t1);
            // keep demod phase consistent with the reference run
            p.demod_phase = proto.demod_phase;
            const auto hist = simulate_shots(sys, p, 42);
            long below = 0, total = 0;
            const bool e_above = h.mu_e > h.mu_g;
            for (std::size_t k = 0; k < hist.counts_e.size(); ++k) {
                const double mid =
                    0.5 * (hist.bin_edges[k] + hist.bin_edges[k + 1]);
                const bool ground_side =
                    e_above ? mid < hist.threshold : mid > hist.threshold;
                if (ground_side) below += hist.counts_e[k];
                total += hist.counts_e[k];
            }
            return static_cast<double>(below) / total;
        };
        CHECK(ground_side_fraction(4e-6) > 2.0 * ground_side_fraction(20e-6));
    }
}
