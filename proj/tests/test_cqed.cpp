#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "photonlink/constants.hpp"
#include "photonlink/cqed.hpp"

using namespace photonlink;
using namespace photonlink::cqed;
namespace pc = photonlink::constants;

namespace {

TransmonParams table1_transmon()
{
    return TransmonParams(pc::to_angular(5.052e9), pc::to_angular(210e6),
                          44949.49494949495, 5050.505050505051, 5);
}

CavityParams table1_cavity()
{
    return CavityParams(pc::to_angular(10.866e9), pc::to_angular(3.09e6),
                        pc::to_angular(294e6));
}

// flat-top system at the optimal readout point 2 chi = kappa
DispersiveParams optimal_point(const CavityParams& c)
{
    DispersiveParams d;
    d.delta = pc::to_angular(5e9);
    d.chi = c.kappa / 2.0;
    d.beta = c.kappa * c.kappa / (c.kappa * c.kappa + 4.0 * d.chi * d.chi);
    d.n_crit = 1e9;
    return d;
}

} // namespace

TEST_CASE("dispersive parameters reproduce the device table")
{
    const auto d = dispersive_params(table1_transmon(), table1_cavity());
    CHECK(pc::from_angular(d.chi) == doctest::Approx(517e3).epsilon(2e3 / 517e3));
    CHECK(d.n_crit == doctest::Approx(98.0).epsilon(1.0 / 98.0));
    CHECK(d.beta == doctest::Approx(0.899).epsilon(0.005 / 0.899));
    CHECK(pc::from_angular(d.delta) == doctest::Approx(5.814e9));
}

TEST_CASE("dispersive regime guard")
{
    const auto t = table1_transmon();
    // push the coupling until |delta| < 10 g
    const CavityParams close(t.omega_q + pc::to_angular(1e9),
                             pc::to_angular(3.09e6), pc::to_angular(294e6));
    CHECK_THROWS_AS(dispersive_params(t, close), DispersiveRegimeViolation);
}

TEST_CASE("chi formula against independent rational arithmetic")
{
    // integer inputs (units of 2 pi MHz) keep the algebra exact
    std::mt19937 rng(1234);
    std::uniform_int_distribution<long long> g_pick(50, 500);
    std::uniform_int_distribution<long long> d_pick(5000, 20000);
    std::uniform_int_distribution<long long> a_pick(100, 400);
    const double unit = pc::to_angular(1e6);

    for (int it = 0; it < 200; ++it) {
        const long long g = g_pick(rng);
        const long long delta = d_pick(rng) * (it % 2 ? 1 : -1);
        const long long alpha = a_pick(rng);
        if (std::llabs(delta) < 10 * g) continue;

        const TransmonParams t(pc::to_angular(50e9), alpha * unit, 0.0, 1.0, 5);
        const CavityParams c(pc::to_angular(50e9) + delta * unit,
                             pc::to_angular(1e6), g * unit);
        const auto d = dispersive_params(t, c);

        // chi * delta * (delta + alpha) == g^2 * alpha, exactly as integers
        const long long lhs_num = g * g * alpha;
        const long long denom = delta * (delta + alpha);
        CHECK(d.chi / unit ==
              doctest::Approx(static_cast<double>(lhs_num) /
                              static_cast<double>(denom))
                  .epsilon(1e-12));

        // the formula flips sign under delta -> -delta whenever |delta| < alpha;
        // outside that window both signs follow delta*(delta+alpha) directly
        const long long mirrored = -delta * (-delta + alpha);
        const double chi_mirror = static_cast<double>(lhs_num) /
                                  static_cast<double>(mirrored);
        if (std::llabs(delta) < alpha) {
            CHECK(chi_mirror * (d.chi / unit) < 0.0);
        }
    }
}

TEST_CASE("cavity steady state")
{
    const auto c = table1_cavity();
    const auto d = dispersive_params(table1_transmon(), c);

    CHECK(std::abs(cavity_steady_state(d, c, 0.0, c.omega_c, 'g')) == 0.0);

    SUBCASE("resonant drive modulus")
    {
        const std::complex<double> a_in(2.0e3, 0.0);
        const auto a = cavity_steady_state(d, c, a_in, c.omega_c, 'g');
        const double expected = c.kappa * std::norm(a_in) /
                                (c.kappa * c.kappa / 4.0 + d.chi * d.chi);
        CHECK(std::norm(a) == doctest::Approx(expected).epsilon(1e-12));
    }

    SUBCASE("output phase separation")
    {
        const std::complex<double> a_in(2.0e3, 0.0);
        const auto s = readout_state(d, c, a_in, c.omega_c);
        CHECK(s.phase_shift == doctest::Approx(0.646).epsilon(0.01 / 0.646));
        const auto out_g = output_field(c, s.alpha_g, a_in);
        const auto out_e = output_field(c, s.alpha_e, a_in);
        double sep = std::arg(out_e) - std::arg(out_g);
        if (sep > std::numbers::pi) sep -= 2 * std::numbers::pi;
        if (sep < -std::numbers::pi) sep += 2 * std::numbers::pi;
        CHECK(std::abs(sep) == doctest::Approx(2.0 * s.phase_shift).epsilon(1e-9));
    }

    SUBCASE("equation-of-motion residual on randomized inputs")
    {
        std::mt19937 rng(77);
        std::uniform_real_distribution<double> detune(-3.0, 3.0);
        std::uniform_real_distribution<double> amp(1.0, 1e4);
        for (int it = 0; it < 100; ++it) {
            const double omega_d = c.omega_c + detune(rng) * c.kappa;
            const std::complex<double> a_in(amp(rng), amp(rng));
            for (char q : {'g', 'e'}) {
                const auto a = cavity_steady_state(d, c, a_in, omega_d, q);
                const double pull = (q == 'g') ? -d.chi : d.chi;
                const std::complex<double> lhs =
                    std::complex<double>(omega_d - c.omega_c + pull,
                                         c.kappa / 2.0) *
                    a;
                const std::complex<double> rhs =
                    std::complex<double>(0.0, std::sqrt(c.kappa)) * a_in;
                // residual measured against the drive term of the equation
                CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
            }
        }
    }

    SUBCASE("critical photon number guard")
    {
        const std::complex<double> huge(1e9, 0.0);
        CHECK_THROWS_AS(cavity_steady_state(d, c, huge, c.omega_c, 'g'),
                        CriticalPhotonExceeded);
    }
}

TEST_CASE("measurement rate at the optimal point")
{
    const CavityParams c(pc::to_angular(10e9), pc::to_angular(10e6),
                         pc::to_angular(300e6));
    const auto d = optimal_point(c);

    // choose the drive so |alpha|^2 = 10
    const double a_in_sq = 10.0 * c.kappa / 2.0;
    const std::complex<double> a_in(std::sqrt(a_in_sq), 0.0);
    const auto s = readout_state(d, c, a_in, c.omega_c);

    CHECK(std::norm(s.alpha_g) == doctest::Approx(10.0).epsilon(1e-10));
    CHECK(std::norm(s.alpha_e) == doctest::Approx(10.0).epsilon(1e-10));
    // at 2 chi = kappa the states sit at orthogonal phases: |de|^2 = 2|alpha|^2
    CHECK(std::norm(s.alpha_e - s.alpha_g) ==
          doctest::Approx(20.0).epsilon(1e-10));
    CHECK(s.gamma_m == doctest::Approx(1.257e9).epsilon(1e-3));
    // phase separation is exactly pi/2 per state, pi overall
    CHECK(2.0 * s.phase_shift == doctest::Approx(std::numbers::pi));

    SUBCASE("doubling the drive quadruples the rate")
    {
        const auto s2 = readout_state(d, c, 2.0 * a_in, c.omega_c);
        CHECK(s2.gamma_m == doctest::Approx(4.0 * s.gamma_m).epsilon(1e-12));
    }

    SUBCASE("identical states give zero rate")
    {
        CHECK(measurement_rate(c, s.alpha_g, s.alpha_g) == 0.0);
    }
}

TEST_CASE("readout fidelity")
{
    CHECK(readout_fidelity(1e9, 0.0, 0.9) == 0.0);
    // eta tau Gamma_m = 2 -> erf(1)
    CHECK(readout_fidelity(2.0, 1.0, 1.0) == doctest::Approx(0.8427).epsilon(2e-4));
    CHECK(readout_fidelity(1.257e9, 8.5e-9, 0.94) ==
          doctest::Approx(0.9985).epsilon(1e-3));

    SUBCASE("monotone in every argument")
    {
        double prev = 0.0;
        for (double tau = 0; tau <= 1e-8; tau += 1e-9) {
            const double f = readout_fidelity(1.257e9, tau, 0.5);
            CHECK(f >= prev);
            prev = f;
        }
        CHECK(readout_fidelity(1e9, 1e-8, 0.9) >=
              readout_fidelity(1e9, 1e-8, 0.5));
        CHECK(readout_fidelity(2e9, 1e-8, 0.5) >=
              readout_fidelity(1e9, 1e-8, 0.5));
        CHECK(readout_fidelity(1e9, 1.0, 1.0) == doctest::Approx(1.0));
    }
}

TEST_CASE("stark shift and dephasing")
{
    const auto c = table1_cavity();
    const auto d = dispersive_params(table1_transmon(), c);

    const auto zero = stark_and_dephasing(d, c, 0.0);
    CHECK(zero.stark_shift == 0.0);
    CHECK(zero.gamma_phi == 0.0);
    CHECK(zero.valid_regime);

    const auto sd = stark_and_dephasing(d, c, 0.01);
    CHECK(pc::from_angular(sd.stark_shift) ==
          doctest::Approx(9.30e3).epsilon(0.02));
    CHECK(sd.gamma_phi == doctest::Approx(1.95e4).epsilon(0.02));
    CHECK(sd.valid_regime);
    CHECK_FALSE(stark_and_dephasing(d, c, 0.2).valid_regime);

    SUBCASE("exactly linear in occupancy")
    {
        const auto ref = stark_and_dephasing(d, c, 0.05);
        for (double n = 0.0; n <= 0.05; n += 0.005) {
            const auto s = stark_and_dephasing(d, c, n);
            CHECK(s.stark_shift ==
                  doctest::Approx(ref.stark_shift * n / 0.05).epsilon(1e-12));
            CHECK(s.gamma_phi ==
                  doctest::Approx(ref.gamma_phi * n / 0.05).epsilon(1e-12));
        }
    }
}

TEST_CASE("detailed balance population")
{
    const auto t = table1_transmon();
    CHECK(detailed_balance_population(t, 0.0, 0.0) == 0.0);
    // equal occupancies are rate-independent
    CHECK(detailed_balance_population(t, 0.3, 0.3) ==
          doctest::Approx(0.3 / 1.3).epsilon(1e-12));
    // 10% background fixture
    const TransmonParams ext_only(t.omega_q, t.anharmonicity, 0.0, 100.0, 5);
    CHECK(detailed_balance_population(ext_only, 0.0, 0.111) ==
          doctest::Approx(0.100).epsilon(1e-3));

    SUBCASE("invariant under exchanging the two baths")
    {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> occ(0.0, 0.5);
        std::uniform_real_distribution<double> rate(1.0, 1e5);
        for (int it = 0; it < 100; ++it) {
            const double gi = rate(rng), ge = rate(rng);
            const double ni = occ(rng), ne = occ(rng);
            const TransmonParams a(t.omega_q, t.anharmonicity, gi, ge, 5);
            const TransmonParams b(t.omega_q, t.anharmonicity, ge, gi, 5);
            CHECK(detailed_balance_population(a, ni, ne) ==
                  doctest::Approx(detailed_balance_population(b, ne, ni))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("analytic rabi rate")
{
    const auto t = table1_transmon();
    CHECK(rabi_rate_analytic(t, 0.0) == 0.0);
    // invert for the Fig. 2f operating point
    const double omega_r = pc::to_angular(44e6);
    const double flux = omega_r * omega_r / 4.0 / t.gamma_ext;
    CHECK(flux == doctest::Approx(3.78e12).epsilon(0.01));
    CHECK(rabi_rate_analytic(t, flux) == doctest::Approx(omega_r).epsilon(1e-12));
    // quadrupling the flux doubles the rate
    CHECK(rabi_rate_analytic(t, 4.0 * flux) ==
          doctest::Approx(2.0 * omega_r).epsilon(1e-12));
}
