#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "photonlink/constants.hpp"
#include "photonlink/cqed.hpp"
#include "photonlink/noise_metrology.hpp"

using namespace photonlink;
using namespace photonlink::metrology;
namespace pc = photonlink::constants;

namespace {

constexpr double qe = pc::elementary_charge;

LinkPath readout_path()
{
    return LinkPath(0.065, 50.0, pc::to_angular(10.866e9));
}

} // namespace

TEST_CASE("link path theta")
{
    const LinkPath p(1.0, 50.0, pc::to_angular(6e9));
    CHECK(p.theta() == doctest::Approx(pc::hbar * pc::to_angular(6e9) / 50.0));
    CHECK_THROWS_AS(LinkPath(0.0, 50.0, 1e9), ConfigError);
    CHECK_THROWS_AS(LinkPath(1.5, 50.0, 1e9), ConfigError);
    CHECK_THROWS_AS(LinkPath(0.5, -1.0, 1e9), ConfigError);
}

TEST_CASE("occupancy from noise")
{
    const LinkPath p(1.0, 50.0, pc::to_angular(6e9));
    CHECK(occupancy_from_noise(0.0, p) == 0.0);

    // shot noise of a 7 nA photocurrent at full transmission
    const double s_i = 2.0 * qe * 7e-9;
    CHECK(occupancy_from_noise(s_i, p) == doctest::Approx(0.0282).epsilon(0.01));

    SUBCASE("linear in the attenuation")
    {
        const LinkPath half(0.5, 50.0, pc::to_angular(6e9));
        CHECK(occupancy_from_noise(s_i, half) ==
              doctest::Approx(0.5 * occupancy_from_noise(s_i, p))
                  .epsilon(1e-12));
    }
}

TEST_CASE("cavity-side inversion")
{
    const auto path = readout_path();

    SUBCASE("zero at the background")
    {
        const OccupancyMeasurement m(1e-6, 0.01, 0.01, OccupancyKind::cavity);
        CHECK(extract_si_from_cavity(m, path) == 0.0);
    }

    SUBCASE("worked example")
    {
        const OccupancyMeasurement m(1e-6, 0.02, 0.01, OccupancyKind::cavity);
        CHECK(extract_si_from_cavity(m, path) ==
              doctest::Approx(2.216e-26).epsilon(0.02));
    }

    SUBCASE("negative excess occupancy is rejected")
    {
        const OccupancyMeasurement m(1e-6, 0.005, 0.01, OccupancyKind::cavity);
        CHECK_THROWS_AS(extract_si_from_cavity(m, path), NegativeNoise);
        // within tolerance it clamps to zero instead
        const OccupancyMeasurement tiny(1e-6, 0.01 - 1e-15, 0.01,
                                        OccupancyKind::cavity);
        CHECK(extract_si_from_cavity(tiny, path) == 0.0);
    }

    SUBCASE("inverse pair with occupancy_from_noise")
    {
        std::mt19937 rng(31);
        std::uniform_real_distribution<double> s_pick(1e-28, 1e-22);
        std::uniform_real_distribution<double> a_pick(0.01, 1.0);
        for (int it = 0; it < 200; ++it) {
            const LinkPath p(a_pick(rng), 50.0, pc::to_angular(10.866e9));
            const double s_i = s_pick(rng);
            const double bg = 0.01;
            const OccupancyMeasurement m(1e-6, occupancy_from_noise(s_i, p) + bg,
                                         bg, OccupancyKind::cavity);
            CHECK(extract_si_from_cavity(m, p) ==
                  doctest::Approx(s_i).epsilon(1e-10));
        }
    }
}

TEST_CASE("qubit-side inversion")
{
    const LinkPath path(0.034, 50.0, pc::to_angular(5.088e9));
    const double gamma_ext = 1.0 / 198e-6;

    SUBCASE("internal-bath-free limit")
    {
        const cqed::TransmonParams t(path.target_omega, pc::to_angular(210e6),
                                     0.0, gamma_ext, 5);
        const OccupancyMeasurement m(4e-6, 0.03, 0.0, OccupancyKind::qubit);
        CHECK(extract_si_from_qubit(m, t, path, 0.0) ==
              doctest::Approx(pc::hbar * path.target_omega * 0.03 /
                              (path.attenuation * path.impedance))
                  .epsilon(1e-12));
    }

    SUBCASE("forward-inverse roundtrip recovers shot noise")
    {
        const cqed::TransmonParams t(path.target_omega, pc::to_angular(210e6),
                                     44949.49494949495, gamma_ext, 5);
        const double i_avg = 4e-6;
        const double s_i = 2.0 * qe * i_avg;

        // forward model: external bath occupancy from the noise, then the
        // steady-state qubit occupancy via detailed balance
        const double n_ext =
            path.attenuation * s_i * path.impedance /
            (pc::hbar * path.target_omega);
        const double n_int = 0.02;
        const double n_mix = (t.gamma_int * n_int + t.gamma_ext * n_ext) /
                             (t.gamma_int + t.gamma_ext);

        const OccupancyMeasurement m(i_avg, n_mix, 0.0, OccupancyKind::qubit);
        CHECK(extract_si_from_qubit(m, t, path, n_int) ==
              doctest::Approx(s_i).epsilon(1e-3));
    }

    SUBCASE("negative excess is rejected")
    {
        const cqed::TransmonParams t(path.target_omega, pc::to_angular(210e6),
                                     4e4, gamma_ext, 5);
        const OccupancyMeasurement m(4e-6, 0.0, 0.0, OccupancyKind::qubit);
        CHECK_THROWS_AS(extract_si_from_qubit(m, t, path, 0.5), NegativeNoise);
    }
}

TEST_CASE("stark calibration")
{
    const cqed::TransmonParams t(pc::to_angular(5.052e9), pc::to_angular(210e6),
                                 44949.49494949495, 5050.505050505051, 5);
    const cqed::CavityParams c(pc::to_angular(10.866e9), pc::to_angular(3.09e6),
                               pc::to_angular(294e6));
    const auto d = cqed::dispersive_params(t, c);

    CHECK(stark_calibration(d, 0.0) == 0.0);
    CHECK(stark_calibration(d, pc::to_angular(9.30e3)) ==
          doctest::Approx(0.01).epsilon(0.02));

    SUBCASE("exact inverse of the forward stark map")
    {
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> n_pick(0.0, 0.05);
        for (int it = 0; it < 200; ++it) {
            const double n = n_pick(rng);
            const auto sd = cqed::stark_and_dephasing(d, c, n);
            CHECK(stark_calibration(d, sd.stark_shift) ==
                  doctest::Approx(n).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("weighted linear fit")
{
    SUBCASE("recovers an exact affine law")
    {
        std::vector<double> x, y, s;
        for (int i = 0; i < 20; ++i) {
            x.push_back(0.5 * i);
            y.push_back(3.0 + 2.5 * x.back());
            s.push_back(1.0 + 0.1 * i);
        }
        const auto fit = weighted_linear_fit(x, y, s);
        CHECK(fit.slope == doctest::Approx(2.5).epsilon(1e-12));
        CHECK(fit.intercept == doctest::Approx(3.0).epsilon(1e-12));
    }

    SUBCASE("down-weights noisy points")
    {
        // two clean points define the line; a wild point with huge sigma
        // must barely move the fit
        const std::vector<double> x = {0.0, 1.0, 2.0};
        const std::vector<double> y = {0.0, 1.0, 100.0};
        const std::vector<double> s = {1e-3, 1e-3, 1e3};
        const auto fit = weighted_linear_fit(x, y, s);
        CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("log-log slope fitting and power-law discrimination")
{
    std::vector<double> current;
    for (double i = 10e-9; i <= 20.01e-6; i *= 1.5) current.push_back(i);

    SUBCASE("pure shot noise has slope one")
    {
        std::vector<double> s_i;
        for (double i : current) s_i.push_back(2.0 * qe * i);
        const auto fit = loglog_slope(current, s_i);
        CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::exp(fit.intercept) == doctest::Approx(2.0 * qe).epsilon(1e-6));
    }

    SUBCASE("a RIN contribution bends the slope above one at high current")
    {
        const double rin_coeff = 1e-10;  // makes RIN dominate near 20 uA
        std::vector<double> s_i, high_i, high_s;
        for (double i : current) {
            const double s = 2.0 * qe * i + rin_coeff * i * i;
            s_i.push_back(s);
            if (i > 2e-6) {
                high_i.push_back(i);
                high_s.push_back(s);
            }
        }
        CHECK(loglog_slope(current, s_i).slope > 1.02);
        CHECK(loglog_slope(high_i, high_s).slope > 1.5);
    }

    SUBCASE("non-positive points are skipped")
    {
        const std::vector<double> x = {1.0, 2.0, 4.0, -1.0, 8.0};
        const std::vector<double> y = {2.0, 4.0, 8.0, 5.0, 16.0};
        CHECK(loglog_slope(x, y).slope == doctest::Approx(1.0).epsilon(1e-12));
    }
}
