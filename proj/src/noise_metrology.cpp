#include "photonlink/noise_metrology.hpp"

#include <cmath>
#include <string>

#include "photonlink/constants.hpp"

namespace photonlink::metrology {

LinkPath::LinkPath(double attenuation_, double impedance_, double target_omega_)
    : attenuation(attenuation_), impedance(impedance_), target_omega(target_omega_)
{
    if (attenuation <= 0 || attenuation > 1) {
        throw ConfigError("link.attenuation must be in (0, 1]");
    }
    if (impedance <= 0) throw ConfigError("link.impedance must be > 0");
    if (target_omega <= 0) throw ConfigError("link.target_omega must be > 0");
}

double LinkPath::theta() const
{
    return constants::hbar * target_omega / impedance;
}

OccupancyMeasurement::OccupancyMeasurement(double photocurrent_,
                                           double occupancy_,
                                           double background_,
                                           OccupancyKind kind_)
    : photocurrent(photocurrent_), occupancy(occupancy_),
      background(background_), kind(kind_)
{
    if (occupancy < 0) throw ConfigError("occupancy must be >= 0");
    if (background < 0) throw ConfigError("background must be >= 0");
}

double occupancy_from_noise(double s_i, const LinkPath& path)
{
    if (s_i < 0) throw ConfigError("s_i must be >= 0");
    return path.attenuation * s_i / path.theta();
}

double extract_si_from_cavity(const OccupancyMeasurement& m,
                              const LinkPath& path, double tolerance)
{
    if (m.kind != OccupancyKind::cavity) {
        throw ConfigError("measurement kind must be cavity");
    }
    const double excess = m.occupancy - m.background;
    if (excess < -tolerance) {
        throw NegativeNoise("occupancy " + std::to_string(m.occupancy) +
                            " below background " + std::to_string(m.background));
    }
    return std::max(excess, 0.0) * path.theta() / path.attenuation;
}

double extract_si_from_qubit(const OccupancyMeasurement& m,
                             const cqed::TransmonParams& t,
                             const LinkPath& path, double n_int,
                             double tolerance)
{
    if (m.kind != OccupancyKind::qubit) {
        throw ConfigError("measurement kind must be qubit");
    }
    if (t.gamma_ext <= 0) throw ConfigError("gamma_ext must be > 0");
    const double excess =
        (t.gamma_int + t.gamma_ext) * m.occupancy - t.gamma_int * n_int;
    if (excess < -tolerance * (t.gamma_int + t.gamma_ext)) {
        throw NegativeNoise("qubit occupancy below internal-bath background");
    }
    return std::max(excess, 0.0) * path.theta() /
           (path.attenuation * t.gamma_ext);
}

double stark_calibration(const cqed::DispersiveParams& d, double stark_shift)
{
    return stark_shift / (d.beta * 2.0 * d.chi);
}

FitResult weighted_linear_fit(const std::vector<double>& x,
                              const std::vector<double>& y,
                              const std::vector<double>& sigma)
{
    if (x.size() != y.size() || x.size() != sigma.size() || x.size() < 2) {
        throw ConfigError("fit needs matching arrays of length >= 2");
    }
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (sigma[i] <= 0) throw ConfigError("fit sigmas must be > 0");
        const double w = 1.0 / (sigma[i] * sigma[i]);
        sw += w;
        swx += w * x[i];
        swy += w * y[i];
        swxx += w * x[i] * x[i];
        swxy += w * x[i] * y[i];
    }
    const double det = sw * swxx - swx * swx;
    if (det == 0) throw ConfigError("degenerate fit");
    FitResult r;
    r.slope = (sw * swxy - swx * swy) / det;
    r.intercept = (swxx * swy - swx * swxy) / det;
    r.slope_stderr = std::sqrt(sw / det);
    return r;
}

FitResult loglog_slope(const std::vector<double>& x,
                       const std::vector<double>& y)
{
    std::vector<double> lx, ly, s;
    lx.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0 || y[i] <= 0) continue;  // log undefined, skip
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
        s.push_back(1.0);
    }
    return weighted_linear_fit(lx, ly, s);
}

} // namespace photonlink::metrology
