#include "photonlink/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "photonlink/constants.hpp"
#include "photonlink/dynamics.hpp"
#include "photonlink/readout.hpp"
#include "photonlink/scaling.hpp"

namespace photonlink::experiment {

using nlohmann::json;
namespace pc = photonlink::constants;

namespace {

double get_num(const json& j, const std::string& key, const std::string& path)
{
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ConfigError(path + "." + key + ": missing or not a number");
    }
    return j.at(key).get<double>();
}

double get_num_or(const json& j, const std::string& key, double fallback)
{
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) {
        throw ConfigError(key + ": not a number");
    }
    return j.at(key).get<double>();
}

const json& get_block(const json& j, const std::string& key,
                      const std::string& path)
{
    if (!j.contains(key) || !j.at(key).is_object()) {
        throw ConfigError(path + "." + key + ": missing object");
    }
    return j.at(key);
}

} // namespace

std::vector<double> SweepSpec::values() const
{
    if (points < 1) throw ConfigError("sweep.points must be >= 1");
    std::vector<double> v;
    v.reserve(points);
    if (points == 1) {
        v.push_back(start);
        return v;
    }
    if (log_scale) {
        if (start <= 0 || stop <= 0) {
            throw ConfigError("sweep: log scale needs positive endpoints");
        }
        const double l0 = std::log(start), l1 = std::log(stop);
        for (int i = 0; i < points; ++i) {
            v.push_back(std::exp(l0 + (l1 - l0) * i / (points - 1)));
        }
    } else {
        for (int i = 0; i < points; ++i) {
            v.push_back(start + (stop - start) * i / (points - 1));
        }
    }
    return v;
}

const std::vector<std::string>& experiment_names()
{
    static const std::vector<std::string> names = {
        "chi-calc",    "readout-hist", "ramsey",       "rabi-sweep",
        "noise-sweep", "scaling",      "error-budget",
    };
    return names;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error: " + std::string(e.what()));
    }

    ExperimentConfig cfg;
    if (j.contains("device_file")) {
        const auto dev_path =
            path.parent_path() / j.at("device_file").get<std::string>();
        std::ifstream dev_in(dev_path);
        if (!dev_in) {
            throw ConfigError("device_file: cannot open " + dev_path.string());
        }
        json dev;
        try {
            dev_in >> dev;
        } catch (const json::parse_error& e) {
            throw ConfigError("device_file parse error: " +
                              std::string(e.what()));
        }
        if (dev.contains("device")) j["device"] = dev.at("device");
        if (dev.contains("link") && !j.contains("link")) {
            j["link"] = dev.at("link");
        }
        j.erase("device_file");
    }
    cfg.raw = j;
    cfg.device = get_block(j, "device", "config");
    cfg.link = j.value("link", json::object());

    const json& exp = get_block(j, "experiment", "config");
    if (!exp.contains("name") || !exp.at("name").is_string()) {
        throw ConfigError("config.experiment.name: missing string");
    }
    cfg.name = exp.at("name").get<std::string>();
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), cfg.name) == names.end()) {
        throw ConfigError("config.experiment.name: unknown experiment '" +
                          cfg.name + "'");
    }
    cfg.params = exp;

    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        cfg.sweep.start = get_num(s, "start", "config.sweep");
        cfg.sweep.stop = get_num(s, "stop", "config.sweep");
        cfg.sweep.points = static_cast<int>(get_num(s, "points", "config.sweep"));
        const std::string scale = s.value("scale", "linear");
        if (scale != "linear" && scale != "log") {
            throw ConfigError("config.sweep.scale: must be 'linear' or 'log'");
        }
        cfg.sweep.log_scale = (scale == "log");
    }

    cfg.seed = static_cast<std::uint64_t>(j.value("seed", 0.0));
    if (j.contains("output")) {
        const json& o = j.at("output");
        cfg.output_dir = o.value("directory", std::string("."));
        cfg.basename = o.value("basename", std::string());
    }
    if (cfg.basename.empty()) cfg.basename = cfg.name;
    return cfg;
}

cqed::TransmonParams transmon_from_config(const json& device,
                                          bool control_frequency)
{
    double f_q = get_num(device, "qubit_frequency_hz", "device");
    if (control_frequency && device.contains("qubit_frequency_control_hz")) {
        f_q = get_num(device, "qubit_frequency_control_hz", "device");
    }
    return cqed::TransmonParams(
        pc::to_angular(f_q),
        pc::to_angular(get_num(device, "anharmonicity_hz", "device")),
        get_num(device, "gamma_int_per_s", "device"),
        get_num(device, "gamma_ext_per_s", "device"),
        static_cast<int>(get_num_or(device, "n_levels", 5)));
}

cqed::CavityParams cavity_from_config(const json& device)
{
    return cqed::CavityParams(
        pc::to_angular(get_num(device, "cavity_frequency_hz", "device")),
        pc::to_angular(get_num(device, "cavity_linewidth_hz", "device")),
        pc::to_angular(get_num(device, "coupling_hz", "device")));
}

photonics::PhotonicChain chain_from_config(const json& link)
{
    const json& laser = get_block(link, "laser", "link");
    const json& eom = get_block(link, "eom", "link");
    const json& pd = get_block(link, "photodiode", "link");
    return photonics::PhotonicChain(
        photonics::Laser(get_num(laser, "wavelength_m", "link.laser"),
                         get_num(laser, "mean_power_w", "link.laser"),
                         get_num(laser, "rin_per_hz", "link.laser")),
        photonics::EomModel(get_num(eom, "v_pi_v", "link.eom"),
                            get_num_or(eom, "v_dc_v", 0.0),
                            get_num(eom, "input_impedance_ohm", "link.eom"),
                            get_num(eom, "noise_temperature_k", "link.eom")),
        photonics::Photodiode(
            get_num(pd, "responsivity_a_per_w", "link.photodiode"),
            get_num(pd, "cutoff_3db_hz", "link.photodiode"),
            get_num_or(pd, "dark_current_a", 0.0),
            get_num_or(pd, "bias_voltage_v", 0.0)));
}

metrology::LinkPath link_path_from_config(const json& link, double target_omega)
{
    return metrology::LinkPath(get_num(link, "attenuation", "link"),
                               get_num(link, "impedance_ohm", "link"),
                               target_omega);
}

std::vector<std::string> validate(const ExperimentConfig& config)
{
    std::vector<std::string> report;
    auto check = [&](auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            report.emplace_back(e.what());
        }
    };
    check([&] {
        const auto t = transmon_from_config(config.device);
        const auto c = cavity_from_config(config.device);
        cqed::dispersive_params(t, c);
    });
    if (config.link.contains("laser")) {
        check([&] { chain_from_config(config.link); });
    }
    if (!config.link.empty()) {
        if (config.link.contains("attenuation")) {
            check([&] {
                const double f_c =
                    get_num(config.device, "cavity_frequency_hz", "device");
                link_path_from_config(config.link, pc::to_angular(f_c));
            });
        }
    }
    return report;
}

namespace {

ExperimentResult run_chi_calc(const ExperimentConfig& cfg)
{
    const auto t = transmon_from_config(cfg.device);
    const auto c = cavity_from_config(cfg.device);
    const auto d = cqed::dispersive_params(t, c);
    ExperimentResult r;
    r.summary = {
        {"chi_over_2pi_hz", pc::from_angular(d.chi)},
        {"delta_over_2pi_hz", pc::from_angular(d.delta)},
        {"n_crit", d.n_crit},
        {"beta", d.beta},
    };
    return r;
}

ExperimentResult run_readout_hist(const ExperimentConfig& cfg)
{
    const cqed::CqedSystem sys(transmon_from_config(cfg.device),
                               cavity_from_config(cfg.device));
    const json& p = cfg.params;
    const double photon_number = get_num(p, "photon_number", "experiment");
    const double tau = get_num(p, "integration_time_s", "experiment");
    const double t1 = get_num_or(p, "t1_s", 0.0);
    const double eta = get_num(p, "efficiency", "experiment");
    const long shots = static_cast<long>(get_num(p, "shots", "experiment"));

    const double flux = readout::flux_for_photon_number(sys, photon_number);
    readout::ReadoutProtocol proto(flux, tau, 0.0, shots, eta, t1);
    proto.demod_phase = readout::optimal_demod_phase(sys, proto);
    const auto h = readout::simulate_shots(sys, proto, cfg.seed);

    ExperimentResult r;
    std::vector<double> edges(h.bin_edges.begin(), h.bin_edges.end() - 1);
    std::vector<double> cg(h.counts_g.begin(), h.counts_g.end());
    std::vector<double> ce(h.counts_e.begin(), h.counts_e.end());
    r.columns = {{"bin_edge", edges}, {"counts_g", cg}, {"counts_e", ce}};
    r.summary = {
        {"fidelity", h.fidelity},
        {"threshold", h.threshold},
        {"gamma_m_per_s", h.gamma_m},
        {"erf_prediction",
         cqed::readout_fidelity(h.gamma_m, tau, eta)},
        {"photon_number", photon_number},
    };
    return r;
}

ExperimentResult run_ramsey(const ExperimentConfig& cfg)
{
    const auto t = transmon_from_config(cfg.device);
    const auto c = cavity_from_config(cfg.device);
    const auto d = cqed::dispersive_params(t, c);
    const json& p = cfg.params;

    const double n_bar = get_num_or(p, "n_bar", 0.0);
    const double detuning = pc::to_angular(get_num_or(p, "detuning_hz", 0.0));
    const auto sd = cqed::stark_and_dephasing(d, c, n_bar);

    double gamma_phi = sd.gamma_phi;
    if (p.contains("t2_s")) {
        // explicit T2 overrides the thermal dephasing prediction
        const double gamma_2 = 1.0 / get_num(p, "t2_s", "experiment");
        gamma_phi = gamma_2 - t.gamma_1() / 2.0;
        if (gamma_phi < 0) {
            throw ConfigError("experiment.t2_s: shorter than 2/Gamma_1 allows");
        }
    }
    const dynamics::DissipatorSpec diss(t.gamma_1(), 0.0, gamma_phi);
    const auto delays = cfg.sweep.values();
    const auto trace = dynamics::ramsey(t, diss, sd.stark_shift, delays, detuning);

    std::vector<double> pe(trace.times.size());
    for (std::size_t i = 0; i < pe.size(); ++i) {
        pe[i] = trace.populations[i][1];
    }

    ExperimentResult r;
    r.columns = {{"delay_s", trace.times},
                 {"sigma_x", trace.sigma_x},
                 {"p_e", pe}};

    // extract oscillation frequency and envelope decay back from the trace
    double freq_fit = 0.0;
    try {
        freq_fit = dynamics::rabi_frequency(trace);
    } catch (const NoOscillation&) {
        // too few oscillations in the chosen window; leave 0
    }
    double t2_fit = 0.0;
    {
        std::vector<double> ts, la;
        for (std::size_t i = 0; i < trace.times.size(); ++i) {
            const double osc = std::cos(freq_fit * trace.times[i]);
            if (std::abs(osc) > 0.5 && trace.sigma_x[i] / osc > 0) {
                ts.push_back(trace.times[i]);
                la.push_back(std::log(trace.sigma_x[i] / osc));
            }
        }
        if (ts.size() >= 2) {
            const auto fit = metrology::weighted_linear_fit(
                ts, la, std::vector<double>(ts.size(), 1.0));
            if (fit.slope < 0) t2_fit = -1.0 / fit.slope;
        }
    }
    r.summary = {
        {"frequency_hz", pc::from_angular(freq_fit)},
        {"t2_s", t2_fit},
        {"stark_shift_hz", pc::from_angular(sd.stark_shift)},
        {"gamma_phi_per_s", gamma_phi},
        {"stark_formula_valid", sd.valid_regime},
    };
    return r;
}

ExperimentResult run_rabi_sweep(const ExperimentConfig& cfg)
{
    const auto t = transmon_from_config(cfg.device, /*control_frequency=*/true);
    const dynamics::RabiLinkMap link{
        get_num(cfg.link, "attenuation", "link"),
        get_num(cfg.link, "impedance_ohm", "link")};
    const auto fluxes = cfg.sweep.values();
    const auto curve = dynamics::rabi_vs_amplitude(t, fluxes, link);

    ExperimentResult r;
    std::vector<double> flux, current, two_level, multi;
    for (const auto& pt : curve) {
        flux.push_back(pt.photon_flux);
        current.push_back(pt.photocurrent);
        two_level.push_back(pc::from_angular(pt.omega_two_level));
        multi.push_back(pc::from_angular(pt.omega_multilevel));
    }
    r.columns = {{"photon_flux_per_s", flux},
                 {"photocurrent_a", current},
                 {"rabi_two_level_hz", two_level},
                 {"rabi_multilevel_hz", multi}};
    return r;
}

ExperimentResult run_noise_sweep(const ExperimentConfig& cfg)
{
    const auto t_ro = transmon_from_config(cfg.device);
    const auto t_ctl = transmon_from_config(cfg.device, true);
    const auto c = cavity_from_config(cfg.device);
    const json& p = cfg.params;

    const double a_readout = get_num(p, "attenuation_readout", "experiment");
    const double a_control = get_num(p, "attenuation_control", "experiment");
    const double z = get_num(cfg.link, "impedance_ohm", "link");
    const double bg_cavity = get_num_or(p, "cavity_background", 0.01);
    const double bg_pe = get_num_or(p, "qubit_background_pe", 0.10);

    const metrology::LinkPath path_ro(a_readout, z, c.omega_c);
    const metrology::LinkPath path_ctl(a_control, z, t_ctl.omega_q);

    // internal-bath occupancy consistent with the zero-current qubit background
    const double n_bg = bg_pe / (1.0 - bg_pe);
    if (t_ctl.gamma_int <= 0) {
        throw ConfigError("device.gamma_int_per_s must be > 0 for noise-sweep");
    }
    const double n_int = n_bg * t_ctl.gamma_1() / t_ctl.gamma_int;

    const auto currents = cfg.sweep.values();
    std::vector<double> si_cavity, si_qubit, si_pred;
    const double e2 = 2.0 * pc::elementary_charge;
    for (double i_avg : currents) {
        const double s_shot = e2 * i_avg;
        si_pred.push_back(s_shot);

        // forward model, then the published inversion
        const double n_cav = metrology::occupancy_from_noise(s_shot, path_ro) +
                             bg_cavity;
        si_cavity.push_back(metrology::extract_si_from_cavity(
            {i_avg, n_cav, bg_cavity, metrology::OccupancyKind::cavity},
            path_ro));

        const double n_ext = metrology::occupancy_from_noise(s_shot, path_ctl);
        const double pe =
            cqed::detailed_balance_population(t_ctl, n_int, n_ext);
        const double n_meas = pe / (1.0 - pe);
        si_qubit.push_back(metrology::extract_si_from_qubit(
            {i_avg, n_meas, n_bg, metrology::OccupancyKind::qubit}, t_ctl,
            path_ctl, n_int));
    }

    ExperimentResult r;
    r.columns = {{"photocurrent_a", currents},
                 {"s_i_cavity_a2_per_hz", si_cavity},
                 {"s_i_qubit_a2_per_hz", si_qubit},
                 {"s_i_shot_prediction_a2_per_hz", si_pred}};

    std::vector<double> weights(currents.size());
    for (std::size_t i = 0; i < currents.size(); ++i) {
        // Poisson-limited scatter scales with the shot level itself
        weights[i] = std::max(e2 * currents[i], 1e-300);
    }
    const auto fit_cav =
        metrology::weighted_linear_fit(currents, si_cavity, weights);
    const auto fit_qub =
        metrology::weighted_linear_fit(currents, si_qubit, weights);
    r.summary = {
        {"slope_cavity_a_per_hz", fit_cav.slope},
        {"slope_qubit_a_per_hz", fit_qub.slope},
        {"two_e", e2},
        {"loglog_slope_cavity",
         metrology::loglog_slope(currents, si_cavity).slope},
        {"loglog_slope_qubit",
         metrology::loglog_slope(currents, si_qubit).slope},
    };
    return r;
}

ExperimentResult run_scaling(const ExperimentConfig& cfg)
{
    const json& p = cfg.params;
    const double omega_q = pc::to_angular(get_num(p, "qubit_frequency_hz", "experiment"));
    const double rabi = pc::to_angular(get_num(p, "rabi_hz", "experiment"));
    const double gamma_ext = get_num(p, "gamma_ext_per_s", "experiment");
    const double shape_mean = get_num_or(p, "shape_mean", 0.5);
    const double cooling = get_num(p, "cooling_w", "experiment");
    const double p_coax = get_num(p, "coax_passive_w", "experiment");
    const double p_link = get_num(p, "link_passive_w", "experiment");
    const double a_coax = get_num(p, "coax_attenuation", "experiment");
    const double resp = get_num_or(p, "responsivity_a_per_w", 1.0);
    const double z_lo = get_num_or(p, "impedance_low_ohm", 50.0);
    const double z_hi = get_num_or(p, "impedance_high_ohm", 1e4);

    const auto coax = scaling::WiringTech::coax(p_coax, a_coax);
    const auto photonic_lo = scaling::WiringTech::photonic(p_link, resp, z_lo);
    const auto photonic_hi = scaling::WiringTech::photonic(p_link, resp, z_hi);

    const auto duties = cfg.sweep.values();
    std::vector<double> n_coax, n_lo, n_hi;
    for (double d : duties) {
        scaling::ControlPulseSpec spec(omega_q, rabi, gamma_ext, shape_mean, d);
        n_coax.push_back(scaling::qubit_count(spec, coax, cooling));
        n_lo.push_back(scaling::qubit_count(spec, photonic_lo, cooling));
        n_hi.push_back(scaling::qubit_count(spec, photonic_hi, cooling));
    }

    ExperimentResult r;
    r.columns = {{"duty_cycle", duties},
                 {"n_coax", n_coax},
                 {"n_photonic_50", n_lo},
                 {"n_photonic_10k", n_hi}};
    scaling::ControlPulseSpec spec(omega_q, rabi, gamma_ext, shape_mean, 0.0);
    double crossover = 0.0;
    try {
        crossover =
            scaling::crossover_duty_cycle(spec, coax, photonic_lo, cooling);
    } catch (const ConfigError&) {
        // no crossover for these parameters
    }
    r.summary = {{"crossover_duty_cycle", crossover}};
    return r;
}

ExperimentResult run_error_budget(const ExperimentConfig& cfg)
{
    const json& p = cfg.params;
    const double omega_q =
        pc::to_angular(get_num(p, "qubit_frequency_hz", "experiment"));
    const double z = get_num(p, "impedance_ohm", "experiment");
    const double gamma_ext = get_num(p, "gamma_ext_per_s", "experiment");
    const double gamma_down = get_num_or(p, "gamma_down_per_s", gamma_ext);

    const metrology::LinkPath path(1.0, z, omega_q);
    const auto currents = cfg.sweep.values();
    std::vector<double> eps;
    for (double i_avg : currents) {
        const double omega_r =
            i_avg * std::sqrt(2.0 * gamma_ext / path.theta());
        scaling::ControlPulseSpec spec(omega_q, omega_r, gamma_ext, 0.5, 0.0);
        eps.push_back(scaling::gate_error(spec, path, gamma_down, i_avg));
    }
    ExperimentResult r;
    r.columns = {{"photocurrent_a", currents}, {"epsilon", eps}};
    r.summary = {
        {"epsilon_asymptote", scaling::gate_error_asymptote(path, gamma_ext)},
    };
    return r;
}

} // namespace

ExperimentResult run(const ExperimentConfig& cfg)
{
    ExperimentResult r;
    if (cfg.name == "chi-calc") r = run_chi_calc(cfg);
    else if (cfg.name == "readout-hist") r = run_readout_hist(cfg);
    else if (cfg.name == "ramsey") r = run_ramsey(cfg);
    else if (cfg.name == "rabi-sweep") r = run_rabi_sweep(cfg);
    else if (cfg.name == "noise-sweep") r = run_noise_sweep(cfg);
    else if (cfg.name == "scaling") r = run_scaling(cfg);
    else if (cfg.name == "error-budget") r = run_error_budget(cfg);
    else throw ConfigError("unknown experiment '" + cfg.name + "'");

    r.metadata = {
        {"config", cfg.raw},
        {"version", version},
        {"seed", cfg.seed},
        {"experiment", cfg.name},
    };
    return r;
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void atomic_write(const std::filesystem::path& path, const std::string& body)
{
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + tmp.string());
        out << body;
    }
    std::filesystem::rename(tmp, path);
}

} // namespace

std::vector<std::filesystem::path> write_result(const ExperimentConfig& cfg,
                                                const ExperimentResult& result)
{
    std::filesystem::create_directories(cfg.output_dir);
    std::vector<std::filesystem::path> written;

    json doc = {{"metadata", result.metadata}, {"summary", result.summary}};
    const auto json_path = cfg.output_dir / (cfg.basename + ".json");
    atomic_write(json_path, doc.dump(2) + "\n");
    written.push_back(json_path);

    if (!result.columns.empty()) {
        const std::size_t rows = result.columns.front().second.size();
        std::ostringstream csv;
        for (std::size_t c = 0; c < result.columns.size(); ++c) {
            if (result.columns[c].second.size() != rows) {
                throw ConfigError("ragged result columns");
            }
            csv << (c ? "," : "") << result.columns[c].first;
        }
        csv << "\n";
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t c = 0; c < result.columns.size(); ++c) {
                csv << (c ? "," : "")
                    << format_double(result.columns[c].second[i]);
            }
            csv << "\n";
        }
        const auto csv_path = cfg.output_dir / (cfg.basename + ".csv");
        atomic_write(csv_path, csv.str());
        written.push_back(csv_path);
    }
    return written;
}

} // namespace photonlink::experiment
