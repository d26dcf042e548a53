#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "photonlink/constants.hpp"
#include "photonlink/cqed.hpp"
#include "photonlink/dynamics.hpp"
#include "photonlink/experiment.hpp"
#include "photonlink/noise_metrology.hpp"
#include "photonlink/photonic_chain.hpp"
#include "photonlink/readout.hpp"
#include "photonlink/scaling.hpp"

namespace py = pybind11;
using namespace photonlink;

PYBIND11_MODULE(_photonlink, m)
{
    m.doc() = "photonic-link / transmon co-simulation core";
    m.attr("__version__") = experiment::version;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DispersiveRegimeViolation>(
        m, "DispersiveRegimeViolation", PyExc_ValueError);
    py::register_exception<CriticalPhotonExceeded>(m, "CriticalPhotonExceeded",
                                                   PyExc_RuntimeError);
    py::register_exception<NegativeNoise>(m, "NegativeNoise", PyExc_ValueError);
    py::register_exception<ValidityViolation>(m, "ValidityViolation",
                                              PyExc_ValueError);
    py::register_exception<IntegratorFailure>(m, "IntegratorFailure",
                                              PyExc_RuntimeError);
    py::register_exception<TruncationLeak>(m, "TruncationLeak",
                                           PyExc_RuntimeError);
    py::register_exception<NoOscillation>(m, "NoOscillation",
                                          PyExc_RuntimeError);

    // --- constants ---
    m.attr("elementary_charge") = constants::elementary_charge;
    m.attr("hbar") = constants::hbar;
    m.attr("boltzmann") = constants::boltzmann;
    m.def("to_angular", &constants::to_angular, py::arg("frequency_hz"));
    m.def("from_angular", &constants::from_angular, py::arg("omega"));

    // --- photonic chain ---
    py::class_<photonics::Laser>(m, "Laser")
        .def(py::init<double, double, double>(), py::arg("wavelength"),
             py::arg("mean_power"), py::arg("rin"))
        .def_readonly("wavelength", &photonics::Laser::wavelength)
        .def_readonly("mean_power", &photonics::Laser::mean_power)
        .def_readonly("rin", &photonics::Laser::rin)
        .def("optical_omega", &photonics::Laser::optical_omega);
    py::class_<photonics::EomModel>(m, "EomModel")
        .def(py::init<double, double, double, double>(), py::arg("v_pi"),
             py::arg("v_dc"), py::arg("input_impedance"),
             py::arg("noise_temperature"))
        .def_readonly("v_pi", &photonics::EomModel::v_pi)
        .def_readonly("v_dc", &photonics::EomModel::v_dc)
        .def_readonly("input_impedance", &photonics::EomModel::input_impedance)
        .def_readonly("noise_temperature",
                      &photonics::EomModel::noise_temperature);
    py::class_<photonics::Photodiode>(m, "Photodiode")
        .def(py::init<double, double, double, double>(),
             py::arg("responsivity"), py::arg("cutoff_3db"),
             py::arg("dark_current") = 0.0, py::arg("bias_voltage") = 0.0)
        .def_readonly("responsivity", &photonics::Photodiode::responsivity)
        .def_readonly("cutoff_3db", &photonics::Photodiode::cutoff_3db)
        .def_readonly("dark_current", &photonics::Photodiode::dark_current);
    py::class_<photonics::ModulationTone>(m, "ModulationTone")
        .def(py::init<double, double, double>(), py::arg("depth"),
             py::arg("frequency"), py::arg("phase") = 0.0)
        .def_readonly("depth", &photonics::ModulationTone::depth)
        .def_readonly("frequency", &photonics::ModulationTone::frequency);
    py::class_<photonics::NoiseBudget>(m, "NoiseBudget")
        .def_readonly("shot", &photonics::NoiseBudget::shot)
        .def_readonly("eom_voltage", &photonics::NoiseBudget::eom_voltage)
        .def_readonly("rin", &photonics::NoiseBudget::rin)
        .def_readonly("total", &photonics::NoiseBudget::total);
    py::class_<photonics::PhotonicChain>(m, "PhotonicChain")
        .def(py::init<photonics::Laser, photonics::EomModel,
                      photonics::Photodiode>(),
             py::arg("laser"), py::arg("eom"), py::arg("photodiode"))
        .def_readonly("laser", &photonics::PhotonicChain::laser)
        .def_readonly("eom", &photonics::PhotonicChain::eom)
        .def_readonly("photodiode", &photonics::PhotonicChain::photodiode);
    m.def("max_responsivity", &photonics::max_responsivity,
          py::arg("wavelength"));
    m.def("eom_transfer", &photonics::eom_transfer, py::arg("eom"),
          py::arg("mean_power"), py::arg("voltage"));
    m.def("photocurrent", &photonics::photocurrent, py::arg("photodiode"),
          py::arg("optical_power"));
    m.def("pd_transfer", &photonics::pd_transfer, py::arg("photodiode"),
          py::arg("omega"));
    m.def("microwave_power", &photonics::microwave_power,
          py::arg("mean_current"), py::arg("tone"), py::arg("photodiode"),
          py::arg("impedance"));
    m.def("shot_noise", &photonics::shot_noise, py::arg("mean_current"),
          py::arg("omega"), py::arg("photodiode"));
    m.def("eom_noise", &photonics::eom_noise, py::arg("eom"),
          py::arg("mean_current"));
    m.def("rin_noise", &photonics::rin_noise, py::arg("laser"),
          py::arg("mean_current"));
    m.def("total_noise", &photonics::total_noise, py::arg("laser"),
          py::arg("eom"), py::arg("photodiode"), py::arg("mean_current"),
          py::arg("omega") = 0.0);

    // --- cqed ---
    py::class_<cqed::TransmonParams>(m, "TransmonParams")
        .def(py::init<double, double, double, double, int>(),
             py::arg("omega_q"), py::arg("anharmonicity"), py::arg("gamma_int"),
             py::arg("gamma_ext"), py::arg("n_levels") = 5)
        .def_readonly("omega_q", &cqed::TransmonParams::omega_q)
        .def_readonly("anharmonicity", &cqed::TransmonParams::anharmonicity)
        .def_readonly("gamma_int", &cqed::TransmonParams::gamma_int)
        .def_readonly("gamma_ext", &cqed::TransmonParams::gamma_ext)
        .def_readonly("n_levels", &cqed::TransmonParams::n_levels)
        .def("gamma_1", &cqed::TransmonParams::gamma_1);
    py::class_<cqed::CavityParams>(m, "CavityParams")
        .def(py::init<double, double, double>(), py::arg("omega_c"),
             py::arg("kappa"), py::arg("g"))
        .def_readonly("omega_c", &cqed::CavityParams::omega_c)
        .def_readonly("kappa", &cqed::CavityParams::kappa)
        .def_readonly("g", &cqed::CavityParams::g);
    py::class_<cqed::DispersiveParams>(m, "DispersiveParams")
        .def_readonly("delta", &cqed::DispersiveParams::delta)
        .def_readonly("chi", &cqed::DispersiveParams::chi)
        .def_readonly("beta", &cqed::DispersiveParams::beta)
        .def_readonly("n_crit", &cqed::DispersiveParams::n_crit);
    py::class_<cqed::CqedSystem>(m, "CqedSystem")
        .def(py::init<cqed::TransmonParams, cqed::CavityParams>(),
             py::arg("transmon"), py::arg("cavity"))
        .def_readonly("transmon", &cqed::CqedSystem::transmon)
        .def_readonly("cavity", &cqed::CqedSystem::cavity)
        .def_readonly("dispersive", &cqed::CqedSystem::dispersive);
    py::class_<cqed::CoherentReadoutState>(m, "CoherentReadoutState")
        .def_readonly("alpha_g", &cqed::CoherentReadoutState::alpha_g)
        .def_readonly("alpha_e", &cqed::CoherentReadoutState::alpha_e)
        .def_readonly("phase_shift", &cqed::CoherentReadoutState::phase_shift)
        .def_readonly("gamma_m", &cqed::CoherentReadoutState::gamma_m);
    py::class_<cqed::StarkDephasing>(m, "StarkDephasing")
        .def_readonly("stark_shift", &cqed::StarkDephasing::stark_shift)
        .def_readonly("gamma_phi", &cqed::StarkDephasing::gamma_phi)
        .def_readonly("valid_regime", &cqed::StarkDephasing::valid_regime);
    m.def("dispersive_params", &cqed::dispersive_params, py::arg("transmon"),
          py::arg("cavity"));
    m.def("cavity_steady_state", &cqed::cavity_steady_state,
          py::arg("dispersive"), py::arg("cavity"), py::arg("drive_amp"),
          py::arg("omega_d"), py::arg("qubit_state"));
    m.def("output_field", &cqed::output_field, py::arg("cavity"),
          py::arg("alpha"), py::arg("drive_amp"));
    m.def("readout_state", &cqed::readout_state, py::arg("dispersive"),
          py::arg("cavity"), py::arg("drive_amp"), py::arg("omega_d"));
    m.def("measurement_rate", &cqed::measurement_rate, py::arg("cavity"),
          py::arg("alpha_g"), py::arg("alpha_e"));
    m.def("readout_fidelity", &cqed::readout_fidelity, py::arg("gamma_m"),
          py::arg("tau"), py::arg("eta"));
    m.def("stark_and_dephasing", &cqed::stark_and_dephasing,
          py::arg("dispersive"), py::arg("cavity"), py::arg("n_bar"));
    m.def("detailed_balance_population", &cqed::detailed_balance_population,
          py::arg("transmon"), py::arg("n_int"), py::arg("n_ext"));
    m.def("rabi_rate_analytic", &cqed::rabi_rate_analytic, py::arg("transmon"),
          py::arg("photon_flux"));

    // --- dynamics ---
    py::class_<dynamics::PulseShape>(m, "PulseShape")
        .def_static("constant", &dynamics::PulseShape::constant,
                    py::arg("duration"))
        .def_static("cosine_squared", &dynamics::PulseShape::cosine_squared,
                    py::arg("duration"))
        .def_readonly("duration", &dynamics::PulseShape::duration)
        .def_readonly("mean", &dynamics::PulseShape::mean)
        .def_readonly("mean_square", &dynamics::PulseShape::mean_square);
    py::class_<dynamics::DissipatorSpec>(m, "DissipatorSpec")
        .def(py::init<double, double, double>(), py::arg("gamma_down"),
             py::arg("n_bath"), py::arg("gamma_phi"))
        .def_readonly("gamma_down", &dynamics::DissipatorSpec::gamma_down)
        .def_readonly("n_bath", &dynamics::DissipatorSpec::n_bath)
        .def_readonly("gamma_phi", &dynamics::DissipatorSpec::gamma_phi)
        .def("gamma_up", &dynamics::DissipatorSpec::gamma_up);
    py::class_<dynamics::LadderHamiltonian>(m, "LadderHamiltonian")
        .def(py::init<int, double, double>(), py::arg("n_levels"),
             py::arg("anharmonicity"), py::arg("detuning") = 0.0)
        .def_readonly("n_levels", &dynamics::LadderHamiltonian::n_levels);
    py::class_<dynamics::IntegratorOptions>(m, "IntegratorOptions")
        .def(py::init<>())
        .def_readwrite("rel_tol", &dynamics::IntegratorOptions::rel_tol)
        .def_readwrite("abs_tol", &dynamics::IntegratorOptions::abs_tol)
        .def_readwrite("n_samples", &dynamics::IntegratorOptions::n_samples)
        .def_readwrite("fixed_step", &dynamics::IntegratorOptions::fixed_step)
        .def_readwrite("truncation_limit",
                       &dynamics::IntegratorOptions::truncation_limit);
    py::class_<dynamics::TimeTrace>(m, "TimeTrace")
        .def_readonly("times", &dynamics::TimeTrace::times)
        .def_readonly("populations", &dynamics::TimeTrace::populations)
        .def_readonly("sigma_x", &dynamics::TimeTrace::sigma_x);
    py::class_<dynamics::RabiCurvePoint>(m, "RabiCurvePoint")
        .def_readonly("photon_flux", &dynamics::RabiCurvePoint::photon_flux)
        .def_readonly("photocurrent", &dynamics::RabiCurvePoint::photocurrent)
        .def_readonly("omega_two_level",
                      &dynamics::RabiCurvePoint::omega_two_level)
        .def_readonly("omega_multilevel",
                      &dynamics::RabiCurvePoint::omega_multilevel);
    py::class_<dynamics::RabiLinkMap>(m, "RabiLinkMap")
        .def(py::init([](double attenuation, double impedance) {
                 return dynamics::RabiLinkMap{attenuation, impedance};
             }),
             py::arg("attenuation"), py::arg("impedance"))
        .def_readonly("attenuation", &dynamics::RabiLinkMap::attenuation)
        .def_readonly("impedance", &dynamics::RabiLinkMap::impedance);
    m.def(
        "evolve_lindblad",
        [](const dynamics::LadderHamiltonian& h,
           const dynamics::DissipatorSpec& d, double amplitude,
           const dynamics::PulseShape& shape, double t_final,
           const dynamics::IntegratorOptions& opts) {
            return dynamics::evolve_lindblad(h, d, {amplitude, shape}, t_final,
                                             opts);
        },
        py::arg("hamiltonian"), py::arg("dissipator"), py::arg("amplitude"),
        py::arg("shape"), py::arg("t_final"),
        py::arg("options") = dynamics::IntegratorOptions{});
    m.def("rabi_frequency", &dynamics::rabi_frequency, py::arg("trace"));
    m.def("rabi_vs_amplitude", &dynamics::rabi_vs_amplitude,
          py::arg("transmon"), py::arg("fluxes"), py::arg("link"),
          py::arg("options") = dynamics::IntegratorOptions{});
    m.def("ramsey", &dynamics::ramsey, py::arg("transmon"),
          py::arg("dissipator"), py::arg("stark_shift"), py::arg("delays"),
          py::arg("detuning") = 0.0);

    // --- readout ---
    py::class_<readout::ReadoutProtocol>(m, "ReadoutProtocol")
        .def(py::init<double, double, double, long, double, double>(),
             py::arg("drive_photon_flux"), py::arg("integration_time"),
             py::arg("demod_phase"), py::arg("shots"), py::arg("efficiency"),
             py::arg("t1") = 0.0)
        .def_readwrite("demod_phase", &readout::ReadoutProtocol::demod_phase)
        .def_readonly("drive_photon_flux",
                      &readout::ReadoutProtocol::drive_photon_flux)
        .def_readonly("integration_time",
                      &readout::ReadoutProtocol::integration_time)
        .def_readonly("shots", &readout::ReadoutProtocol::shots)
        .def_readonly("efficiency", &readout::ReadoutProtocol::efficiency)
        .def_readonly("t1", &readout::ReadoutProtocol::t1);
    py::class_<readout::ShotHistogram>(m, "ShotHistogram")
        .def_readonly("bin_edges", &readout::ShotHistogram::bin_edges)
        .def_readonly("counts_g", &readout::ShotHistogram::counts_g)
        .def_readonly("counts_e", &readout::ShotHistogram::counts_e)
        .def_readonly("fidelity", &readout::ShotHistogram::fidelity)
        .def_readonly("threshold", &readout::ShotHistogram::threshold)
        .def_readonly("gamma_m", &readout::ShotHistogram::gamma_m)
        .def_readonly("mu_g", &readout::ShotHistogram::mu_g)
        .def_readonly("mu_e", &readout::ShotHistogram::mu_e)
        .def_readonly("sigma", &readout::ShotHistogram::sigma);
    m.def("optimal_demod_phase", &readout::optimal_demod_phase,
          py::arg("system"), py::arg("protocol"));
    m.def("flux_for_photon_number", &readout::flux_for_photon_number,
          py::arg("system"), py::arg("photon_number"));
    m.def("simulate_shots", &readout::simulate_shots, py::arg("system"),
          py::arg("protocol"), py::arg("seed"), py::arg("bins") = 201);

    // --- noise metrology ---
    py::class_<metrology::LinkPath>(m, "LinkPath")
        .def(py::init<double, double, double>(), py::arg("attenuation"),
             py::arg("impedance"), py::arg("target_omega"))
        .def_readonly("attenuation", &metrology::LinkPath::attenuation)
        .def_readonly("impedance", &metrology::LinkPath::impedance)
        .def_readonly("target_omega", &metrology::LinkPath::target_omega)
        .def("theta", &metrology::LinkPath::theta);
    py::enum_<metrology::OccupancyKind>(m, "OccupancyKind")
        .value("cavity", metrology::OccupancyKind::cavity)
        .value("qubit", metrology::OccupancyKind::qubit);
    py::class_<metrology::OccupancyMeasurement>(m, "OccupancyMeasurement")
        .def(py::init<double, double, double, metrology::OccupancyKind>(),
             py::arg("photocurrent"), py::arg("occupancy"),
             py::arg("background"), py::arg("kind"))
        .def_readonly("photocurrent",
                      &metrology::OccupancyMeasurement::photocurrent)
        .def_readonly("occupancy", &metrology::OccupancyMeasurement::occupancy)
        .def_readonly("background",
                      &metrology::OccupancyMeasurement::background);
    py::class_<metrology::FitResult>(m, "FitResult")
        .def_readonly("slope", &metrology::FitResult::slope)
        .def_readonly("intercept", &metrology::FitResult::intercept)
        .def_readonly("slope_stderr", &metrology::FitResult::slope_stderr);
    m.def("occupancy_from_noise", &metrology::occupancy_from_noise,
          py::arg("s_i"), py::arg("path"));
    m.def("extract_si_from_cavity", &metrology::extract_si_from_cavity,
          py::arg("measurement"), py::arg("path"),
          py::arg("tolerance") = 1e-12);
    m.def("extract_si_from_qubit", &metrology::extract_si_from_qubit,
          py::arg("measurement"), py::arg("transmon"), py::arg("path"),
          py::arg("n_int"), py::arg("tolerance") = 1e-12);
    m.def("stark_calibration", &metrology::stark_calibration,
          py::arg("dispersive"), py::arg("stark_shift"));
    m.def("weighted_linear_fit", &metrology::weighted_linear_fit, py::arg("x"),
          py::arg("y"), py::arg("sigma"));
    m.def("loglog_slope", &metrology::loglog_slope, py::arg("x"), py::arg("y"));

    // --- scaling ---
    py::class_<scaling::WiringTech>(m, "WiringTech")
        .def_static("coax", &scaling::WiringTech::coax, py::arg("passive_load"),
                    py::arg("attenuation"))
        .def_static("photonic", &scaling::WiringTech::photonic,
                    py::arg("passive_load"), py::arg("responsivity"),
                    py::arg("impedance"))
        .def_readonly("passive_load", &scaling::WiringTech::passive_load)
        .def_readonly("impedance", &scaling::WiringTech::impedance);
    py::class_<scaling::ControlPulseSpec>(m, "ControlPulseSpec")
        .def(py::init<double, double, double, double, double>(),
             py::arg("omega_q"), py::arg("rabi"), py::arg("gamma_ext"),
             py::arg("shape_mean"), py::arg("duty_cycle"))
        .def_readonly("omega_q", &scaling::ControlPulseSpec::omega_q)
        .def_readonly("rabi", &scaling::ControlPulseSpec::rabi)
        .def_readonly("duty_cycle", &scaling::ControlPulseSpec::duty_cycle);
    py::class_<scaling::ReadoutNoiseBudget>(m, "ReadoutNoiseBudget")
        .def_readonly("photocurrent",
                      &scaling::ReadoutNoiseBudget::photocurrent)
        .def_readonly("n_bar", &scaling::ReadoutNoiseBudget::n_bar)
        .def_readonly("efficiency", &scaling::ReadoutNoiseBudget::efficiency);
    m.def("readout_noise_budget", &scaling::readout_noise_budget,
          py::arg("kappa"), py::arg("path"), py::arg("alpha_sq"));
    m.def("gate_error", &scaling::gate_error, py::arg("spec"), py::arg("path"),
          py::arg("gamma_down"), py::arg("i_avg"));
    m.def("gate_error_asymptote", &scaling::gate_error_asymptote,
          py::arg("path"), py::arg("gamma_ext"));
    m.def("active_heat", &scaling::active_heat, py::arg("spec"),
          py::arg("tech"));
    m.def("qubit_count", &scaling::qubit_count, py::arg("spec"),
          py::arg("tech"), py::arg("cooling"));
    m.def("crossover_duty_cycle", &scaling::crossover_duty_cycle,
          py::arg("spec"), py::arg("a"), py::arg("b"), py::arg("cooling"),
          py::arg("d_lo") = 1e-5, py::arg("d_hi") = 1.0,
          py::arg("rel_tol") = 1e-6);

    // --- experiment runner ---
    m.def("list_experiments",
          []() { return experiment::experiment_names(); });
    m.def(
        "validate_config",
        [](const std::filesystem::path& path) {
            return experiment::validate(experiment::load_config(path));
        },
        py::arg("path"));
    m.def(
        "run_config",
        [](const std::filesystem::path& path,
           std::optional<std::filesystem::path> out_dir,
           std::optional<std::uint64_t> seed) {
            auto cfg = experiment::load_config(path);
            if (seed) cfg.seed = *seed;
            if (out_dir) cfg.output_dir = *out_dir;
            const auto result = experiment::run(cfg);
            return experiment::write_result(cfg, result);
        },
        py::arg("path"), py::arg("out_dir") = std::nullopt,
        py::arg("seed") = std::nullopt,
        "Run an experiment config and return the list of files written.");
}
