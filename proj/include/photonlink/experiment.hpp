#ifndef PHOTONLINK_EXPERIMENT_HPP
#define PHOTONLINK_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "photonlink/cqed.hpp"
#include "photonlink/errors.hpp"
#include "photonlink/noise_metrology.hpp"
#include "photonlink/photonic_chain.hpp"

namespace photonlink::experiment {

inline constexpr const char* version = "0.1.0";

struct SweepSpec {
    double start = 0.0;
    double stop = 0.0;
    int points = 0;
    bool log_scale = false;

    std::vector<double> values() const;
};

/// Parsed experiment configuration. The device/link blocks may live in a
/// separate file referenced by "device_file" (resolved relative to the
/// config location).
struct ExperimentConfig {
    nlohmann::json raw;       // full config echo (device block inlined)
    std::string name;         // experiment name
    nlohmann::json params;    // experiment-specific parameters
    SweepSpec sweep;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir = ".";
    std::string basename;

    nlohmann::json device;    // device parameter block
    nlohmann::json link;      // link parameter block
};

struct ExperimentResult {
    nlohmann::json metadata;  // config echo, version, seed
    std::vector<std::pair<std::string, std::vector<double>>> columns;
    nlohmann::json summary;
};

/// Known experiment names, in dispatch order.
const std::vector<std::string>& experiment_names();

/// Load and structurally validate a config file.
/// Throws ConfigError with a field path on any malformed entry.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Run all type invariants without executing; returns one message per
/// violation, empty when the config is clean.
std::vector<std::string> validate(const ExperimentConfig& config);

/// Dispatch to the owning module and compute the result.
ExperimentResult run(const ExperimentConfig& config);

/// Write <basename>.json (metadata + summary) and, when columns are
/// present, <basename>.csv. Writes are atomic (temp file + rename).
/// Returns the paths written.
std::vector<std::filesystem::path> write_result(const ExperimentConfig& config,
                                                const ExperimentResult& result);

// --- config block constructors (shared with validate) ---
cqed::TransmonParams transmon_from_config(const nlohmann::json& device,
                                          bool control_frequency = false);
cqed::CavityParams cavity_from_config(const nlohmann::json& device);
photonics::PhotonicChain chain_from_config(const nlohmann::json& link);
metrology::LinkPath link_path_from_config(const nlohmann::json& link,
                                          double target_omega);

/// Full-precision decimal formatting; re-parsing reproduces the value.
std::string format_double(double v);

} // namespace photonlink::experiment

#endif
