#ifndef PHOTONLINK_READOUT_HPP
#define PHOTONLINK_READOUT_HPP

#include <cstdint>
#include <vector>

#include "photonlink/cqed.hpp"

namespace photonlink::readout {

/// Single-shot dispersive readout protocol. The cavity is driven at its
/// bare frequency; the drive strength is given as a photon flux at the
/// antenna, |a_in|^2.
struct ReadoutProtocol {
    double drive_photon_flux;  // 1/s
    double integration_time;   // s
    double demod_phase;        // rad; see optimal_demod_phase
    long shots;
    double efficiency;         // eta in (0, 1]
    double t1;                 // s; <= 0 means no decay

    ReadoutProtocol(double drive_photon_flux, double integration_time,
                    double demod_phase, long shots, double efficiency,
                    double t1);
};

struct ShotHistogram {
    std::vector<double> bin_edges;  // size bins + 1, homodyne units (photons)
    std::vector<long> counts_g;
    std::vector<long> counts_e;
    double fidelity;
    double threshold;

    // model summary for the run
    double gamma_m;  // 1/s
    double mu_g;     // projected mean, ground preparation
    double mu_e;     // projected mean, excited preparation
    double sigma;    // per-shot Gaussian noise std
};

/// Demodulation phase that maximizes the projected separation,
/// arg(alpha_e - alpha_g) for the steady states of the protocol's drive.
double optimal_demod_phase(const cqed::CqedSystem& sys,
                           const ReadoutProtocol& proto);

/// Drive photon flux that puts |alpha|^2 = photon_number in the cavity
/// (ground-state branch, drive at omega_c).
double flux_for_photon_number(const cqed::CqedSystem& sys, double photon_number);

/// Monte-Carlo homodyne shots with qubit decay during integration.
/// Identical seeds give bit-identical histograms; shots use independent
/// counter-based RNG streams.
ShotHistogram simulate_shots(const cqed::CqedSystem& sys,
                             const ReadoutProtocol& proto, std::uint64_t seed,
                             int bins = 201);

/// Optimal-threshold fidelity F = 1 - P(e|g) - P(g|e) from binned counts.
/// Ties are broken toward the median of the combined distribution.
void fidelity_from_histogram(ShotHistogram& h);

} // namespace photonlink::readout

#endif
