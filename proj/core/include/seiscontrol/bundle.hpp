#pragma once

#include "seiscontrol/config.hpp"
#include "seiscontrol/ensemble.hpp"
#include "seiscontrol/scenario.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace seiscontrol {

/// Library version string.
std::string_view version();

struct BundleFile {
    std::string name;
    std::string sha256;
};

/// Writes one run's result directory:
///
///   config.ini           full configuration echo
///   catalog.csv          events (see write_catalog)
///   timeseries.csv       per physics substep: intensity, mean rate, counts, fluxes, volume
///   controller_log.csv   per control step: t_k, n, y_hat, y_R, r_R, sigma, nu, rho, Q_c, applied Q
///   well_flux.csv        applied per-well flux per physics substep
///   manifest.json        config echo, seed, version, input and output hashes
///
/// Contents depend only on the inputs, so repeated runs produce identical bytes.
std::vector<BundleFile> write_bundle(const std::filesystem::path& dir, const AppConfig& cfg, const Dataset& dataset,
                                     const SimulationResult& result, std::uint64_t run = 0);

/// Writes config.ini and a manifest.json covering `outputs` (file names
/// already present in `dir`). Used for sweep and ensemble tables.
std::vector<BundleFile> write_manifest(const std::filesystem::path& dir, const AppConfig& cfg, const Dataset& dataset,
                                       std::string_view kind, const std::vector<std::string>& outputs);

void write_timeseries(const std::filesystem::path& path, const SimulationResult& result, const YearMonth& epoch);
void write_controller_log(const std::filesystem::path& path, const SimulationResult& result, const YearMonth& epoch);
void write_well_flux(const std::filesystem::path& path, const SimulationResult& result, const YearMonth& epoch,
                     double physics_dt);
void write_ensemble(const std::filesystem::path& path, const EnsembleStats& stats, const YearMonth& epoch);
void write_k3_sweep(const std::filesystem::path& path, const std::vector<K3SweepRow>& rows);
void write_dtc_sweep(const std::filesystem::path& path, const std::vector<DtcSweepRow>& rows);

/// Hashes of the dataset inputs: files when read from disk, otherwise the
/// synthetic generator seed and the grid fingerprint.
std::vector<BundleFile> input_hashes(const DatasetConfig& cfg, const Dataset& dataset);

}  // namespace seiscontrol
