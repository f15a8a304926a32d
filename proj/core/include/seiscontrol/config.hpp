#pragma once

#include "seiscontrol/dataset_io.hpp"
#include "seiscontrol/scenario.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace seiscontrol {

struct DatasetConfig {
    enum class Source { Synthetic, Files };
    Source source = Source::Synthetic;
    std::uint64_t synthetic_seed = 2024;
    SynthOptions synthetic;
    GridSpec grid{40, 50, 1.0, 1.0, 0.002, {}};  // used with Source::Files
    DatasetFiles files;
};

struct AppConfig {
    ScenarioConfig scenario;
    DatasetConfig dataset;
};

/// INI-style configuration. Sections mirror the library modules:
///
///   [scenario]            mode, start, end, control_start, physics_dt_months, seed, runs, demand_scale
///   [dataset]             source (synthetic|files), synthetic_seed, nx, ny, dx_km, dy_km, thickness_km,
///                         n_wells, peak_extraction, seasonal_amplitude, share_spread,
///                         outline, wells, history, density
///   [pressure-diffusion]  c_hy, beta, boundary (neumann|dirichlet)
///   [seismicity-rate]     gamma1_scale, gamma2, r_star_total
///   [catalog-generator]   a, b, mc, mmax
///   [control-loop]        k1, k2, k3, l, gamma1_0, r_star_0, beta_0, tau_months,
///                         control_period_months, q_min, q_max, reference
///
/// Every key is optional; missing keys keep their defaults. Unknown
/// sections or keys raise ConfigError naming the offending path. Relative
/// dataset paths are resolved against `base_dir`.
AppConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
AppConfig load_config(const std::filesystem::path& path);

/// Writes every setting (defaults included) in the format parse_config reads.
void write_config(std::ostream& out, const AppConfig& cfg);
std::string config_to_string(const AppConfig& cfg);

/// Builds the dataset described by `cfg`.
Dataset make_dataset(const DatasetConfig& cfg);

}  // namespace seiscontrol
