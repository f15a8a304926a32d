#include "seiscontrol/bundle.hpp"

#include "seiscontrol/catalog_io.hpp"
#include "seiscontrol/errors.hpp"
#include "seiscontrol/hash.hpp"
#include "seiscontrol/units.hpp"

#include <fstream>

#include <fmt/format.h>
#include <json.hpp>

#ifndef SEISCONTROL_VERSION
#define SEISCONTROL_VERSION "0.0.0"
#endif

namespace seiscontrol {

std::string_view version() { return SEISCONTROL_VERSION; }

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
    return out;
}

void check(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

}  // namespace

void write_timeseries(const std::filesystem::path& path, const SimulationResult& result, const YearMonth& epoch) {
    auto out = open_out(path);
    out << "time_iso,t_hr,decimal_year,lambda_per_hr,mean_rate_per_km3_yr,cumulative_events,expected_events,"
           "total_flux_m3_per_month,producer_flux_m3_per_month,injector_flux_m3_per_month,demand_m3_per_month,"
           "cumulative_extracted_m3\n";
    for (const SeriesRow& r : result.series) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", iso_timestamp(epoch, r.t), r.t,
                           decimal_year(epoch, r.t), r.lambda, r.mean_rate, r.cumulative_events, r.expected_events,
                           r.total_flux, r.producer_flux, r.injector_flux, r.demand, r.cumulative_extracted);
    }
    check(out, path);
}

void write_controller_log(const std::filesystem::path& path, const SimulationResult& result, const YearMonth& epoch) {
    auto out = open_out(path);
    out << "time_iso,t_hr,n_events,y_hat_per_km3_hr,y_R_per_km3_hr,r_R_per_km3_hr,sigma,nu_MPa_per_hr,rho_per_hr";
    for (const auto& id : result.well_ids) out << ",qc_" << id << "_m3_per_month";
    for (const auto& id : result.well_ids) out << ",q_" << id << "_m3_per_month";
    out << '\n';
    for (const ControlLogRow& r : result.control_log) {
        out << fmt::format("{},{},{},{},{},{},{},{},{}", iso_timestamp(epoch, r.t), r.t, r.n_events, r.y_hat, r.y_R,
                           r.reference, r.sigma, r.nu, r.rho);
        for (double v : r.q_c) out << fmt::format(",{}", v);
        for (double v : r.q_applied) out << fmt::format(",{}", v);
        out << '\n';
    }
    check(out, path);
}

void write_well_flux(const std::filesystem::path& path, const SimulationResult& result, const YearMonth& epoch,
                     double physics_dt) {
    auto out = open_out(path);
    out << "time_iso,t_hr";
    for (const auto& id : result.well_ids) out << ",q_" << id << "_m3_per_month";
    out << '\n';
    for (std::size_t j = 0; j < result.well_flux.size(); ++j) {
        const double t = static_cast<double>(j) * physics_dt;
        out << fmt::format("{},{}", iso_timestamp(epoch, t), t);
        for (double v : result.well_flux[j]) out << fmt::format(",{}", v);
        out << '\n';
    }
    check(out, path);
}

void write_ensemble(const std::filesystem::path& path, const EnsembleStats& stats, const YearMonth& epoch) {
    auto out = open_out(path);
    out << "time_iso,t_hr,mean_cumulative_events,std_cumulative_events,expected_events\n";
    for (std::size_t k = 0; k < stats.t.size(); ++k)
        out << fmt::format("{},{},{},{},{}\n", iso_timestamp(epoch, stats.t[k]), stats.t[k], stats.mean_cumulative[k],
                           stats.std_cumulative[k], stats.reference[k]);
    check(out, path);
}

std::vector<BundleFile> input_hashes(const DatasetConfig& cfg, const Dataset& dataset) {
    std::vector<BundleFile> out;
    if (cfg.source == DatasetConfig::Source::Files) {
        for (const auto& p : {cfg.files.outline, cfg.files.wells, cfg.files.history, cfg.files.density})
            if (!p.empty()) out.push_back({p.string(), sha256_file(p)});
    } else {
        out.push_back({fmt::format("synthetic:{}", cfg.synthetic_seed), dataset.grid.fingerprint()});
    }
    return out;
}

namespace {

void write_config_file(const std::filesystem::path& dir, const std::string& text) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
    auto out = open_out(dir / "config.ini");
    out << text;
    check(out, dir / "config.ini");
}

std::vector<BundleFile> finish_manifest(const std::filesystem::path& dir, nlohmann::ordered_json manifest,
                                        const AppConfig& cfg, const Dataset& dataset,
                                        const std::vector<std::string>& names) {
    std::vector<BundleFile> files;
    for (const auto& name : names) files.push_back({name, sha256_file(dir / name)});
    auto& inputs = manifest["inputs"] = nlohmann::ordered_json::array();
    for (const auto& f : input_hashes(cfg.dataset, dataset)) inputs.push_back({{"name", f.name}, {"sha256", f.sha256}});
    auto& outputs = manifest["outputs"] = nlohmann::ordered_json::array();
    for (const auto& f : files) outputs.push_back({{"file", f.name}, {"sha256", f.sha256}});
    {
        auto out = open_out(dir / "manifest.json");
        out << manifest.dump(2) << '\n';
        check(out, dir / "manifest.json");
    }
    files.push_back({"manifest.json", sha256_file(dir / "manifest.json")});
    return files;
}

nlohmann::ordered_json manifest_head(const AppConfig& cfg, std::string_view kind, const std::string& config_text) {
    nlohmann::ordered_json manifest;
    manifest["tool"] = "seiscontrol";
    manifest["version"] = std::string(version());
    manifest["kind"] = std::string(kind);
    manifest["mode"] = std::string(to_string(cfg.scenario.mode));
    manifest["seed"] = cfg.scenario.seed;
    manifest["config"] = config_text;
    return manifest;
}

}  // namespace

std::vector<BundleFile> write_bundle(const std::filesystem::path& dir, const AppConfig& cfg, const Dataset& dataset,
                                     const SimulationResult& result, std::uint64_t run) {
    const ScenarioConfig& sc = cfg.scenario;
    const std::string config_text = config_to_string(cfg);
    write_config_file(dir, config_text);
    write_catalog(dir / "catalog.csv", result.catalog,
                  CatalogHeader{sc.seed, run, sc.gr, dataset.grid.fingerprint(), sc.start});
    write_timeseries(dir / "timeseries.csv", result, sc.start);
    write_controller_log(dir / "controller_log.csv", result, sc.start);
    write_well_flux(dir / "well_flux.csv", result, sc.start, sc.physics_dt);

    auto manifest = manifest_head(cfg, "simulate", config_text);
    manifest["run"] = run;
    manifest["summary"] = {{"total_events", result.total_events},
                           {"expected_events", result.expected_events},
                           {"extracted_volume_m3", result.extracted_volume},
                           {"control_steps", result.control_log.size()},
                           {"max_bound_violation_m3_per_month", result.max_bound_violation},
                           {"max_constraint_residual", result.max_constraint_residual}};
    return finish_manifest(dir, std::move(manifest), cfg, dataset,
                           {"config.ini", "catalog.csv", "timeseries.csv", "controller_log.csv", "well_flux.csv"});
}

std::vector<BundleFile> write_manifest(const std::filesystem::path& dir, const AppConfig& cfg, const Dataset& dataset,
                                       std::string_view kind, const std::vector<std::string>& outputs) {
    const std::string config_text = config_to_string(cfg);
    write_config_file(dir, config_text);
    std::vector<std::string> names{"config.ini"};
    names.insert(names.end(), outputs.begin(), outputs.end());
    return finish_manifest(dir, manifest_head(cfg, kind, config_text), cfg, dataset, names);
}

void write_k3_sweep(const std::filesystem::path& path, const std::vector<K3SweepRow>& rows) {
    auto out = open_out(path);
    out << "k3_MPa_per_hr,extracted_volume_m3,total_events\n";
    for (const auto& r : rows) out << fmt::format("{},{},{}\n", r.k3, r.extracted, r.total_events);
    check(out, path);
}

void write_dtc_sweep(const std::filesystem::path& path, const std::vector<DtcSweepRow>& rows) {
    auto out = open_out(path);
    out << "dt_c_months,dt_c_hr,total_events,mean_abs_sigma,extracted_volume_m3\n";
    for (const auto& r : rows)
        out << fmt::format("{},{},{},{},{}\n", units::hours_to_months(r.dt_c), r.dt_c, r.total_events, r.mean_abs_sigma,
                           r.extracted);
    check(out, path);
}

}  // namespace seiscontrol
