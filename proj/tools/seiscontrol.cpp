#include "seiscontrol/bundle.hpp"
#include "seiscontrol/catalog_io.hpp"
#include "seiscontrol/config.hpp"
#include "seiscontrol/ensemble.hpp"
#include "seiscontrol/errors.hpp"
#include "seiscontrol/table.hpp"
#include "seiscontrol/units.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace seiscontrol;

namespace {

enum Exit : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kConfig = 3,
    kNumerical = 4,
    kInsufficientData = 5,
    kIo = 6,
};

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<int> runs;
    std::string out_dir;
    unsigned threads = 0;
};

fs::path out_dir(const Common& c) {
    if (!c.out_dir.empty()) return c.out_dir;
    if (const char* env = std::getenv("SEISCONTROL_OUT_DIR"); env && *env) return env;
    return "seiscontrol-out";
}

AppConfig load(const Common& c) {
    AppConfig cfg;
    if (!c.config.empty()) cfg = load_config(c.config);
    if (c.seed) cfg.scenario.seed = *c.seed;
    if (c.mode) cfg.scenario.mode = parse_mode(*c.mode);
    if (c.runs) cfg.scenario.runs = *c.runs;
    cfg.scenario.validate();
    return cfg;
}

void add_common(CLI::App* cmd, Common& c, bool with_runs) {
    cmd->add_option("-c,--config", c.config, "configuration file (INI); defaults apply when omitted")
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", c.seed, "master seed (overrides [scenario] seed)");
    cmd->add_option("--mode", c.mode, "no-control | scenario1 | scenario2");
    if (with_runs) cmd->add_option("--runs", c.runs, "ensemble size; > 1 writes ensemble statistics")->check(CLI::PositiveNumber);
    cmd->add_option("-o,--out-dir", c.out_dir, "output directory (default: $SEISCONTROL_OUT_DIR or ./seiscontrol-out)");
    cmd->add_option("-j,--threads", c.threads, "worker threads for ensembles and sweeps (0 = all cores)");
}

int cmd_simulate(const Common& c) {
    const AppConfig cfg = load(c);
    const Dataset dataset = make_dataset(cfg.dataset);
    const fs::path dir = out_dir(c);
    if (cfg.scenario.runs > 1) {
        const EnsembleStats stats = run_ensemble(dataset, cfg.scenario, cfg.scenario.runs, c.threads);
        fs::create_directories(dir);
        write_ensemble(dir / "ensemble.csv", stats, cfg.scenario.start);
        write_manifest(dir, cfg, dataset, "ensemble", {"ensemble.csv"});
        const double se = stats.terminal_std() / std::sqrt(static_cast<double>(cfg.scenario.runs));
        fmt::print("mode {}  runs {}  terminal mean {:.1f} +- {:.1f} (se)  integral of Lambda {:.1f}\n",
                   to_string(cfg.scenario.mode), cfg.scenario.runs, stats.terminal_mean(), se,
                   stats.terminal_reference());
    } else {
        const SimulationResult res = run_scenario(dataset, cfg.scenario);
        write_bundle(dir, cfg, dataset, res);
        fmt::print("mode {}  seed {}  events {}  expected {:.1f}  extracted {:.4g} m^3\n", to_string(cfg.scenario.mode),
                   cfg.scenario.seed, res.total_events, res.expected_events, res.extracted_volume);
        if (!res.control_log.empty())
            fmt::print("control steps {}  peak |sigma| {:.3g}  max constraint residual {:.2e}\n", res.control_log.size(),
                       res.peak_abs_sigma(), res.max_constraint_residual);
    }
    fmt::print("wrote {}\n", dir.string());
    return kOk;
}

int cmd_catalog_stats(const std::string& path, double mc, double bin, const std::string& out) {
    const CatalogFile file = read_catalog(fs::path(path));
    const GREstimate est = estimate_gr(file.events, mc);
    std::vector<double> mags;
    mags.reserve(file.events.size());
    for (const auto& e : file.events) mags.push_back(e.magnitude);
    const auto table = exceedance_table(mags, mc, bin);
    fmt::print("events {}  (M >= {}: {})\n", file.events.size(), mc, est.count);
    fmt::print("a_hat {:.4f}\nb_hat {:.4f}\n", est.a, est.b);
    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw IoError(fmt::format("cannot write '{}'", out));
        f << "magnitude,count_ge\n";
        for (const auto& row : table) f << fmt::format("{:.2f},{}\n", row.magnitude, row.count);
        f.flush();
        if (!f) throw IoError(fmt::format("write to '{}' failed", out));
        fmt::print("wrote {}\n", out);
    } else {
        fmt::print("magnitude,count_ge\n");
        for (const auto& row : table) fmt::print("{:.2f},{}\n", row.magnitude, row.count);
    }
    return kOk;
}

std::vector<double> parse_values(const std::vector<std::string>& args) {
    std::vector<double> values;
    for (const auto& arg : args) {
        for (const auto& cell : split_delimited(arg)) {
            if (cell.empty()) continue;
            try {
                values.push_back(parse_double(cell, 0));
            } catch (const ConfigError&) {
                throw CLI::ValidationError("values", fmt::format("'{}' is not a number", cell));
            }
        }
    }
    std::vector<double> unique;
    for (double v : values) {
        if (std::find(unique.begin(), unique.end(), v) != unique.end()) {
            fmt::print(stderr, "warning: duplicate sweep value {} ignored\n", v);
            continue;
        }
        unique.push_back(v);
    }
    if (unique.empty()) throw CLI::ValidationError("values", "at least one sweep value is required");
    return unique;
}

int cmd_sweep(const Common& c, const std::string& parameter, const std::vector<std::string>& raw) {
    if (parameter != "k3" && parameter != "dtc")
        throw CLI::ValidationError("parameter", fmt::format("expected k3 or dtc, got '{}'", parameter));
    const std::vector<double> values = parse_values(raw);
    const AppConfig cfg = load(c);
    const Dataset dataset = make_dataset(cfg.dataset);
    const fs::path dir = out_dir(c);
    fs::create_directories(dir);
    if (parameter == "k3") {
        const auto rows = sweep_k3(dataset, cfg.scenario, values, c.threads);
        write_k3_sweep(dir / "sweep_k3.csv", rows);
        write_manifest(dir, cfg, dataset, "sweep-k3", {"sweep_k3.csv"});
        for (const auto& r : rows) fmt::print("k3 {:<8g} extracted {:.4g} m^3  events {}\n", r.k3, r.extracted, r.total_events);
    } else {
        std::vector<double> hours;
        for (double m : values) hours.push_back(units::months_to_hours(m));
        const auto rows = sweep_dtc(dataset, cfg.scenario, hours, c.threads);
        write_dtc_sweep(dir / "sweep_dtc.csv", rows);
        write_manifest(dir, cfg, dataset, "sweep-dtc", {"sweep_dtc.csv"});
        for (const auto& r : rows)
            fmt::print("dt_c {:<4g} months  events {}  mean |sigma| {:.3g}\n", units::hours_to_months(r.dt_c),
                       r.total_events, r.mean_abs_sigma);
    }
    fmt::print("wrote {}\n", dir.string());
    return kOk;
}

int cmd_generate_dataset(const Common& c) {
    const AppConfig cfg = load(c);
    if (cfg.dataset.source != DatasetConfig::Source::Synthetic)
        throw ConfigError("[dataset] source: generate-dataset needs source = synthetic");
    const Dataset dataset = make_dataset(cfg.dataset);
    const fs::path dir = out_dir(c);
    const DatasetFiles files = write_dataset(dir, dataset);
    fmt::print("wells {}  active cells {}  volume {:.4g} km^3\n", dataset.wells.size(), dataset.grid.active_count(),
               dataset.grid.total_volume());
    for (const auto& p : {files.outline, files.wells, files.history, files.density}) fmt::print("wrote {}\n", p.string());
    return kOk;
}

template <class F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const CLI::Error& e) {
        fmt::print(stderr, "usage error: {}\n", e.what());
        return kUsage;
    } catch (const ConfigError& e) {
        fmt::print(stderr, "configuration error: {}\n", e.what());
        return kConfig;
    } catch (const NumericalError& e) {
        fmt::print(stderr, "numerical error: {}\n", e.what());
        return kNumerical;
    } catch (const DomainError& e) {
        fmt::print(stderr, "numerical error: {}\n", e.what());
        return kNumerical;
    } catch (const InsufficientDataError& e) {
        fmt::print(stderr, "insufficient data: {}\n", e.what());
        return kInsufficientData;
    } catch (const IoError& e) {
        fmt::print(stderr, "i/o error: {}\n", e.what());
        return kIo;
    } catch (const fs::filesystem_error& e) {
        fmt::print(stderr, "i/o error: {}\n", e.what());
        return kIo;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kFailure;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-loop control of induced seismicity: simulate, sweep and analyse"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    Common sim;
    auto* simulate = app.add_subcommand("simulate", "run one scenario (or an ensemble with --runs > 1)");
    add_common(simulate, sim, true);

    std::string catalog_path, exceed_out;
    double mc = 1.0, bin = 0.1;
    auto* stats = app.add_subcommand("catalog-stats", "Gutenberg-Richter estimates and exceedance table");
    stats->add_option("catalog", catalog_path, "catalog file")->required()->check(CLI::ExistingFile);
    stats->add_option("--mc", mc, "completeness magnitude");
    stats->add_option("--bin", bin, "exceedance table bin width")->check(CLI::PositiveNumber);
    stats->add_option("-o,--out", exceed_out, "write the exceedance table here instead of stdout");

    Common sw;
    std::string parameter;
    std::vector<std::string> values;
    auto* sweep = app.add_subcommand("sweep", "Scenario-1 sweep over k3 or the control period (months)");
    add_common(sweep, sw, false);
    sweep->add_option("--sweep,parameter", parameter, "k3 | dtc")->required();
    sweep->add_option("values", values, "comma- or space-separated values")->required();

    Common gen;
    auto* generate = app.add_subcommand("generate-dataset", "write the synthetic dataset as CSV tables");
    add_common(generate, gen, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    if (*simulate) return guarded([&] { return cmd_simulate(sim); });
    if (*stats) return guarded([&] { return cmd_catalog_stats(catalog_path, mc, bin, exceed_out); });
    if (*sweep) return guarded([&] { return cmd_sweep(sw, parameter, values); });
    if (*generate) return guarded([&] { return cmd_generate_dataset(gen); });
    return kUsage;
}
