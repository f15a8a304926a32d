#pragma once

#include "seiscontrol/scenario.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace seiscontrol {

/// Runs task(i) for i in [0, count) on up to `threads` workers (0 = hardware
/// concurrency). The first exception thrown by any task is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

struct EnsembleStats {
    std::vector<double> t;               // hr, substep ends
    std::vector<double> mean_cumulative;
    std::vector<double> std_cumulative;  // sample standard deviation
    std::vector<double> reference;       // mean of the per-run integral of Lambda dt
    std::vector<std::int64_t> terminal_counts;
    std::vector<double> extracted;       // per run, m^3
    double max_bound_violation = 0.0;    // over all members, m^3/month

    double terminal_mean() const { return mean_cumulative.empty() ? 0.0 : mean_cumulative.back(); }
    double terminal_std() const { return std_cumulative.empty() ? 0.0 : std_cumulative.back(); }
    double terminal_reference() const { return reference.empty() ? 0.0 : reference.back(); }
};

/// Runs `runs` members (run indices 0..runs-1 of the master seed). Catalogs
/// and per-well fluxes are not retained. Throws ConfigError for runs < 2.
EnsembleStats run_ensemble(const Dataset& dataset, const ScenarioConfig& cfg, int runs, unsigned threads = 0);

struct K3SweepRow {
    double k3 = 0.0;
    double extracted = 0.0;  // m^3
    std::int64_t total_events = 0;
    double max_bound_violation = 0.0;  // m^3/month
};

/// Scenario-1 run per k3 value with the configured seed.
std::vector<K3SweepRow> sweep_k3(const Dataset& dataset, const ScenarioConfig& cfg, const std::vector<double>& k3_values,
                                 unsigned threads = 0);

struct DtcSweepRow {
    double dt_c = 0.0;  // hr
    std::int64_t total_events = 0;
    double mean_abs_sigma = 0.0;
    double extracted = 0.0;  // m^3
    double max_bound_violation = 0.0;  // m^3/month
};

/// Scenario-1 run per control period (hr). Throws ConfigError if a period
/// is not an integer multiple of the physics step.
std::vector<DtcSweepRow> sweep_dtc(const Dataset& dataset, const ScenarioConfig& cfg,
                                   const std::vector<double>& dtc_values, unsigned threads = 0);

/// Spearman rank correlation (average ranks for ties).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace seiscontrol
