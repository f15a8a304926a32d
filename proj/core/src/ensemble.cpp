#include "seiscontrol/ensemble.hpp"

#include "seiscontrol/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include <fmt/format.h>

namespace seiscontrol {

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

EnsembleStats run_ensemble(const Dataset& dataset, const ScenarioConfig& cfg, int runs, unsigned threads) {
    if (runs < 2) throw ConfigError(fmt::format("an ensemble needs at least 2 runs, got {}", runs));
    cfg.validate();
    ScenarioConfig member = cfg;
    member.record_well_flux = false;
    member.record_catalog = false;

    const auto n = static_cast<std::size_t>(cfg.total_substeps());
    std::vector<std::vector<std::int64_t>> cumulative(static_cast<std::size_t>(runs));
    std::vector<std::vector<double>> expected(static_cast<std::size_t>(runs));
    EnsembleStats stats;
    stats.terminal_counts.resize(static_cast<std::size_t>(runs));
    stats.extracted.resize(static_cast<std::size_t>(runs));
    std::mutex violation_mutex;
    auto collect = [&](std::size_t r, const SimulationResult& res) {
        auto& c = cumulative[r];
        auto& e = expected[r];
        c.reserve(n);
        e.reserve(n);
        for (const SeriesRow& row : res.series) {
            c.push_back(row.cumulative_events);
            e.push_back(row.expected_events);
        }
        stats.terminal_counts[r] = res.total_events;
        stats.extracted[r] = res.extracted_volume;
        std::lock_guard lock(violation_mutex);
        stats.max_bound_violation = std::max(stats.max_bound_violation, res.max_bound_violation);
    };

    if (cfg.mode == Mode::NoControl) {
        // the flux path ignores the catalog, so one physics pass serves every member
        for (int r = 1; r < runs; ++r) cumulative[static_cast<std::size_t>(r)].reserve(n);
        Catalog scratch;
        const SimulationResult base = run_scenario(dataset, member, 0, [&](int j, const IntensityWindow& window) {
            for (int r = 1; r < runs; ++r) {
                auto& c = cumulative[static_cast<std::size_t>(r)];
                scratch.clear();
                Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(j));
                generate_window_events(dataset.grid, window, cfg.gr, rng, scratch);
                c.push_back((c.empty() ? 0 : c.back()) + static_cast<std::int64_t>(scratch.size()));
            }
        });
        collect(0, base);
        for (int r = 1; r < runs; ++r) {
            const auto ur = static_cast<std::size_t>(r);
            expected[ur] = expected[0];
            stats.terminal_counts[ur] = cumulative[ur].empty() ? 0 : cumulative[ur].back();
            stats.extracted[ur] = base.extracted_volume;
        }
    } else {
        parallel_for(static_cast<std::size_t>(runs), threads,
                     [&](std::size_t r) { collect(r, run_scenario(dataset, member, r)); });
    }

    stats.t.resize(n);
    stats.mean_cumulative.assign(n, 0.0);
    stats.std_cumulative.assign(n, 0.0);
    stats.reference.assign(n, 0.0);
    const double m = static_cast<double>(runs);
    for (std::size_t k = 0; k < n; ++k) {
        stats.t[k] = static_cast<double>(k + 1) * cfg.physics_dt;
        double sum = 0.0;
        double ref = 0.0;
        for (int r = 0; r < runs; ++r) {
            sum += static_cast<double>(cumulative[static_cast<std::size_t>(r)][k]);
            ref += expected[static_cast<std::size_t>(r)][k];
        }
        const double mean = sum / m;
        double ss = 0.0;
        for (int r = 0; r < runs; ++r) {
            const double d = static_cast<double>(cumulative[static_cast<std::size_t>(r)][k]) - mean;
            ss += d * d;
        }
        stats.mean_cumulative[k] = mean;
        stats.std_cumulative[k] = std::sqrt(ss / (m - 1.0));
        stats.reference[k] = ref / m;
    }
    return stats;
}

std::vector<K3SweepRow> sweep_k3(const Dataset& dataset, const ScenarioConfig& cfg, const std::vector<double>& k3_values,
                                 unsigned threads) {
    std::vector<K3SweepRow> rows(k3_values.size());
    std::vector<ScenarioConfig> configs;
    for (double k3 : k3_values) {
        ScenarioConfig c = cfg;
        c.mode = Mode::Scenario1;
        c.controller.k3 = k3;
        c.record_well_flux = false;
        c.record_catalog = false;
        c.validate();
        configs.push_back(std::move(c));
    }
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        const SimulationResult res = run_scenario(dataset, configs[i]);
        rows[i] = {k3_values[i], res.extracted_volume, res.total_events, res.max_bound_violation};
    });
    return rows;
}

std::vector<DtcSweepRow> sweep_dtc(const Dataset& dataset, const ScenarioConfig& cfg,
                                   const std::vector<double>& dtc_values, unsigned threads) {
    std::vector<DtcSweepRow> rows(dtc_values.size());
    std::vector<ScenarioConfig> configs;
    for (double dtc : dtc_values) {
        ScenarioConfig c = cfg;
        c.mode = Mode::Scenario1;
        c.control_period = dtc;
        c.record_well_flux = false;
        c.record_catalog = false;
        c.validate();
        configs.push_back(std::move(c));
    }
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        const SimulationResult res = run_scenario(dataset, configs[i]);
        rows[i] = {dtc_values[i], res.total_events, res.mean_abs_sigma(), res.extracted_volume,
                   res.max_bound_violation};
    });
    return rows;
}

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ConfigError("spearman needs two equal-length samples of size >= 2");
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace seiscontrol
