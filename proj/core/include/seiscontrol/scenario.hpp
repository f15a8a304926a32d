#pragma once

#include "seiscontrol/catalog.hpp"
#include "seiscontrol/controller.hpp"
#include "seiscontrol/diffusion.hpp"
#include "seiscontrol/synthetic.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace seiscontrol {

enum class Mode {
    NoControl,  // Q = sat(Q_s)
    Scenario1,  // Q = sat(Q_c + Q_s), extraction-only bounds
    Scenario2,  // Q = sat(Q_c), producers meet f(t) exactly, injectors regulate
};

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

struct FluxBounds {
    double q_min = -1.0e6;  // m^3/month
    double q_max = 0.0;
};

/// Default per-well bounds of a mode: [-1e6, 0] without injection, [-1e6, 1e6] in Scenario 2.
FluxBounds default_bounds(Mode mode);

struct SRSettings {
    double gamma1_scale = 3.7;   // gamma1 = scale * d(x), 1/MPa
    double gamma2 = 4.67e-8;     // 1/hr
    double r_star_total = 4.11e-5;  // R* = total * d(x), events/(km^3 yr)
};

struct ScenarioConfig {
    Mode mode = Mode::Scenario1;
    YearMonth start{1965, 10};
    YearMonth end{2023, 1};             // inclusive
    YearMonth control_start{1991, 12};
    double physics_dt = 73.05;          // hr
    double control_period = 730.5;      // hr, integer multiple of physics_dt
    double tau = 730.5;                 // EMA time constant, hr
    ControllerConfig controller;        // volume and n_wells are filled from the dataset
    std::optional<ReferenceTrajectory> reference;  // default: R*_total / (V * hours per year)
    std::optional<FluxBounds> bounds;   // default: default_bounds(mode)
    double demand_scale = 1.0;          // multiplies the dataset's f(t)
    DiffusionParams diffusion;
    SRSettings sr;
    GRParams gr;
    std::uint64_t seed = 1;
    int runs = 1;
    bool record_well_flux = true;
    bool record_catalog = true;

    /// Throws ConfigError on an inconsistent schedule or parameter set.
    void validate() const;

    int total_months() const { return end.months_since(start) + 1; }
    double horizon_hours() const;
    double control_start_hours() const;
    /// Number of physics substeps per control period.
    int substeps_per_control() const;
    int total_substeps() const;
};

struct SeriesRow {
    double t = 0.0;                 // hr, end of the substep
    double lambda = 0.0;            // total intensity at t, events/hr
    double mean_rate = 0.0;         // volume-averaged R at t, events/(km^3 yr)
    std::int64_t cumulative_events = 0;
    double expected_events = 0.0;   // integral of lambda dt from the start
    double total_flux = 0.0;        // sum of applied Q over the substep, m^3/month
    double demand = 0.0;            // f(t), m^3/month
    double producer_flux = 0.0;     // sum of applied Q over producers, m^3/month
    double injector_flux = 0.0;     // sum of applied Q over injection-only wells, m^3/month
    double cumulative_extracted = 0.0;  // m^3
};

struct ControlLogRow {
    double t = 0.0;  // hr, sampling instant t_k
    std::int64_t n_events = 0;  // events in [t_{k-1}, t_k)
    double y_hat = 0.0;
    double y_R = 0.0;
    double reference = 0.0;
    double sigma = 0.0;
    double nu = 0.0;   // value used for Q_c(t_k)
    double rho = 0.0;  // value used to advance nu over [t_k, t_{k+1})
    std::vector<double> q_c;      // m^3/month, before saturation
    std::vector<double> q_applied;  // m^3/month, at t_k
};

struct SimulationResult {
    Catalog catalog;
    std::vector<SeriesRow> series;             // one row per physics substep
    std::vector<std::vector<double>> well_flux;  // applied Q per substep (if recorded)
    std::vector<ControlLogRow> control_log;
    std::vector<std::string> well_ids;
    std::int64_t total_events = 0;
    double expected_events = 0.0;
    double extracted_volume = 0.0;  // m^3
    /// Largest bound violation seen over all substeps (0 when respected), m^3/month.
    double max_bound_violation = 0.0;
    /// Largest |W Q_c - f_t| / max(1, |f_t|) over control steps (Scenario 2).
    double max_constraint_residual = 0.0;

    /// Events with t >= t0 hr.
    std::int64_t events_after(double t0) const;
    /// Mean |sigma| over control steps with t_k >= t0.
    double mean_abs_sigma(double t0 = 0.0) const;
    double peak_abs_sigma() const;
};

/// Runs one closed-loop simulation. Per control interval: count the events
/// of the previous interval, update the converter and the controller, hold
/// the command, then advance the physics substeps and draw each substep's
/// events from its own stream make_stream(seed, run, substep).
SimulationResult run_scenario(const Dataset& dataset, const ScenarioConfig& cfg, std::uint64_t run = 0);

/// Called after every physics substep with the substep index and its intensity window.
using WindowObserver = std::function<void(int, const IntensityWindow&)>;
SimulationResult run_scenario(const Dataset& dataset, const ScenarioConfig& cfg, std::uint64_t run,
                              const WindowObserver& observer);

}  // namespace seiscontrol
