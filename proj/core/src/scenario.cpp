#include "seiscontrol/scenario.hpp"

#include "seiscontrol/allocation.hpp"
#include "seiscontrol/converter.hpp"
#include "seiscontrol/errors.hpp"
#include "seiscontrol/rng.hpp"
#include "seiscontrol/seismicity_rate.hpp"
#include "seiscontrol/units.hpp"
#include "seiscontrol/zoh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace seiscontrol {

std::string_view to_string(Mode mode) {
    switch (mode) {
        case Mode::NoControl: return "no-control";
        case Mode::Scenario1: return "scenario1";
        case Mode::Scenario2: return "scenario2";
    }
    return "scenario1";
}

Mode parse_mode(std::string_view text) {
    if (text == "no-control" || text == "none") return Mode::NoControl;
    if (text == "scenario1") return Mode::Scenario1;
    if (text == "scenario2") return Mode::Scenario2;
    throw ConfigError(fmt::format("unknown mode '{}' (expected no-control, scenario1 or scenario2)", text));
}

FluxBounds default_bounds(Mode mode) {
    if (mode == Mode::Scenario2) return {-1.0e6, 1.0e6};
    return {-1.0e6, 0.0};
}

namespace {

// number of whole `step`s in `span`, or -1 if it is not an integer multiple
long long whole_steps(double span, double step) {
    const double r = span / step;
    const double n = std::round(r);
    if (std::abs(r - n) > 1e-9 * std::max(1.0, n)) return -1;
    return static_cast<long long>(n);
}

}  // namespace

double ScenarioConfig::horizon_hours() const { return units::months_to_hours(total_months()); }

double ScenarioConfig::control_start_hours() const {
    return units::months_to_hours(control_start.months_since(start));
}

int ScenarioConfig::substeps_per_control() const {
    return static_cast<int>(whole_steps(control_period, physics_dt));
}

int ScenarioConfig::total_substeps() const { return static_cast<int>(whole_steps(horizon_hours(), physics_dt)); }

void ScenarioConfig::validate() const {
    if (total_months() < 1) throw ConfigError("scenario end precedes its start");
    if (!(physics_dt > 0.0)) throw ConfigError(fmt::format("physics dt must be positive, got {}", physics_dt));
    if (!(control_period > 0.0))
        throw ConfigError(fmt::format("control period must be positive, got {}", control_period));
    if (whole_steps(control_period, physics_dt) < 1)
        throw ConfigError(fmt::format("control period {} hr is not an integer multiple of the physics step {} hr",
                                      control_period, physics_dt));
    if (whole_steps(horizon_hours(), physics_dt) < 1)
        throw ConfigError(fmt::format("horizon of {} months is not an integer number of physics steps of {} hr",
                                      total_months(), physics_dt));
    if (whole_steps(control_start_hours(), physics_dt) < 0 || control_start.months_since(start) < 0)
        throw ConfigError(fmt::format("control start {} must lie on a physics step at or after {}",
                                      control_start.to_string(), start.to_string()));
    if (!(tau >= 0.0)) throw ConfigError(fmt::format("EMA time constant must be nonnegative, got {}", tau));
    if (!(demand_scale >= 0.0)) throw ConfigError("demand scale must be nonnegative");
    if (runs < 1) throw ConfigError(fmt::format("run count must be positive, got {}", runs));
    if (bounds && !(bounds->q_min < bounds->q_max)) throw ConfigError("flux bounds are inverted");
    if (reference) reference->validate();
    if (!(sr.gamma1_scale >= 0.0) || !(sr.gamma2 > 0.0) || !(sr.r_star_total >= 0.0))
        throw ConfigError("invalid seismicity-rate settings");
    diffusion.validate();
    gr.validate();
}

std::int64_t SimulationResult::events_after(double t0) const {
    return std::count_if(catalog.begin(), catalog.end(), [&](const SeismicEvent& e) { return e.t >= t0; });
}

double SimulationResult::mean_abs_sigma(double t0) const {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& row : control_log) {
        if (row.t < t0) continue;
        sum += std::abs(row.sigma);
        ++n;
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

double SimulationResult::peak_abs_sigma() const {
    double peak = 0.0;
    for (const auto& row : control_log) peak = std::max(peak, std::abs(row.sigma));
    return peak;
}

SimulationResult run_scenario(const Dataset& dataset, const ScenarioConfig& cfg, std::uint64_t run) {
    return run_scenario(dataset, cfg, run, WindowObserver{});
}

SimulationResult run_scenario(const Dataset& dataset, const ScenarioConfig& cfg, std::uint64_t run,
                              const WindowObserver& observer) {
    cfg.validate();
    const ReservoirGrid& grid = dataset.grid;
    const double volume = grid.total_volume();
    const std::size_t n_wells = dataset.wells.size();
    if (n_wells == 0) throw ConfigError("dataset has no wells");

    const FluxBounds bounds = cfg.bounds.value_or(default_bounds(cfg.mode));
    const WellSet wells = dataset.wells.with_bounds(bounds.q_min, bounds.q_max);
    const std::vector<double> lower = wells.lower_bounds();
    const std::vector<double> upper = wells.upper_bounds();

    ControllerConfig ctrl = cfg.controller;
    ctrl.volume = volume;
    ctrl.n_wells = n_wells;
    ctrl.reference = cfg.reference.value_or(
        ReferenceTrajectory::constant(cfg.sr.r_star_total / (volume * units::kHoursPerYear)));
    const bool controlled = cfg.mode != Mode::NoControl;
    if (controlled) ctrl.validate();

    std::optional<ProductionConstraint> constraint;
    if (cfg.mode == Mode::Scenario2) constraint.emplace(ProductionConstraint::producers(wells, ctrl));

    const MonthlyWellProfile profile = dataset.static_profile();
    const int month_offset = cfg.start.months_since(profile.start);
    std::vector<double> qs_scaled(n_wells);
    auto static_flux = [&](double t) -> std::span<const double> {
        const int m = static_cast<int>(std::floor(t / units::kHoursPerMonth + 1e-9)) + month_offset;
        const auto row = profile.at(m);
        for (std::size_t i = 0; i < n_wells; ++i) qs_scaled[i] = cfg.demand_scale * row[i];
        return qs_scaled;
    };
    auto demand = [&](double t) {
        const int m = static_cast<int>(std::floor(t / units::kHoursPerMonth + 1e-9)) + month_offset;
        return cfg.demand_scale * dataset.extraction.at(m);
    };

    SRParams sr = SRParams::from_density(dataset.density, cfg.sr.gamma1_scale, cfg.sr.gamma2, cfg.sr.r_star_total);
    sr.validate(grid);
    DiffusionStepper stepper(grid, cfg.diffusion);
    PressureState pressure = PressureState::zero(grid);
    SRState rate = SRState::background(grid);

    const int n_sub = cfg.total_substeps();
    const int per_control = cfg.substeps_per_control();
    const int first_control = static_cast<int>(whole_steps(cfg.control_start_hours(), cfg.physics_dt));
    const double dt = cfg.physics_dt;

    SimulationResult result;
    for (const Well& w : wells.wells()) result.well_ids.push_back(w.id);
    result.series.reserve(static_cast<std::size_t>(n_sub));
    if (cfg.record_well_flux) result.well_flux.reserve(static_cast<std::size_t>(n_sub));

    std::vector<std::int64_t> counts(static_cast<std::size_t>(n_sub), 0);
    ConverterState converter;
    converter.tau = cfg.tau;
    ControllerState cstate;
    cstate.q_c_held.assign(n_wells, 0.0);
    ZeroOrderHold hold(cfg.control_start_hours(), cfg.control_period, n_wells);

    ScalarField r_prev = unnormalized_sr(rate, sr);
    ScalarField r_next;
    ScalarField source = ScalarField::constant(grid, units::Unit::PerHour, 0.0);
    std::vector<double> q(n_wells), presat(n_wells);
    std::int64_t cumulative = 0;
    double expected = 0.0;
    double extracted = 0.0;

    for (int j = 0; j < n_sub; ++j) {
        const double t0 = j * dt;
        const double t1 = (j + 1) * dt;

        if (controlled && j >= first_control && (j - first_control) % per_control == 0) {
            const int from = std::max(0, j - per_control);
            const std::int64_t n_k = std::accumulate(counts.begin() + from, counts.begin() + j, std::int64_t{0});
            const double y_hat = raw_sr_estimate(n_k, volume, cfg.control_period);
            converter.update(y_hat, cfg.control_period);
            const double r = ctrl.reference.at(t0);
            const double sigma = tracking_error(converter.y_R, r, ctrl.gamma1_0, ctrl.r_star_0);
            const double nu_used = cstate.nu;
            const double rho_used = cstate.rho;
            const double f_t = -demand(t0);
            std::vector<double> q_c = constraint
                                          ? constrained_control_update(ctrl, *constraint, cstate, sigma, f_t, cfg.control_period)
                                          : control_update(ctrl, cstate, sigma, cfg.control_period);
            const auto qs = static_flux(t0);
            for (std::size_t i = 0; i < n_wells; ++i)
                presat[i] = cfg.mode == Mode::Scenario1 ? q_c[i] + qs[i] : q_c[i];
            cstate.rho = anti_windup_rho(presat, lower, upper, ctrl);
            if (constraint) {
                const double residual = std::abs(constraint->apply(q_c) - f_t) / std::max(1.0, std::abs(f_t));
                result.max_constraint_residual = std::max(result.max_constraint_residual, residual);
            }
            ControlLogRow row{t0, n_k, y_hat, converter.y_R, r, sigma, nu_used, rho_used, q_c,
                              saturate(presat, lower, upper)};
            result.control_log.push_back(std::move(row));
            hold.latch((j - first_control) / per_control, q_c);
        }

        const auto qs = static_flux(t0);
        const bool control_active = controlled && j >= first_control;
        const std::span<const double> held = control_active ? hold.at(t0) : std::span<const double>{};
        for (std::size_t i = 0; i < n_wells; ++i) {
            double raw = qs[i];
            if (control_active) raw = cfg.mode == Mode::Scenario1 ? held[i] + qs[i] : held[i];
            q[i] = std::clamp(raw, lower[i], upper[i]);
            const double violation = std::max(q[i] - upper[i], lower[i] - q[i]);
            result.max_bound_violation = std::max(result.max_bound_violation, std::max(0.0, violation));
        }

        try {
            source_field(grid, wells, q, source);
            stepper.step(pressure, source, dt);
            step_sr(rate, pressure.u_t, dt, sr);
        } catch (const NumericalError& e) {
            throw NumericalError(fmt::format("physics step {} (t = {} hr): {}", j, t0, e.what()));
        }
        unnormalized_sr(rate, sr, r_next);

        const IntensityWindow window = IntensityWindow::make(grid, t0, t1, r_prev, r_next);
        if (!std::isfinite(window.lambda2))
            throw NumericalError(fmt::format("physics step {} (t = {} hr): non-finite intensity", j, t0));
        Rng rng = make_stream(cfg.seed, run, static_cast<std::uint64_t>(j));
        const std::size_t before = result.catalog.size();
        generate_window_events(grid, window, cfg.gr, rng, result.catalog);
        counts[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(result.catalog.size() - before);
        cumulative += counts[static_cast<std::size_t>(j)];
        expected += window.expected_count();
        if (observer) observer(j, window);

        SeriesRow row;
        row.t = t1;
        row.lambda = window.lambda2;
        row.mean_rate = units::per_hour_to_per_year(window.lambda2) / volume;
        row.cumulative_events = cumulative;
        row.expected_events = expected;
        row.demand = demand(t0);
        for (std::size_t i = 0; i < n_wells; ++i) {
            row.total_flux += q[i];
            if (wells[i].role == WellRole::Injector) row.injector_flux += q[i];
            else row.producer_flux += q[i];
            extracted -= std::min(q[i], 0.0) * units::hours_to_months(dt);
        }
        row.cumulative_extracted = extracted;
        result.series.push_back(row);
        if (cfg.record_well_flux) result.well_flux.push_back(q);

        std::swap(r_prev, r_next);
    }

    result.total_events = cumulative;
    result.expected_events = expected;
    result.extracted_volume = extracted;
    if (!cfg.record_catalog) {
        result.catalog.clear();
        result.catalog.shrink_to_fit();
    }
    return result;
}

}  // namespace seiscontrol
