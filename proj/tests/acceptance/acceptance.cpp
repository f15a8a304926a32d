// End-to-end checks with fixed tolerances. Prints one PASS/FAIL line per
// criterion and exits nonzero if any fails.

#include "seiscontrol/bundle.hpp"
#include "seiscontrol/catalog.hpp"
#include "seiscontrol/config.hpp"
#include "seiscontrol/diffusion.hpp"
#include "seiscontrol/ensemble.hpp"
#include "seiscontrol/hash.hpp"
#include "seiscontrol/rng.hpp"
#include "seiscontrol/scenario.hpp"
#include "seiscontrol/seismicity_rate.hpp"
#include "seiscontrol/units.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

using namespace seiscontrol;

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

// bound violations seen by any run below, m^3/month
double g_worst_violation = 0.0;
std::size_t g_audited_runs = 0;

void audit(double violation) {
    ++g_audited_runs;
    g_worst_violation = std::max(g_worst_violation, violation);
}

void audit(const SimulationResult& r, const FluxBounds& b) {
    ++g_audited_runs;
    g_worst_violation = std::max(g_worst_violation, r.max_bound_violation);
    for (const auto& row : r.well_flux)
        for (double q : row) g_worst_violation = std::max({g_worst_violation, q - b.q_max, b.q_min - q});
}

const AppConfig& app() {
    static const AppConfig cfg;
    return cfg;
}

const Dataset& groningen() {
    static const Dataset ds = make_dataset(app().dataset);
    return ds;
}

ScenarioConfig scenario(Mode mode) {
    ScenarioConfig c = app().scenario;
    c.mode = mode;
    return c;
}

const SimulationResult& full_run(Mode mode) {
    static std::vector<std::pair<Mode, SimulationResult>> cache;
    for (const auto& [m, r] : cache)
        if (m == mode) return r;
    cache.emplace_back(mode, run_scenario(groningen(), scenario(mode)));
    audit(cache.back().second, default_bounds(mode));
    return cache.back().second;
}

// ---------------------------------------------------------------------------

// max-norm error of backward Euler against the continuous sine-mode decay
double sine_mode_error(int nx, int ny, double lx, double ly, double t_end, int steps, double* seconds = nullptr) {
    const ReservoirGrid g(GridSpec{nx, ny, lx / nx, ly / ny, 0.002, {}});
    DiffusionParams p;
    p.bc = BoundaryCondition::DirichletZero;
    PressureState s = PressureState::zero(g);
    for (int k = 0; k < g.active_count(); ++k) {
        const Point c = g.centre(k);
        s.u[static_cast<std::size_t>(k)] = std::sin(kPi * c.x / lx) * std::sin(kPi * c.y / ly);
    }
    const ScalarField zero = ScalarField::constant(g, units::Unit::PerHour, 0.0);
    const auto t0 = Clock::now();
    DiffusionStepper stepper(g, p);
    const double dt = t_end / steps;
    for (int n = 0; n < steps; ++n) stepper.step(s, zero, dt);
    if (seconds) *seconds = seconds_since(t0);
    const double decay = std::exp(-p.c_hy * kPi * kPi * (1.0 / (lx * lx) + 1.0 / (ly * ly)) * t_end);
    double err = 0.0;
    for (int k = 0; k < g.active_count(); ++k) {
        const Point c = g.centre(k);
        const double exact = decay * std::sin(kPi * c.x / lx) * std::sin(kPi * c.y / ly);
        err = std::max(err, std::abs(s.u[static_cast<std::size_t>(k)] - exact));
    }
    return err;
}

Outcome diffusion_oracle() {
    const double lx = 80.0, ly = 100.0;
    const double c_hy = DiffusionParams{}.c_hy;
    const double t_end = 1.0 / (c_hy * kPi * kPi * (1.0 / (lx * lx) + 1.0 / (ly * ly)));  // one e-folding
    // space: dt shrinks with dx^2 so both error terms scale together
    const double e4 = sine_mode_error(20, 25, lx, ly, t_end, 8);
    const double e2 = sine_mode_error(40, 50, lx, ly, t_end, 32);
    double fine_seconds = 0.0;
    const double e1 = sine_mode_error(80, 100, lx, ly, t_end, 128, &fine_seconds);
    const double p_space = std::log2(std::sqrt(e4 / e2 * (e2 / e1)));
    const double p_space_fine = std::log2(e2 / e1);
    // time: fixed 80x100 grid, dt halves
    const double t8 = sine_mode_error(80, 100, lx, ly, t_end, 8);
    const double t16 = sine_mode_error(80, 100, lx, ly, t_end, 16);
    const double t32 = sine_mode_error(80, 100, lx, ly, t_end, 32);
    const double p_time = std::log2(t16 / t32);
    const double p_time_coarse = std::log2(t8 / t16);
    const bool pass = std::min(p_space, p_space_fine) >= 1.8 && std::min(p_time, p_time_coarse) >= 0.9 && fine_seconds < 5.0;
    return {pass, fmt::format("space order {:.3f} (finest pair {:.3f}), time order {:.3f} (coarse pair {:.3f}), "
                              "80x100 x 128 steps in {:.2f} s",
                              p_space, p_space_fine, p_time, p_time_coarse, fine_seconds)};
}

Outcome sr_equilibrium() {
    const ReservoirGrid g(GridSpec{10, 10, 1.0, 1.0, 0.002, {}});
    ScalarField density = ScalarField::constant(g, units::Unit::PerKm3, 0.0);
    Rng rng = make_stream(2, 0, 0);
    for (auto& v : density.values) v = 0.5 + uniform01(rng);
    const SRParams sr = SRParams::from_density(density);
    const double gamma2 = sr.gamma2;

    // no forcing: perturbed start values relax to 1
    SRState state = SRState::background(g);
    for (auto& v : state.rn.values) v = 0.98 + 0.04 * uniform01(rng);
    const ScalarField still = ScalarField::constant(g, units::Unit::MPaPerHour, 0.0);
    const int steps = 200;
    const double dt = 10.0 / gamma2 / steps;
    for (int n = 0; n < steps; ++n) step_sr(state, still, dt, sr);
    double dev = 0.0;
    for (double v : state.rn.values) dev = std::max(dev, std::abs(v - 1.0));

    // constant depletion p = -u_t: steady state 1 + (gamma1 / gamma2) p
    SRState forced = SRState::background(g);
    ScalarField u_t = ScalarField::constant(g, units::Unit::MPaPerHour, 0.0);
    std::vector<double> target(u_t.size());
    for (std::size_t k = 0; k < u_t.size(); ++k) {
        const double p = (0.2 + 0.6 * uniform01(rng)) * gamma2 / sr.gamma1[k];  // Rn_inf in [1.2, 1.8]
        u_t[k] = -p;
        target[k] = 1.0 + sr.gamma1[k] / gamma2 * p;
    }
    for (int n = 0; n < 400; ++n) step_sr(forced, u_t, 0.1 / gamma2, sr);
    double rel = 0.0;
    for (std::size_t k = 0; k < target.size(); ++k) rel = std::max(rel, std::abs(forced.rn[k] - target[k]) / target[k]);
    return {dev < 1e-6 && rel <= 1e-6,
            fmt::format("max |Rn - 1| after 10/gamma2 = {:.3e}, steady-state rel error = {:.3e}", dev, rel)};
}

Outcome poisson_statistics() {
    const ReservoirGrid g(GridSpec{4, 4, 1.0, 1.0, 0.002, {}});
    const double per_cell = 5.0 / (16 * g.cell_volume() * 10.0);  // 5 expected events per 10 hr window
    const ScalarField r = ScalarField::constant(g, units::Unit::EventsPerKm3PerHour, per_cell);
    const int windows = 10000;
    std::vector<IntensityWindow> ws;
    ws.reserve(windows);
    for (int w = 0; w < windows; ++w) ws.push_back(IntensityWindow::make(g, 10.0 * w, 10.0 * (w + 1), r, r));
    const double expected = ws.front().expected_count();

    double sum = 0.0;
    for (int w = 0; w < windows; ++w) {
        Rng rng = make_stream(3, 0, static_cast<std::uint64_t>(w));
        sum += static_cast<double>(draw_event_count(ws[static_cast<std::size_t>(w)], rng));
    }
    const double mean = sum / windows;
    const double se = std::sqrt(expected / windows);
    const double z = std::abs(mean - expected) / se;

    // inter-event times of the concatenated catalog against Exp(lambda)
    const GRParams gr;
    const Catalog cat = generate_catalog(g, ws, gr, 4);
    std::vector<double> gaps;
    for (std::size_t i = 1; i < cat.size(); ++i) gaps.push_back(cat[i].t - cat[i - 1].t);
    std::sort(gaps.begin(), gaps.end());
    const double lambda = ws.front().lambda1;
    double d = 0.0;
    const double n = static_cast<double>(gaps.size());
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        const double f = 1.0 - std::exp(-lambda * gaps[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    const double critical = 1.6276 / std::sqrt(n);  // alpha = 0.01, large n
    return {z <= 4.0 && d < critical,
            fmt::format("mean count {:.4f} vs {:.4f} ({:.2f} SE); KS D = {:.5f} < {:.5f} over {} gaps", mean, expected,
                        z, d, critical, gaps.size())};
}

Outcome thinning() {
    // 3x3 grid with only the two middle-row outer cells active
    const ReservoirGrid g(GridSpec{3, 3, 1.0, 1.0, 0.002, [](Point p) {
                                       return p.y > 1.0 && p.y < 2.0 && (p.x < 1.0 || p.x > 2.0);
                                   }});
    if (g.active_count() != 2) return {false, fmt::format("expected 2 active cells, got {}", g.active_count())};
    const std::vector<double> intensity{3.0, 1.0};
    const int draws = 10000;
    int first = 0;
    Rng rng = make_stream(5, 0, 0);
    for (int n = 0; n < draws; ++n) {
        const EventLocation loc = draw_location(g, intensity, rng);
        if (loc.cell == 0) ++first;
        if (g.locate(loc.point) != loc.cell) return {false, "sampled point outside its cell"};
    }
    const double freq = static_cast<double>(first) / draws;
    const double se = std::sqrt(0.75 * 0.25 / draws);
    const double z = std::abs(freq - 0.75) / se;
    return {z <= 3.0, fmt::format("frequencies {:.4f}/{:.4f} ({:.2f} SE)", freq, 1.0 - freq, z)};
}

Outcome gr_recovery() {
    const GRParams gr;  // b 0.97, mc 1.0, mmax 3.6
    const int trials = 200, n = 790;
    int inside = 0;
    double lo = 1e9, hi = -1e9, sum = 0.0;
    std::vector<double> mags(n);
    for (int t = 0; t < trials; ++t) {
        Rng rng = make_stream(6, static_cast<std::uint64_t>(t), 0);
        for (double& m : mags) m = draw_magnitude(gr, rng);
        const double b = estimate_gr(mags, gr.mc).b;
        if (b >= 0.85 && b <= 1.15) ++inside;
        lo = std::min(lo, b);
        hi = std::max(hi, b);
        sum += b;
    }
    const double share = static_cast<double>(inside) / trials;
    return {share >= 0.95, fmt::format("{:.1f}% of {} trials in [0.85, 1.15]; b range [{:.3f}, {:.3f}], mean {:.3f}",
                                       100.0 * share, trials, lo, hi, sum / trials)};
}

Outcome ensemble_convergence() {
    const auto t0 = Clock::now();
    const EnsembleStats stats = run_ensemble(groningen(), scenario(Mode::NoControl), 100);
    const double secs = seconds_since(t0);
    for (int r = 0; r < 100; ++r) audit(stats.max_bound_violation);
    const double mean = stats.terminal_mean();
    const double ref = stats.terminal_reference();
    const double band = 4.0 * stats.terminal_std() / std::sqrt(100.0);
    return {std::abs(mean - ref) <= band && secs < 300.0,
            fmt::format("terminal mean {:.2f} vs integral {:.2f} (band {:.2f}), {:.1f} s", mean, ref, band, secs)};
}

Outcome closed_loop_regulation() {
    const SimulationResult& s1 = full_run(Mode::Scenario1);
    const SimulationResult& nc = full_run(Mode::NoControl);
    const double horizon = scenario(Mode::Scenario1).horizon_hours();
    const double late = s1.mean_abs_sigma(0.8 * horizon);
    const double peak = s1.peak_abs_sigma();
    const double ratio = peak > 0.0 ? late / peak : 1.0;
    return {ratio <= 0.05 && s1.total_events < nc.total_events,
            fmt::format("late mean |sigma| / peak = {:.4f} ({:.4g} / {:.4g}); events {} vs no-control {}", ratio, late,
                        peak, s1.total_events, nc.total_events)};
}

Outcome constraint_exactness() {
    const SimulationResult& s2 = full_run(Mode::Scenario2);
    return {!s2.control_log.empty() && s2.max_constraint_residual <= 1e-9,
            fmt::format("max normalized residual {:.3e} over {} control steps", s2.max_constraint_residual,
                        s2.control_log.size())};
}

Outcome dtc_degradation() {
    const std::vector<double> months{1, 3, 6, 12};
    std::vector<double> hours;
    for (double m : months) hours.push_back(units::months_to_hours(m));
    const auto rows = sweep_dtc(groningen(), scenario(Mode::Scenario1), hours);
    std::vector<double> counts;
    for (const auto& r : rows) {
        counts.push_back(static_cast<double>(r.total_events));
        audit(r.max_bound_violation);
    }
    const double lo = *std::min_element(counts.begin(), counts.begin() + 3);
    const double hi = *std::max_element(counts.begin(), counts.begin() + 3);
    const double spread = (hi - lo) / lo;
    return {spread <= 0.25 && counts[3] > counts[0],
            fmt::format("events {}/{}/{}/{} for 1/3/6/12 months; 1-6 month spread {:.1f}%", counts[0], counts[1],
                        counts[2], counts[3], 100.0 * spread)};
}

Outcome k3_tradeoff() {
    const std::vector<double> k3{5.0, 10.0, 20.0, 36.05, 70.0, 140.0};
    const auto rows = sweep_k3(groningen(), scenario(Mode::Scenario1), k3);
    std::vector<double> extracted, events;
    std::string table;
    for (const auto& r : rows) {
        extracted.push_back(r.extracted);
        events.push_back(static_cast<double>(r.total_events));
        audit(r.max_bound_violation);
        table += fmt::format(" {}:{:.3g}/{}", r.k3, r.extracted, r.total_events);
    }
    const double rho_v = spearman(k3, extracted);
    const double rho_e = spearman(extracted, events);
    return {rho_v > 0.0 && rho_e > 0.0,
            fmt::format("spearman(k3, volume) = {:.3f}, spearman(volume, events) = {:.3f};{}", rho_v, rho_e, table)};
}

Outcome bundle_determinism() {
    AppConfig cfg = app();
    cfg.scenario.mode = Mode::Scenario1;
    const auto root = std::filesystem::temp_directory_path() / "seiscontrol_acceptance_bundles";
    std::filesystem::remove_all(root);
    std::vector<std::vector<BundleFile>> bundles;
    for (int rep = 0; rep < 2; ++rep) {
        const Dataset ds = make_dataset(cfg.dataset);
        const SimulationResult r = run_scenario(ds, cfg.scenario);
        audit(r, default_bounds(cfg.scenario.mode));
        bundles.push_back(write_bundle(root / std::to_string(rep), cfg, ds, r));
    }
    const auto read = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    };
    bool same = bundles[0].size() == bundles[1].size();
    for (std::size_t i = 0; same && i < bundles[0].size(); ++i) {
        const auto& name = bundles[0][i].name;
        same = name == bundles[1][i].name && bundles[0][i].sha256 == bundles[1][i].sha256 &&
               read(root / "0" / name) == read(root / "1" / name);
    }
    std::filesystem::remove_all(root);
    return {same, fmt::format("{} files compared byte for byte", bundles[0].size())};
}

Outcome saturation_respect() {
    return {g_audited_runs > 0 && g_worst_violation <= 0.0,
            fmt::format("worst violation {:.3e} m^3/month over {} audited runs", g_worst_violation, g_audited_runs)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> check;
    };
    // saturation is audited over the runs made by the others, so it goes last
    const std::vector<Criterion> criteria{
        {1, "diffusion oracle", diffusion_oracle},
        {2, "seismicity-rate equilibrium", sr_equilibrium},
        {3, "Poisson statistics", poisson_statistics},
        {4, "thinning", thinning},
        {5, "Gutenberg-Richter recovery", gr_recovery},
        {6, "ensemble convergence", ensemble_convergence},
        {7, "closed-loop regulation", closed_loop_regulation},
        {8, "constraint exactness", constraint_exactness},
        {10, "control period degradation", dtc_degradation},
        {11, "k3 trade-off", k3_tradeoff},
        {12, "determinism", bundle_determinism},
        {9, "saturation respect", saturation_respect},
    };
    int failed = 0;
    std::vector<std::string> lines(13);
    for (const auto& c : criteria) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, fmt::format("error: {}", e.what())};
        }
        if (!o.pass) ++failed;
        lines[static_cast<std::size_t>(c.id)] =
            fmt::format("{} {}: {} ({}) [{:.1f} s]", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail, seconds_since(t0));
        fmt::print(stderr, "{}\n", lines[static_cast<std::size_t>(c.id)]);
    }
    fmt::print("\n");
    for (std::size_t i = 1; i < lines.size(); ++i) fmt::print("{}\n", lines[i]);
    fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
