#include "seiscontrol/catalog.hpp"

#include "seiscontrol/errors.hpp"
#include "seiscontrol/units.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

namespace seiscontrol {

void GRParams::validate() const {
    if (!(b > 0.0)) throw ConfigError(fmt::format("G-R b-value must be positive, got {}", b));
    if (!(mc < mmax)) throw ConfigError(fmt::format("completeness magnitude {} must be below Mmax {}", mc, mmax));
}

ScalarField to_per_hour(ScalarField field) {
    switch (field.unit) {
        case units::Unit::EventsPerKm3PerHour: break;
        case units::Unit::EventsPerKm3PerYear:
            for (double& v : field.values) v = units::per_year_to_per_hour(v);
            field.unit = units::Unit::EventsPerKm3PerHour;
            break;
        default:
            throw ConfigError(fmt::format("intensity field has unit '{}'", units::to_string(field.unit)));
    }
    return field;
}

double total_rate(const ReservoirGrid& grid, const ScalarField& intensity) {
    require_same_grid(grid, intensity, "intensity field");
    if (std::any_of(intensity.values.begin(), intensity.values.end(), [](double v) { return !(v >= 0.0); }))
        throw DomainError("intensity must be nonnegative and finite");
    double total = integrate(grid, intensity);
    if (intensity.unit == units::Unit::EventsPerKm3PerYear)
        total = units::per_year_to_per_hour(total);
    else if (intensity.unit != units::Unit::EventsPerKm3PerHour)
        throw ConfigError(fmt::format("intensity field has unit '{}'", units::to_string(intensity.unit)));
    return total;
}

IntensityWindow IntensityWindow::make(const ReservoirGrid& grid, double t1, double t2, ScalarField r1,
                                      ScalarField r2) {
    if (!(t2 > t1)) throw ConfigError(fmt::format("intensity window [{}, {}] is empty", t1, t2));
    IntensityWindow w;
    w.t1 = t1;
    w.t2 = t2;
    w.r1 = to_per_hour(std::move(r1));
    w.r2 = to_per_hour(std::move(r2));
    w.lambda1 = total_rate(grid, w.r1);
    w.lambda2 = total_rate(grid, w.r2);
    return w;
}

std::int64_t draw_event_count(const IntensityWindow& window, Rng& rng) {
    const double mean = window.expected_count();
    if (!(mean > 0.0)) return 0;
    std::poisson_distribution<std::int64_t> poisson(mean);
    return poisson(rng);
}

double event_time_from_uniform(const IntensityWindow& w, double u) {
    // Solve l1 s + (l2 - l1) s^2 / (2T) = u * dL for s in [0, T] with the
    // cancellation-free root s = 2c / (l1 + sqrt(l1^2 + 2 (l2 - l1) c / T)).
    const double span = w.duration();
    const double c = u * w.expected_count();
    const double disc = w.lambda1 * w.lambda1 + 2.0 * (w.lambda2 - w.lambda1) * c / span;
    const double den = w.lambda1 + std::sqrt(std::max(disc, 0.0));
    const double s = den > 0.0 ? 2.0 * c / den : 0.0;
    return w.t1 + std::clamp(s, 0.0, span);
}

std::vector<double> draw_event_times(const IntensityWindow& window, std::int64_t count, Rng& rng) {
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
    for (std::int64_t i = 0; i < count; ++i) times.push_back(event_time_from_uniform(window, uniform01(rng)));
    std::sort(times.begin(), times.end());
    return times;
}

EventLocation draw_location(const ReservoirGrid& grid, std::span<const double> intensity, Rng& rng) {
    if (intensity.size() != static_cast<std::size_t>(grid.active_count()))
        throw ConfigError("intensity field does not match the grid");
    double r_max = 0.0;
    for (double v : intensity) {
        if (!(v >= 0.0)) throw DomainError("intensity must be nonnegative and finite");
        r_max = std::max(r_max, v);
    }
    if (r_max <= 0.0) throw DomainError("cannot place an event in an identically zero intensity field");

    // all cells share one volume, so a uniform cell plus a uniform offset is
    // a uniform proposal over the active area
    const auto n = static_cast<std::uint64_t>(grid.active_count());
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    for (;;) {
        const auto k = static_cast<int>(pick(rng));
        const double ox = uniform01(rng);
        const double oy = uniform01(rng);
        const double accept = uniform01(rng);
        if (accept * r_max < intensity[static_cast<std::size_t>(k)]) {
            const CellIndex c = grid.cell(k);
            return {k, Point{(c.i + ox) * grid.dx(), (c.j + oy) * grid.dy()}};
        }
    }
}

double magnitude_from_uniform(const GRParams& gr, double u) {
    const double tail = -std::expm1(-gr.b * std::numbers::ln10 * (gr.mmax - gr.mc));  // 1 - 10^{-b (Mmax - Mc)}
    const double m = gr.mc - std::log10(1.0 - u * tail) / gr.b;
    return std::clamp(m, gr.mc, gr.mmax);
}

double draw_magnitude(const GRParams& gr, Rng& rng) { return magnitude_from_uniform(gr, uniform01(rng)); }

void generate_window_events(const ReservoirGrid& grid, const IntensityWindow& window, const GRParams& gr, Rng& rng,
                            Catalog& out) {
    const std::int64_t count = draw_event_count(window, rng);
    if (count == 0) return;
    const std::vector<double> times = draw_event_times(window, count, rng);
    std::vector<double> field(window.r1.size());
    const double span = window.duration();
    for (double s : times) {
        // spatial field at s: linear interpolation of the endpoint fields
        const double w = (s - window.t1) / span;
        for (std::size_t k = 0; k < field.size(); ++k) field[k] = (1.0 - w) * window.r1[k] + w * window.r2[k];
        const EventLocation loc = draw_location(grid, field, rng);
        out.push_back(SeismicEvent{s, loc.cell, loc.point, draw_magnitude(gr, rng)});
    }
}

Catalog generate_catalog(const ReservoirGrid& grid, std::span<const IntensityWindow> windows, const GRParams& gr,
                         std::uint64_t seed, std::uint64_t run) {
    gr.validate();
    Catalog catalog;
    for (std::size_t w = 0; w < windows.size(); ++w) {
        if (w > 0 && windows[w].t1 != windows[w - 1].t2)
            throw ConfigError(fmt::format("intensity windows {} and {} are not contiguous", w - 1, w));
        Rng rng = make_stream(seed, run, w);
        generate_window_events(grid, windows[w], gr, rng, catalog);
    }
    return catalog;
}

GREstimate estimate_gr(std::span<const double> magnitudes, double mc) {
    std::size_t n = 0;
    double sum = 0.0;
    for (double m : magnitudes) {
        if (m >= mc) {
            ++n;
            sum += m;
        }
    }
    if (n < 30)
        throw InsufficientDataError(fmt::format("b-value estimation needs at least 30 events above Mc = {}, got {}", mc, n));
    const double excess = sum / static_cast<double>(n) - mc;
    if (!(excess > 0.0)) throw DomainError("mean magnitude equals the completeness magnitude; b-value undefined");
    GREstimate est;
    est.count = n;
    est.b = std::numbers::log10e / excess;
    est.a = std::log10(static_cast<double>(n)) + est.b * mc;
    return est;
}

GREstimate estimate_gr(const Catalog& catalog, double mc) {
    std::vector<double> mags;
    mags.reserve(catalog.size());
    for (const auto& e : catalog) mags.push_back(e.magnitude);
    return estimate_gr(mags, mc);
}

std::vector<ExceedanceRow> exceedance_table(std::span<const double> magnitudes, double mc, double bin) {
    if (!(bin > 0.0)) throw ConfigError("exceedance bin width must be positive");
    std::vector<double> sorted(magnitudes.begin(), magnitudes.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<ExceedanceRow> rows;
    if (sorted.empty()) return rows;
    for (int i = 0;; ++i) {
        const double m = mc + i * bin;
        if (m > sorted.back() + 1e-12) break;
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), m - 1e-12);
        rows.push_back({m, static_cast<std::size_t>(sorted.end() - it)});
    }
    return rows;
}

}  // namespace seiscontrol
