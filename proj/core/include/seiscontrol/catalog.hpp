#pragma once

#include "seiscontrol/grid.hpp"
#include "seiscontrol/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace seiscontrol {

/// Truncated Gutenberg-Richter law on [mc, mmax].
struct GRParams {
    double a = 4.08;
    double b = 0.97;
    double mc = 1.0;
    double mmax = 3.6;

    void validate() const;
};

struct SeismicEvent {
    double t = 0.0;  // hr since the run epoch
    int cell = -1;   // active cell index
    Point location;  // km
    double magnitude = 0.0;
};

using Catalog = std::vector<SeismicEvent>;

/// Intensity on [t1, t2]: endpoint fields in events/(km^3 hr) and their
/// domain totals. Lambda(t) is taken linear between the endpoints.
struct IntensityWindow {
    double t1 = 0.0;
    double t2 = 0.0;
    ScalarField r1;
    ScalarField r2;
    double lambda1 = 0.0;  // events/hr
    double lambda2 = 0.0;

    /// Converts both fields to per-hour and computes the totals.
    static IntensityWindow make(const ReservoirGrid& grid, double t1, double t2, ScalarField r1, ScalarField r2);

    double duration() const { return t2 - t1; }
    /// Expected count: trapezoid of the linear total rate.
    double expected_count() const { return 0.5 * (lambda1 + lambda2) * (t2 - t1); }
};

/// Field converted to events/(km^3 hr); accepts per-year or per-hour tags.
ScalarField to_per_hour(ScalarField field);

/// Lambda = sum(R * cell_volume) in events/hr. Throws DomainError on a negative value.
double total_rate(const ReservoirGrid& grid, const ScalarField& intensity);

std::int64_t draw_event_count(const IntensityWindow& window, Rng& rng);

/// Inverse of the quadratic cumulative intensity for a uniform variate u in [0, 1].
double event_time_from_uniform(const IntensityWindow& window, double u);
std::vector<double> draw_event_times(const IntensityWindow& window, std::int64_t count, Rng& rng);

struct EventLocation {
    int cell = -1;
    Point point;
};

/// Thinning: proposes a uniformly random point of the active area and
/// accepts it with probability R(cell) / max(R). Throws DomainError if the
/// field is identically zero or negative somewhere.
EventLocation draw_location(const ReservoirGrid& grid, std::span<const double> intensity, Rng& rng);

double magnitude_from_uniform(const GRParams& gr, double u);
double draw_magnitude(const GRParams& gr, Rng& rng);

/// Draws the events of one window and appends them (time-sorted) to `out`.
void generate_window_events(const ReservoirGrid& grid, const IntensityWindow& window, const GRParams& gr, Rng& rng,
                            Catalog& out);

/// Generates a catalog over contiguous windows; window w draws from
/// make_stream(seed, run, w).
Catalog generate_catalog(const ReservoirGrid& grid, std::span<const IntensityWindow> windows, const GRParams& gr,
                         std::uint64_t seed, std::uint64_t run = 0);

struct GREstimate {
    double a = 0.0;
    double b = 0.0;
    std::size_t count = 0;  // events with M >= mc
};

/// Aki maximum-likelihood b-value on magnitudes >= mc:
///   b = log10(e) / (mean(M) - mc),  a = log10(N) + b * mc.
/// Throws InsufficientDataError below 30 events, DomainError if mean(M) == mc.
GREstimate estimate_gr(std::span<const double> magnitudes, double mc);
GREstimate estimate_gr(const Catalog& catalog, double mc);

struct ExceedanceRow {
    double magnitude;
    std::size_t count;  // events with M >= magnitude
};

/// Cumulative magnitude-frequency table from mc upward in `bin` steps.
std::vector<ExceedanceRow> exceedance_table(std::span<const double> magnitudes, double mc, double bin = 0.1);

}  // namespace seiscontrol
