#pragma once

#include "seiscontrol/calendar.hpp"
#include "seiscontrol/grid.hpp"
#include "seiscontrol/wells.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace seiscontrol {

/// Monthly scalar series, e.g. the total extraction f(t) in m^3/month.
struct MonthlySeries {
    YearMonth start;
    std::vector<double> values;

    int months() const { return static_cast<int>(values.size()); }
    /// Value of month `m` (0 = start), held flat outside the covered range.
    double at(int m) const;
};

/// Everything a scenario needs about the reservoir.
struct Dataset {
    GridSpec grid_spec;
    std::vector<Point> outline;     // active-region polygon, km
    ReservoirGrid grid;
    std::vector<WellSpec> well_specs;
    std::vector<double> shares;     // fraction of f(t) produced by each well
    WellSet wells;
    ScalarField density;            // d(x), 1/km^3, integrates to 1
    MonthlySeries extraction;       // f(t) >= 0, m^3/month

    /// Q_s(t) = -f(t) * share_i for every month of the extraction history.
    MonthlyWellProfile static_profile() const;
};

/// Builds a Dataset from its parts, validating shares and normalizing the
/// density so that sum(d * cell_volume) == 1.
Dataset assemble_dataset(GridSpec spec, std::vector<Point> outline, std::vector<WellSpec> wells,
                         std::vector<double> shares, std::vector<double> raw_density, MonthlySeries extraction);

/// Rescales `values` so that sum(values) * cell_volume == 1.
void normalize_density(const ReservoirGrid& grid, std::vector<double>& values);

struct SynthOptions {
    int nx = 40;
    int ny = 50;
    double dx = 1.0;             // km
    double dy = 1.0;             // km
    double thickness = 0.002;    // km
    int n_wells = 29;
    double peak_extraction = 1.2e7;  // m^3/month
    double seasonal_amplitude = 0.03;  // relative winter/summer swing of f(t)
    double share_spread = 0.0;       // well shares drawn from 1 +- spread/2, then normalized
    YearMonth start{1965, 10};
    YearMonth end{2023, 1};          // inclusive
};

/// Deterministic Groningen-like dataset: irregular outline, clustered wells,
/// Gaussian-mixture seismicity density and a ramp-plateau-decline
/// extraction history. Identical seeds give bit-identical datasets.
Dataset synth_groningen(std::uint64_t seed, const SynthOptions& options = {});

/// Shape of the synthetic extraction history at a decimal year, relative to
/// its peak (before seasonal modulation and noise).
double extraction_shape(double decimal_year);

}  // namespace seiscontrol
