#include "seiscontrol/synthetic.hpp"

#include "seiscontrol/errors.hpp"
#include "seiscontrol/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

namespace seiscontrol {

double MonthlySeries::at(int m) const {
    if (values.empty()) return 0.0;
    return values[static_cast<std::size_t>(std::clamp(m, 0, months() - 1))];
}

MonthlyWellProfile Dataset::static_profile() const {
    MonthlyWellProfile p;
    p.start = extraction.start;
    p.values.reserve(extraction.values.size());
    for (double f : extraction.values) {
        std::vector<double> row(shares.size());
        for (std::size_t i = 0; i < shares.size(); ++i) row[i] = -f * shares[i];
        p.values.push_back(std::move(row));
    }
    return p;
}

void normalize_density(const ReservoirGrid& grid, std::vector<double>& values) {
    if (values.size() != static_cast<std::size_t>(grid.active_count()))
        throw ConfigError(fmt::format("density has {} values for {} active cells", values.size(), grid.active_count()));
    if (std::any_of(values.begin(), values.end(), [](double v) { return !(v >= 0.0); }))
        throw ConfigError("density must be nonnegative and finite");
    const double total = integrate(grid, values);
    if (!(total > 0.0)) throw ConfigError("density integrates to zero");
    for (double& v : values) v /= total;
}

Dataset assemble_dataset(GridSpec spec, std::vector<Point> outline, std::vector<WellSpec> wells,
                         std::vector<double> shares, std::vector<double> raw_density, MonthlySeries extraction) {
    if (!outline.empty()) spec.region = polygon_region(outline);
    ReservoirGrid grid(spec);
    WellSet well_set(grid, wells);
    if (shares.empty()) shares.assign(wells.size(), wells.empty() ? 0.0 : 1.0 / static_cast<double>(wells.size()));
    if (shares.size() != wells.size())
        throw ConfigError(fmt::format("{} production shares for {} wells", shares.size(), wells.size()));
    if (std::any_of(shares.begin(), shares.end(), [](double s) { return !(s >= 0.0); }))
        throw ConfigError("production shares must be nonnegative");
    if (std::any_of(extraction.values.begin(), extraction.values.end(), [](double f) { return !(f >= 0.0); }))
        throw ConfigError("extraction history must be nonnegative (reported as produced volume)");
    normalize_density(grid, raw_density);
    ScalarField density{units::Unit::PerKm3, std::move(raw_density)};
    return Dataset{std::move(spec), std::move(outline), std::move(grid), std::move(wells), std::move(shares),
                   std::move(well_set), std::move(density), std::move(extraction)};
}

double extraction_shape(double y) {
    auto smooth = [](double x) {
        x = std::clamp(x, 0.0, 1.0);
        return x * x * (3.0 - 2.0 * x);
    };
    if (y < 1965.75) return 0.0;
    if (y < 1976.0) return 0.05 + 0.95 * smooth((y - 1965.75) / (1976.0 - 1965.75));
    if (y < 1990.0) return 1.0 - 0.45 * smooth((y - 1976.0) / 14.0);
    if (y < 2013.0) return 0.55 + 0.08 * std::sin(2.0 * std::numbers::pi * (y - 1990.0) / 23.0);
    // production caps after 2013: log-linear between yearly anchors
    static constexpr std::array<double, 11> caps{0.55, 0.46, 0.32, 0.30, 0.26, 0.21, 0.17, 0.09, 0.07, 0.05, 0.05};
    const double x = std::min(y - 2013.0, 9.999);
    const auto i = static_cast<std::size_t>(x);
    const double w = x - static_cast<double>(i);
    return std::exp((1.0 - w) * std::log(caps[i]) + w * std::log(caps[i + 1]));
}

namespace {

double normal01(Rng& rng) {
    // Box-Muller on the library's own uniform so the dataset does not depend
    // on a standard-library distribution implementation
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

Dataset synth_groningen(std::uint64_t seed, const SynthOptions& o) {
    if (o.n_wells < 2) throw ConfigError(fmt::format("synthetic dataset needs at least 2 wells, got {}", o.n_wells));
    if (!(o.peak_extraction >= 0.0)) throw ConfigError("peak_extraction must be non-negative");
    if (!(o.seasonal_amplitude >= 0.0 && o.seasonal_amplitude < 1.0))
        throw ConfigError(fmt::format("seasonal_amplitude must lie in [0, 1), got {}", o.seasonal_amplitude));
    if (!(o.share_spread >= 0.0 && o.share_spread < 2.0))
        throw ConfigError(fmt::format("share_spread must lie in [0, 2), got {}", o.share_spread));
    Rng rng = make_stream(seed, 0x47524F4EULL, 0);  // "GRON"
    const double lx = o.nx * o.dx;
    const double ly = o.ny * o.dy;
    const Point centre{0.5 * lx, 0.5 * ly};
    const double ax = 0.40 * lx;
    const double ay = 0.40 * ly;

    // irregular outline: ellipse with three seeded harmonics (|perturbation| <= 0.15)
    std::vector<Point> outline;
    const double ph2 = 2.0 * std::numbers::pi * uniform01(rng);
    const double ph3 = 2.0 * std::numbers::pi * uniform01(rng);
    const double ph5 = 2.0 * std::numbers::pi * uniform01(rng);
    constexpr int kVertices = 72;
    for (int v = 0; v < kVertices; ++v) {
        const double th = 2.0 * std::numbers::pi * v / kVertices;
        const double r = 1.0 + 0.07 * std::sin(2.0 * th + ph2) + 0.05 * std::sin(3.0 * th + ph3) +
                         0.03 * std::sin(5.0 * th + ph5);
        outline.push_back({centre.x + ax * r * std::cos(th), centre.y + ay * r * std::sin(th)});
    }

    GridSpec spec{o.nx, o.ny, o.dx, o.dy, o.thickness, polygon_region(outline)};
    const ReservoirGrid grid(spec);

    // wells: rejection-sampled in the inner 60% of the ellipse, snapped to
    // cell centres, at least 2.5 km apart
    std::vector<WellSpec> wells;
    const double min_spacing = 2.5 * std::max(o.dx, o.dy);
    int attempts = 0;
    while (static_cast<int>(wells.size()) < o.n_wells) {
        if (++attempts > 200000) throw ConfigError("could not place the requested number of wells");
        const double u = 2.0 * uniform01(rng) - 1.0;
        const double v = 2.0 * uniform01(rng) - 1.0;
        if (u * u + v * v > 1.0) continue;
        const Point raw{centre.x + 0.6 * ax * u, centre.y + 0.6 * ay * v};
        const int k = grid.locate(raw);
        if (k < 0) continue;
        const Point p = grid.centre(k);
        const bool crowded = std::any_of(wells.begin(), wells.end(), [&](const WellSpec& w) {
            return std::hypot(w.location.x - p.x, w.location.y - p.y) < min_spacing;
        });
        if (crowded) continue;
        WellSpec w;
        w.id = fmt::format("W{:02d}", wells.size() + 1);
        w.location = p;
        wells.push_back(std::move(w));
    }
    // alternate producer/injector along x so both groups cover the field
    {
        std::vector<std::size_t> order(wells.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return wells[a].location.x < wells[b].location.x ||
                   (wells[a].location.x == wells[b].location.x && wells[a].location.y < wells[b].location.y);
        });
        for (std::size_t r = 0; r < order.size(); ++r)
            wells[order[r]].role = (r % 2 == 0) ? WellRole::Producer : WellRole::Injector;
    }

    std::vector<double> shares(wells.size());
    for (double& s : shares) s = 1.0 + o.share_spread * (uniform01(rng) - 0.5);
    const double share_sum = std::accumulate(shares.begin(), shares.end(), 0.0);
    for (double& s : shares) s /= share_sum;

    // seismicity density: Gaussian blobs centred near randomly chosen wells
    // plus a small uniform floor
    struct Blob {
        Point c;
        double sigma;
        double weight;
    };
    std::vector<Blob> blobs;
    constexpr int kBlobs = 4;
    for (int b = 0; b < kBlobs; ++b) {
        const auto& anchor = wells[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(wells.size()))];
        const Point c{anchor.location.x + 1.5 * normal01(rng), anchor.location.y + 1.5 * normal01(rng)};
        blobs.push_back({c, 1.2 + 1.0 * uniform01(rng), 0.5 + uniform01(rng)});
    }
    std::vector<double> blob_mass(blobs.size(), 0.0);
    std::vector<std::vector<double>> blob_fields(blobs.size(), std::vector<double>(static_cast<std::size_t>(grid.active_count())));
    for (std::size_t b = 0; b < blobs.size(); ++b) {
        for (int k = 0; k < grid.active_count(); ++k) {
            const Point p = grid.centre(k);
            const double r2 = std::pow(p.x - blobs[b].c.x, 2) + std::pow(p.y - blobs[b].c.y, 2);
            const double g = std::exp(-0.5 * r2 / (blobs[b].sigma * blobs[b].sigma));
            blob_fields[b][static_cast<std::size_t>(k)] = g;
            blob_mass[b] += g;
        }
    }
    const double weight_sum =
        std::accumulate(blobs.begin(), blobs.end(), 0.0, [](double s, const Blob& b) { return s + b.weight; });
    constexpr double kFloor = 0.03;
    std::vector<double> density(static_cast<std::size_t>(grid.active_count()), kFloor / grid.active_count());
    for (std::size_t b = 0; b < blobs.size(); ++b) {
        const double scale = (1.0 - kFloor) * blobs[b].weight / weight_sum / blob_mass[b];
        for (std::size_t k = 0; k < density.size(); ++k) density[k] += scale * blob_fields[b][k];
    }

    // extraction history, m^3/month
    MonthlySeries history{o.start, {}};
    const int months = o.end.months_since(o.start) + 1;
    if (months <= 0) throw ConfigError("synthetic history end precedes its start");
    history.values.reserve(static_cast<std::size_t>(months));
    for (int m = 0; m < months; ++m) {
        const YearMonth ym = o.start.plus_months(m);
        const double y = ym.year + (ym.month - 0.5) / 12.0;
        const double seasonal = 1.0 + o.seasonal_amplitude * std::cos(2.0 * std::numbers::pi * (ym.month - 1) / 12.0);
        const double noise = std::clamp(1.0 + 0.03 * normal01(rng), 0.9, 1.1);
        history.values.push_back(o.peak_extraction * extraction_shape(y) * seasonal * noise / (1.0 + o.seasonal_amplitude));
    }

    spec.region = {};  // rebuilt from the outline by assemble_dataset
    return assemble_dataset(std::move(spec), std::move(outline), std::move(wells), std::move(shares),
                            std::move(density), std::move(history));
}

}  // namespace seiscontrol
