#include "seiscontrol/wells.hpp"

#include "seiscontrol/errors.hpp"
#include "seiscontrol/units.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace seiscontrol {

std::string_view to_string(WellRole role) {
    switch (role) {
        case WellRole::Producer: return "producer";
        case WellRole::Injector: return "injector";
        case WellRole::Both: return "both";
    }
    return "both";
}

WellRole parse_well_role(std::string_view text) {
    if (text == "producer") return WellRole::Producer;
    if (text == "injector") return WellRole::Injector;
    if (text == "both") return WellRole::Both;
    throw ConfigError(fmt::format("unknown well role '{}'", text));
}

std::span<const double> MonthlyWellProfile::at(int month) const {
    if (values.empty()) return {};
    const int m = std::clamp(month, 0, months() - 1);
    return values[static_cast<std::size_t>(m)];
}

WellSet::WellSet(const ReservoirGrid& grid, std::span<const WellSpec> specs) {
    wells_.reserve(specs.size());
    for (const WellSpec& s : specs) {
        if (!(s.q_min < s.q_max))
            throw ConfigError(fmt::format("well '{}': lower bound {} must be below upper bound {}", s.id, s.q_min,
                                          s.q_max));
        Well w{s.id, s.location, {}, s.q_min, s.q_max, s.role};
        const int centre = grid.locate(s.location);
        if (centre < 0)
            throw ConfigError(fmt::format("well '{}' at ({}, {}) km lies outside the active region", s.id,
                                          s.location.x, s.location.y));
        if (s.footprint_radius <= 0.0) {
            w.footprint.push_back(centre);
        } else {
            // every cell whose centre lies within the radius; all must be active
            const int ri = static_cast<int>(std::ceil(s.footprint_radius / grid.dx()));
            const int rj = static_cast<int>(std::ceil(s.footprint_radius / grid.dy()));
            const CellIndex c = grid.cell(centre);
            for (int j = c.j - rj; j <= c.j + rj; ++j) {
                for (int i = c.i - ri; i <= c.i + ri; ++i) {
                    const Point p{(i + 0.5) * grid.dx(), (j + 0.5) * grid.dy()};
                    if (std::hypot(p.x - s.location.x, p.y - s.location.y) > s.footprint_radius) continue;
                    const int k = grid.active_index(i, j);
                    if (k < 0)
                        throw ConfigError(fmt::format("well '{}' footprint reaches outside the active region", s.id));
                    w.footprint.push_back(k);
                }
            }
            if (w.footprint.empty()) w.footprint.push_back(centre);
        }
        footprint_volumes_.push_back(static_cast<double>(w.footprint.size()) * grid.cell_volume());
        wells_.push_back(std::move(w));
    }
}

std::vector<double> WellSet::lower_bounds() const {
    std::vector<double> out;
    out.reserve(wells_.size());
    for (const Well& w : wells_) out.push_back(w.q_min);
    return out;
}

std::vector<double> WellSet::upper_bounds() const {
    std::vector<double> out;
    out.reserve(wells_.size());
    for (const Well& w : wells_) out.push_back(w.q_max);
    return out;
}

WellSet WellSet::with_bounds(double q_min, double q_max) const {
    if (!(q_min < q_max)) throw ConfigError(fmt::format("saturation bounds [{}, {}] are inverted", q_min, q_max));
    WellSet copy = *this;
    for (Well& w : copy.wells_) {
        w.q_min = q_min;
        w.q_max = q_max;
    }
    return copy;
}

void source_field(const ReservoirGrid& grid, const WellSet& wells, std::span<const double> flux_m3_per_month,
                  ScalarField& out) {
    if (flux_m3_per_month.size() != wells.size())
        throw ConfigError(
            fmt::format("flux vector has {} entries for {} wells", flux_m3_per_month.size(), wells.size()));
    out.unit = units::Unit::PerHour;
    out.values.assign(static_cast<std::size_t>(grid.active_count()), 0.0);
    for (std::size_t i = 0; i < wells.size(); ++i) {
        const double q = units::flux_to_canonical(flux_m3_per_month[i]);
        const double density = q / wells.footprint_volume(i);
        for (int k : wells[i].footprint) out.values[static_cast<std::size_t>(k)] += density;
    }
}

ScalarField source_field(const ReservoirGrid& grid, const WellSet& wells, std::span<const double> flux_m3_per_month) {
    ScalarField out;
    source_field(grid, wells, flux_m3_per_month, out);
    return out;
}

}  // namespace seiscontrol
