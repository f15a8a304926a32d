#pragma once

#include "seiscontrol/calendar.hpp"
#include "seiscontrol/grid.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace seiscontrol {

enum class WellRole { Producer, Injector, Both };

std::string_view to_string(WellRole role);
WellRole parse_well_role(std::string_view text);

/// Well description as read from a well table, before grid resolution.
struct WellSpec {
    std::string id;
    Point location;              // km
    double q_min = -1.0e6;       // m^3/month
    double q_max = 0.0;          // m^3/month
    WellRole role = WellRole::Both;
    double footprint_radius = 0.0;  // km; 0 selects the single containing cell
};

struct Well {
    std::string id;
    Point location;
    std::vector<int> footprint;  // active cell indices
    double q_min = 0.0;
    double q_max = 0.0;
    WellRole role = WellRole::Both;
};

/// Monthly per-well flux samples in m^3/month, `values[month][well]`.
struct MonthlyWellProfile {
    YearMonth start;
    std::vector<std::vector<double>> values;

    int months() const { return static_cast<int>(values.size()); }
    /// Clamps `month` to the available range (the profile is held flat outside it).
    std::span<const double> at(int month) const;
};

/// Wells resolved onto a grid. Each footprint is a non-empty list of active
/// cells; the source indicator of well i is 1/V_i* on its footprint.
class WellSet {
public:
    WellSet() = default;

    /// Throws ConfigError if a footprint touches an inactive cell or the bounds are inverted.
    WellSet(const ReservoirGrid& grid, std::span<const WellSpec> specs);

    std::size_t size() const { return wells_.size(); }
    const Well& operator[](std::size_t i) const { return wells_[i]; }
    const std::vector<Well>& wells() const { return wells_; }

    double footprint_volume(std::size_t i) const { return footprint_volumes_[i]; }

    std::vector<double> lower_bounds() const;
    std::vector<double> upper_bounds() const;

    /// Copy with every well's bounds replaced.
    WellSet with_bounds(double q_min, double q_max) const;

private:
    std::vector<Well> wells_;
    std::vector<double> footprint_volumes_;
};

/// Volumetric source density s(x) = sum_i B_i(x) Q_i in km^3/(km^3 hr).
/// `flux_m3_per_month` holds one entry per well.
ScalarField source_field(const ReservoirGrid& grid, const WellSet& wells, std::span<const double> flux_m3_per_month);

/// In-place variant used by the time loop.
void source_field(const ReservoirGrid& grid, const WellSet& wells, std::span<const double> flux_m3_per_month,
                  ScalarField& out);

}  // namespace seiscontrol
