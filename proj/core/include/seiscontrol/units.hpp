#pragma once

// Canonical units used throughout the library:
//   length km, time hr, pressure MPa, volume km^3.
// Well fluxes are exchanged with the outside world in m^3/month and
// seismicity densities in events/(km^3 * year); both are converted here.

#include <string>
#include <string_view>

namespace seiscontrol::units {

inline constexpr double kHoursPerMonth = 730.5;  // 365.25 d / 12
inline constexpr double kMonthsPerYear = 12.0;
inline constexpr double kHoursPerYear = kHoursPerMonth * kMonthsPerYear;
inline constexpr double kCubicMetresPerKm3 = 1.0e9;

/// m^3/month -> km^3/hr multiplier.
inline constexpr double kFluxToCanonical = 1.0 / (kCubicMetresPerKm3 * kHoursPerMonth);

constexpr double flux_to_canonical(double m3_per_month) { return m3_per_month * kFluxToCanonical; }
constexpr double flux_from_canonical(double km3_per_hr) { return km3_per_hr / kFluxToCanonical; }

constexpr double per_year_to_per_hour(double v) { return v / kHoursPerYear; }
constexpr double per_hour_to_per_year(double v) { return v * kHoursPerYear; }

constexpr double months_to_hours(double months) { return months * kHoursPerMonth; }
constexpr double hours_to_months(double hours) { return hours / kHoursPerMonth; }

/// Unit tag carried by every cell field.
enum class Unit {
    Dimensionless,
    MPa,
    MPaPerHour,
    PerMPa,
    PerHour,              // volumetric source density km^3/(km^3 hr)
    PerKm3,               // spatial density d(x)
    EventsPerKm3PerYear,
    EventsPerKm3PerHour,
};

std::string_view to_string(Unit u);

}  // namespace seiscontrol::units
