#pragma once

#include <string>
#include <string_view>

namespace seiscontrol {

/// Calendar month, used for schedule boundaries and monthly series.
struct YearMonth {
    int year = 1965;
    int month = 10;  // 1..12

    /// Months elapsed since `origin` (may be negative).
    int months_since(const YearMonth& origin) const { return (year - origin.year) * 12 + (month - origin.month); }
    YearMonth plus_months(int m) const;
    std::string to_string() const;  // "YYYY-MM"

    friend bool operator==(const YearMonth&, const YearMonth&) = default;
};

/// Parses "YYYY-MM"; throws ConfigError on malformed input.
YearMonth parse_year_month(std::string_view text);

/// Model time is measured in hours from the first day of `epoch`, with
/// every month lasting exactly units::kHoursPerMonth. This renders such a
/// time as an ISO-8601 timestamp (millisecond resolution) by adding the
/// elapsed real time to the epoch's first day.
std::string iso_timestamp(const YearMonth& epoch, double hours);

/// Decimal year of a model time (epoch year + month offset + fraction).
double decimal_year(const YearMonth& epoch, double hours);

}  // namespace seiscontrol
