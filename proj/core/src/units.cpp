#include "seiscontrol/units.hpp"

#include "seiscontrol/calendar.hpp"
#include "seiscontrol/errors.hpp"

#include <charconv>
#include <chrono>
#include <cmath>

#include <fmt/format.h>

namespace seiscontrol {

namespace units {

std::string_view to_string(Unit u) {
    switch (u) {
        case Unit::Dimensionless: return "1";
        case Unit::MPa: return "MPa";
        case Unit::MPaPerHour: return "MPa/hr";
        case Unit::PerMPa: return "1/MPa";
        case Unit::PerHour: return "1/hr";
        case Unit::PerKm3: return "1/km3";
        case Unit::EventsPerKm3PerYear: return "events/(km3*yr)";
        case Unit::EventsPerKm3PerHour: return "events/(km3*hr)";
    }
    return "?";
}

}  // namespace units

YearMonth YearMonth::plus_months(int m) const {
    int idx = year * 12 + (month - 1) + m;
    // floor division so negative offsets work
    int y = idx >= 0 ? idx / 12 : -((-idx + 11) / 12);
    return YearMonth{y, idx - y * 12 + 1};
}

std::string YearMonth::to_string() const { return fmt::format("{:04d}-{:02d}", year, month); }

YearMonth parse_year_month(std::string_view text) {
    auto bad = [&] { return ConfigError(fmt::format("expected YYYY-MM, got '{}'", text)); };
    if (text.size() != 7 || text[4] != '-') throw bad();
    YearMonth ym{};
    auto r1 = std::from_chars(text.data(), text.data() + 4, ym.year);
    auto r2 = std::from_chars(text.data() + 5, text.data() + 7, ym.month);
    if (r1.ec != std::errc{} || r1.ptr != text.data() + 4 || r2.ec != std::errc{} || r2.ptr != text.data() + 7)
        throw bad();
    if (ym.month < 1 || ym.month > 12) throw bad();
    return ym;
}

std::string iso_timestamp(const YearMonth& epoch, double hours) {
    using namespace std::chrono;
    const sys_days day0 = year{epoch.year} / epoch.month / 1;
    const auto ms = static_cast<long long>(std::llround(hours * 3.6e6));
    const sys_time<milliseconds> tp = day0 + milliseconds{ms};
    const sys_days d = floor<days>(tp);
    const year_month_day ymd{d};
    const hh_mm_ss<milliseconds> tod{tp - d};
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}.{:03d}", static_cast<int>(ymd.year()),
                       static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), tod.hours().count(),
                       tod.minutes().count(), tod.seconds().count(), tod.subseconds().count());
}

double decimal_year(const YearMonth& epoch, double hours) {
    return epoch.year + (epoch.month - 1) / 12.0 + hours / units::kHoursPerYear;
}

}  // namespace seiscontrol
