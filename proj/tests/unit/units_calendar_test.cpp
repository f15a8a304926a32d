#include "seiscontrol/calendar.hpp"
#include "seiscontrol/errors.hpp"
#include "seiscontrol/units.hpp"

#include <gtest/gtest.h>

using namespace seiscontrol;

TEST(Units, FluxConversionRoundTrips) {
    // 1e6 m^3/month = 1e-3 km^3 per 730.5 hr
    EXPECT_DOUBLE_EQ(units::flux_to_canonical(1.0e6), 1.0e-3 / 730.5);
    for (double q : {-1.0e6, -3.3e4, 0.0, 1.0, 2.5e7})
        EXPECT_NEAR(units::flux_from_canonical(units::flux_to_canonical(q)), q, 1e-9 * std::max(1.0, std::abs(q)));
}

TEST(Units, TimeAndRateConversions) {
    EXPECT_DOUBLE_EQ(units::kHoursPerYear, 8766.0);
    EXPECT_DOUBLE_EQ(units::months_to_hours(12.0), 8766.0);
    EXPECT_DOUBLE_EQ(units::hours_to_months(1461.0), 2.0);
    EXPECT_DOUBLE_EQ(units::per_year_to_per_hour(8766.0), 1.0);
    EXPECT_DOUBLE_EQ(units::per_hour_to_per_year(units::per_year_to_per_hour(4.11e-5)), 4.11e-5);
}

TEST(Calendar, MonthArithmetic) {
    const YearMonth a{1965, 10};
    EXPECT_EQ(a.plus_months(3), (YearMonth{1966, 1}));
    EXPECT_EQ(a.plus_months(-10), (YearMonth{1964, 12}));
    EXPECT_EQ((YearMonth{2023, 1}).months_since(a), 687);
    EXPECT_EQ((YearMonth{1991, 12}).months_since(a), 314);
    EXPECT_EQ(a.to_string(), "1965-10");
    EXPECT_EQ((YearMonth{2001, 3}).to_string(), "2001-03");
}

TEST(Calendar, ParsesAndRejects) {
    EXPECT_EQ(parse_year_month("1991-12"), (YearMonth{1991, 12}));
    for (const char* bad : {"", "1991", "1991-13", "1991-00", "91-12", "1991/12", "1991-1x"})
        EXPECT_THROW(parse_year_month(bad), ConfigError) << bad;
}

TEST(Calendar, TimestampsAndDecimalYears) {
    const YearMonth epoch{1965, 10};
    EXPECT_EQ(iso_timestamp(epoch, 0.0), "1965-10-01T00:00:00.000");
    EXPECT_EQ(iso_timestamp(epoch, 36.5), "1965-10-02T12:30:00.000");
    EXPECT_DOUBLE_EQ(decimal_year(epoch, 0.0), 1965.0 + 9.0 / 12.0);
    EXPECT_NEAR(decimal_year(epoch, units::months_to_hours(3.5)), 1966.0 + 0.5 / 12.0, 1e-12);
}
