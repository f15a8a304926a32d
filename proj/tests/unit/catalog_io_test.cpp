#include "seiscontrol/catalog_io.hpp"
#include "seiscontrol/errors.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace seiscontrol;

TEST(CatalogIo, RoundTripIsExact) {
    Catalog c;
    Rng rng = make_stream(1, 0, 0);
    for (int i = 0; i < 50; ++i)
        c.push_back({i * 13.37 + uniform01(rng), i % 5, {uniform01(rng) * 40.0, uniform01(rng) * 50.0}, 1.0 + 2.6 * uniform01(rng)});
    const CatalogHeader h{99, 3, GRParams{4.08, 0.97, 1.0, 3.6}, "abcdef0123456789", {1965, 10}};
    std::stringstream ss;
    write_catalog(ss, c, h);
    const CatalogFile back = read_catalog(ss);
    EXPECT_EQ(back.header.seed, 99u);
    EXPECT_EQ(back.header.run, 3u);
    EXPECT_EQ(back.header.grid_hash, "abcdef0123456789");
    EXPECT_EQ(back.header.epoch, (YearMonth{1965, 10}));
    EXPECT_DOUBLE_EQ(back.header.gr.b, 0.97);
    ASSERT_EQ(back.events.size(), c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        EXPECT_EQ(back.events[i].t, c[i].t);
        EXPECT_EQ(back.events[i].location.x, c[i].location.x);
        EXPECT_EQ(back.events[i].location.y, c[i].location.y);
        EXPECT_EQ(back.events[i].magnitude, c[i].magnitude);
        EXPECT_EQ(back.events[i].cell, -1);
    }
}

TEST(CatalogIo, HeaderlessAndReorderedColumns) {
    std::istringstream in("magnitude y_km x_km t_hr\n1.5 2 3 4\n2.5 6 7 8\n");
    const CatalogFile f = read_catalog(in);
    ASSERT_EQ(f.events.size(), 2u);
    EXPECT_DOUBLE_EQ(f.events[1].t, 8.0);
    EXPECT_DOUBLE_EQ(f.events[1].location.x, 7.0);
    EXPECT_DOUBLE_EQ(f.events[1].magnitude, 2.5);
}

TEST(CatalogIo, ReportsMalformedInput) {
    std::istringstream no_cols("time,value\n1,2\n");
    EXPECT_THROW(read_catalog(no_cols), ConfigError);
    std::istringstream short_row("t_hr,x_km,y_km,magnitude\n1,2,3\n");
    EXPECT_THROW(read_catalog(short_row), ConfigError);
    std::istringstream bad_number("t_hr,x_km,y_km,magnitude\n1,2,3,big\n");
    EXPECT_THROW(read_catalog(bad_number), ConfigError);
    std::istringstream bad_header("# seed=minus\nt_hr,x_km,y_km,magnitude\n");
    EXPECT_THROW(read_catalog(bad_header), ConfigError);
    EXPECT_THROW(read_catalog(std::filesystem::path("/nonexistent/catalog.csv")), IoError);
}

TEST(CatalogIo, EmptyCatalogReadsAsEmpty) {
    std::istringstream in("t_hr,x_km,y_km,magnitude\n");
    EXPECT_TRUE(read_catalog(in).events.empty());
}
