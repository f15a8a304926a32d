#pragma once

#include "seiscontrol/calendar.hpp"
#include "seiscontrol/catalog.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace seiscontrol {

struct CatalogHeader {
    std::uint64_t seed = 0;
    std::uint64_t run = 0;
    GRParams gr;
    std::string grid_hash;
    YearMonth epoch;
};

/// Catalog file layout:
///
///   # seiscontrol catalog v1
///   # seed=<u64> run=<u64>
///   # gr a=<a> b=<b> mc=<mc> mmax=<mmax>
///   # grid=<hex>
///   # epoch=<YYYY-MM>
///   time_iso,t_hr,x_km,y_km,magnitude
///   1991-12-03T10:22:01.123,229187.4,12.3,20.1,1.42
///
/// Numbers use the shortest representation that round-trips.
void write_catalog(std::ostream& out, const Catalog& catalog, const CatalogHeader& header);
void write_catalog(const std::filesystem::path& path, const Catalog& catalog, const CatalogHeader& header);

struct CatalogFile {
    CatalogHeader header;
    Catalog events;  // cell indices are not stored; read back as -1
};

/// Parses a catalog file. Header lines are optional; data rows need at
/// least the t_hr, x_km, y_km and magnitude columns.
CatalogFile read_catalog(std::istream& in);
CatalogFile read_catalog(const std::filesystem::path& path);

}  // namespace seiscontrol
