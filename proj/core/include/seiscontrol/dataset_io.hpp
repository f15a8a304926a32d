#pragma once

#include "seiscontrol/synthetic.hpp"

#include <filesystem>
#include <vector>

namespace seiscontrol {

// Plain-text dataset tables (comma separated, one header row, '#' comments):
//
//   outline.csv   x_km,y_km                                  active-region polygon
//   wells.csv     id,x_km,y_km,q_min,q_max,role[,share]      bounds in m^3/month
//   history.csv   month,total_m3_per_month                   YYYY-MM, f(t) >= 0
//   density.csv   i,j,d                                      one row per active cell
//
// A missing `share` column spreads f(t) evenly over the wells.

std::vector<Point> read_outline(const std::filesystem::path& path);
void write_outline(const std::filesystem::path& path, const std::vector<Point>& outline);

struct WellTable {
    std::vector<WellSpec> wells;
    std::vector<double> shares;  // empty if the table had no share column
};
WellTable read_wells(const std::filesystem::path& path);
void write_wells(const std::filesystem::path& path, const std::vector<WellSpec>& wells, const std::vector<double>& shares);

MonthlySeries read_history(const std::filesystem::path& path);
void write_history(const std::filesystem::path& path, const MonthlySeries& history);

/// Returns one value per active cell of `grid`; cells missing from the file are zero.
std::vector<double> read_density(const std::filesystem::path& path, const ReservoirGrid& grid);
void write_density(const std::filesystem::path& path, const ReservoirGrid& grid, const ScalarField& density);

struct DatasetFiles {
    std::filesystem::path outline;  // optional: empty selects the full rectangle
    std::filesystem::path wells;
    std::filesystem::path history;
    std::filesystem::path density;  // optional: empty selects a uniform density
};

Dataset load_dataset(const GridSpec& spec, const DatasetFiles& files);

/// Writes outline.csv, wells.csv, history.csv and density.csv into `dir`.
DatasetFiles write_dataset(const std::filesystem::path& dir, const Dataset& dataset);

}  // namespace seiscontrol
