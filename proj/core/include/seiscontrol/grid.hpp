#pragma once

#include "seiscontrol/units.hpp"

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace seiscontrol {

struct Point {
    double x = 0.0;  // km
    double y = 0.0;  // km
};

/// Predicate selecting the reservoir region; evaluated at cell centres.
using RegionPredicate = std::function<bool(Point)>;

RegionPredicate full_rectangle();
RegionPredicate polygon_region(std::vector<Point> vertices);
RegionPredicate ellipse_region(Point centre, double semi_x, double semi_y);

/// Even-odd ray casting test.
bool point_in_polygon(std::span<const Point> polygon, Point p);

struct GridSpec {
    int nx = 0;
    int ny = 0;
    double dx = 1.0;         // km
    double dy = 1.0;         // km
    double thickness = 0.1;  // km
    RegionPredicate region;  // empty means the full rectangle
};

struct CellIndex {
    int i = 0;
    int j = 0;
};

/// Masked structured 2D grid of a depth-averaged reservoir. Cells are
/// addressed either by (i, j) or by a compact "active index" in [0, active_count).
/// Immutable after construction.
class ReservoirGrid {
public:
    /// Neighbour slots in `neighbours()`; -1 marks a boundary face.
    enum Side { West = 0, East = 1, South = 2, North = 3 };

    explicit ReservoirGrid(const GridSpec& spec);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double dx() const { return dx_; }
    double dy() const { return dy_; }
    double thickness() const { return thickness_; }
    double cell_volume() const { return dx_ * dy_ * thickness_; }
    double total_volume() const { return static_cast<double>(active_count()) * cell_volume(); }
    int active_count() const { return static_cast<int>(cells_.size()); }

    /// -1 when (i, j) is outside the grid or inactive.
    int active_index(int i, int j) const;
    bool is_active(int i, int j) const { return active_index(i, j) >= 0; }

    CellIndex cell(int k) const { return cells_[static_cast<std::size_t>(k)]; }
    Point centre(int k) const;

    /// Active index of the cell containing `p`, or -1.
    int locate(Point p) const;

    const std::array<int, 4>& neighbours(int k) const { return neighbours_[static_cast<std::size_t>(k)]; }

    /// Hex digest of the geometry and mask, written into catalog headers.
    const std::string& fingerprint() const { return fingerprint_; }

private:
    int nx_;
    int ny_;
    double dx_;
    double dy_;
    double thickness_;
    std::vector<int> index_;  // nx*ny, row-major in j
    std::vector<CellIndex> cells_;
    std::vector<std::array<int, 4>> neighbours_;
    std::string fingerprint_;
};

/// One value per active cell plus a unit tag.
struct ScalarField {
    units::Unit unit = units::Unit::Dimensionless;
    std::vector<double> values;

    static ScalarField constant(const ReservoirGrid& grid, units::Unit unit, double value);

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t k) { return values[k]; }
    double operator[](std::size_t k) const { return values[k]; }
};

/// sum(value * cell_volume) over active cells. Throws ConfigError on size mismatch.
double integrate(const ReservoirGrid& grid, const ScalarField& field);
double integrate(const ReservoirGrid& grid, std::span<const double> values);

void require_same_grid(const ReservoirGrid& grid, const ScalarField& field, const char* what);

}  // namespace seiscontrol
