#include "seiscontrol/grid.hpp"

#include "seiscontrol/errors.hpp"
#include "seiscontrol/hash.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace seiscontrol {

RegionPredicate full_rectangle() {
    return [](Point) { return true; };
}

bool point_in_polygon(std::span<const Point> polygon, Point p) {
    bool inside = false;
    const std::size_t n = polygon.size();
    for (std::size_t a = 0, b = n - 1; a < n; b = a++) {
        const Point& pa = polygon[a];
        const Point& pb = polygon[b];
        if ((pa.y > p.y) != (pb.y > p.y)) {
            const double x_cross = pa.x + (p.y - pa.y) * (pb.x - pa.x) / (pb.y - pa.y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

RegionPredicate polygon_region(std::vector<Point> vertices) {
    if (vertices.size() < 3) throw ConfigError("active-region polygon needs at least 3 vertices");
    return [poly = std::move(vertices)](Point p) { return point_in_polygon(poly, p); };
}

RegionPredicate ellipse_region(Point centre, double semi_x, double semi_y) {
    if (!(semi_x > 0.0 && semi_y > 0.0)) throw ConfigError("ellipse semi-axes must be positive");
    return [=](Point p) {
        const double u = (p.x - centre.x) / semi_x;
        const double v = (p.y - centre.y) / semi_y;
        return u * u + v * v <= 1.0;
    };
}

ReservoirGrid::ReservoirGrid(const GridSpec& spec)
    : nx_(spec.nx), ny_(spec.ny), dx_(spec.dx), dy_(spec.dy), thickness_(spec.thickness) {
    if (nx_ < 3 || ny_ < 3) throw ConfigError(fmt::format("grid must be at least 3x3, got {}x{}", nx_, ny_));
    if (!(dx_ > 0.0 && dy_ > 0.0 && thickness_ > 0.0))
        throw ConfigError("grid cell sizes and thickness must be positive");

    const RegionPredicate region = spec.region ? spec.region : full_rectangle();
    index_.assign(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_), -1);
    for (int j = 0; j < ny_; ++j) {
        for (int i = 0; i < nx_; ++i) {
            const Point c{(i + 0.5) * dx_, (j + 0.5) * dy_};
            if (region(c)) {
                index_[static_cast<std::size_t>(j * nx_ + i)] = static_cast<int>(cells_.size());
                cells_.push_back({i, j});
            }
        }
    }
    if (cells_.empty()) throw ConfigError("active region contains no grid cells");

    neighbours_.resize(cells_.size());
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        const auto [i, j] = cells_[k];
        neighbours_[k] = {active_index(i - 1, j), active_index(i + 1, j), active_index(i, j - 1),
                          active_index(i, j + 1)};
    }

    std::string desc = fmt::format("{} {} {:.17g} {:.17g} {:.17g} ", nx_, ny_, dx_, dy_, thickness_);
    desc.reserve(desc.size() + index_.size());
    for (int v : index_) desc.push_back(v >= 0 ? '1' : '0');
    fingerprint_ = sha256_hex(desc).substr(0, 16);
}

int ReservoirGrid::active_index(int i, int j) const {
    if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return -1;
    return index_[static_cast<std::size_t>(j * nx_ + i)];
}

Point ReservoirGrid::centre(int k) const {
    const CellIndex c = cell(k);
    return {(c.i + 0.5) * dx_, (c.j + 0.5) * dy_};
}

int ReservoirGrid::locate(Point p) const {
    if (p.x < 0.0 || p.y < 0.0) return -1;
    const int i = static_cast<int>(std::floor(p.x / dx_));
    const int j = static_cast<int>(std::floor(p.y / dy_));
    return active_index(i, j);
}

ScalarField ScalarField::constant(const ReservoirGrid& grid, units::Unit unit, double value) {
    return ScalarField{unit, std::vector<double>(static_cast<std::size_t>(grid.active_count()), value)};
}

void require_same_grid(const ReservoirGrid& grid, const ScalarField& field, const char* what) {
    if (field.size() != static_cast<std::size_t>(grid.active_count()))
        throw ConfigError(fmt::format("{} has {} values but the grid has {} active cells", what, field.size(),
                                      grid.active_count()));
}

double integrate(const ReservoirGrid& grid, std::span<const double> values) {
    if (values.size() != static_cast<std::size_t>(grid.active_count()))
        throw ConfigError("field size does not match the grid");
    return std::accumulate(values.begin(), values.end(), 0.0) * grid.cell_volume();
}

double integrate(const ReservoirGrid& grid, const ScalarField& field) { return integrate(grid, field.values); }

}  // namespace seiscontrol
