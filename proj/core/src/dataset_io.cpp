#include "seiscontrol/dataset_io.hpp"

#include "seiscontrol/errors.hpp"
#include "seiscontrol/table.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>

#include <fmt/format.h>

namespace seiscontrol {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

/// Calls `row` for every data line after the header; returns the header cells.
std::vector<std::string> for_each_row(const std::filesystem::path& path,
                                      const std::function<void(const std::vector<std::string>&, std::size_t)>& row) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot read '{}'", path.string()));
    std::vector<std::string> header;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto cells = split_delimited(t);
        if (header.empty()) {
            header = std::move(cells);
            continue;
        }
        try {
            row(cells, lineno);
        } catch (const ConfigError& e) {
            throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
        }
    }
    if (header.empty()) throw ConfigError(fmt::format("'{}' has no header row", path.string()));
    return header;
}

int column(const std::vector<std::string>& header, std::string_view name) {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
    return out;
}

const std::string& cell_at(const std::vector<std::string>& cells, std::size_t i, std::size_t lineno) {
    if (i >= cells.size()) throw ConfigError(fmt::format("line {}: missing column {}", lineno, i + 1));
    return cells[i];
}

}  // namespace

std::vector<std::string> split_delimited(std::string_view line) {
    std::vector<std::string> cells;
    if (line.find(',') != std::string_view::npos) {
        std::size_t pos = 0;
        for (;;) {
            const auto next = line.find(',', pos);
            cells.emplace_back(trim(line.substr(pos, next - pos)));
            if (next == std::string_view::npos) break;
            pos = next + 1;
        }
    } else {
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            const auto start = pos;
            while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            if (pos > start) cells.emplace_back(line.substr(start, pos - start));
        }
    }
    return cells;
}

double parse_double(std::string_view text, std::size_t lineno) {
    text = trim(text);
    double v = 0.0;
    const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
    if (r.ec != std::errc{} || r.ptr != text.data() + text.size())
        throw ConfigError(fmt::format("line {}: '{}' is not a number", lineno, text));
    return v;
}

long long parse_int(std::string_view text, std::size_t lineno) {
    text = trim(text);
    long long v = 0;
    const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
    if (r.ec != std::errc{} || r.ptr != text.data() + text.size())
        throw ConfigError(fmt::format("line {}: '{}' is not an integer", lineno, text));
    return v;
}

std::vector<Point> read_outline(const std::filesystem::path& path) {
    std::vector<Point> pts;
    for_each_row(path, [&](const auto& c, std::size_t ln) {
        pts.push_back({parse_double(cell_at(c, 0, ln), ln), parse_double(cell_at(c, 1, ln), ln)});
    });
    return pts;
}

void write_outline(const std::filesystem::path& path, const std::vector<Point>& outline) {
    auto out = open_out(path);
    out << "x_km,y_km\n";
    for (const Point& p : outline) out << fmt::format("{},{}\n", p.x, p.y);
}

WellTable read_wells(const std::filesystem::path& path) {
    WellTable table;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> lines;
    header = for_each_row(path, [&](const auto& c, std::size_t ln) {
        rows.push_back(c);
        lines.push_back(ln);
    });
    const int c_id = column(header, "id"), c_x = column(header, "x_km"), c_y = column(header, "y_km");
    const int c_lo = column(header, "q_min"), c_hi = column(header, "q_max"), c_role = column(header, "role");
    const int c_share = column(header, "share");
    if (c_id < 0 || c_x < 0 || c_y < 0 || c_lo < 0 || c_hi < 0 || c_role < 0)
        throw ConfigError(fmt::format("'{}' must have columns id,x_km,y_km,q_min,q_max,role", path.string()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& c = rows[r];
        const std::size_t ln = lines[r];
        auto at = [&](int col) -> const std::string& { return cell_at(c, static_cast<std::size_t>(col), ln); };
        WellSpec w;
        w.id = at(c_id);
        w.location = {parse_double(at(c_x), ln), parse_double(at(c_y), ln)};
        w.q_min = parse_double(at(c_lo), ln);
        w.q_max = parse_double(at(c_hi), ln);
        w.role = parse_well_role(at(c_role));
        table.wells.push_back(std::move(w));
        if (c_share >= 0) table.shares.push_back(parse_double(at(c_share), ln));
    }
    return table;
}

void write_wells(const std::filesystem::path& path, const std::vector<WellSpec>& wells, const std::vector<double>& shares) {
    auto out = open_out(path);
    out << "id,x_km,y_km,q_min,q_max,role,share\n";
    for (std::size_t i = 0; i < wells.size(); ++i) {
        const WellSpec& w = wells[i];
        out << fmt::format("{},{},{},{},{},{},{}\n", w.id, w.location.x, w.location.y, w.q_min, w.q_max,
                           to_string(w.role), i < shares.size() ? shares[i] : 0.0);
    }
}

MonthlySeries read_history(const std::filesystem::path& path) {
    MonthlySeries s;
    bool first = true;
    YearMonth expected{};
    for_each_row(path, [&](const auto& c, std::size_t ln) {
        const YearMonth ym = parse_year_month(cell_at(c, 0, ln));
        if (first) {
            s.start = ym;
            first = false;
        } else if (!(ym == expected)) {
            throw ConfigError(fmt::format("line {}: expected month {}, got {}", ln, expected.to_string(), ym.to_string()));
        }
        expected = ym.plus_months(1);
        s.values.push_back(parse_double(cell_at(c, 1, ln), ln));
    });
    if (s.values.empty()) throw ConfigError(fmt::format("'{}' has no rows", path.string()));
    return s;
}

void write_history(const std::filesystem::path& path, const MonthlySeries& history) {
    auto out = open_out(path);
    out << "month,total_m3_per_month\n";
    for (int m = 0; m < history.months(); ++m)
        out << fmt::format("{},{}\n", history.start.plus_months(m).to_string(), history.values[static_cast<std::size_t>(m)]);
}

std::vector<double> read_density(const std::filesystem::path& path, const ReservoirGrid& grid) {
    std::vector<double> d(static_cast<std::size_t>(grid.active_count()), 0.0);
    for_each_row(path, [&](const auto& c, std::size_t ln) {
        const auto i = static_cast<int>(parse_int(cell_at(c, 0, ln), ln));
        const auto j = static_cast<int>(parse_int(cell_at(c, 1, ln), ln));
        const int k = grid.active_index(i, j);
        if (k < 0) throw ConfigError(fmt::format("line {}: cell ({}, {}) is not active", ln, i, j));
        d[static_cast<std::size_t>(k)] = parse_double(cell_at(c, 2, ln), ln);
    });
    return d;
}

void write_density(const std::filesystem::path& path, const ReservoirGrid& grid, const ScalarField& density) {
    require_same_grid(grid, density, "density");
    auto out = open_out(path);
    out << "i,j,d\n";
    for (int k = 0; k < grid.active_count(); ++k) {
        const CellIndex c = grid.cell(k);
        out << fmt::format("{},{},{}\n", c.i, c.j, density[static_cast<std::size_t>(k)]);
    }
}

Dataset load_dataset(const GridSpec& spec, const DatasetFiles& files) {
    std::vector<Point> outline;
    if (!files.outline.empty()) outline = read_outline(files.outline);
    GridSpec s = spec;
    if (!outline.empty()) s.region = polygon_region(outline);
    const ReservoirGrid probe(s);
    WellTable wells = read_wells(files.wells);
    MonthlySeries history = read_history(files.history);
    std::vector<double> density = files.density.empty()
                                      ? std::vector<double>(static_cast<std::size_t>(probe.active_count()), 1.0)
                                      : read_density(files.density, probe);
    return assemble_dataset(spec, std::move(outline), std::move(wells.wells), std::move(wells.shares),
                            std::move(density), std::move(history));
}

DatasetFiles write_dataset(const std::filesystem::path& dir, const Dataset& ds) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
    DatasetFiles files{dir / "outline.csv", dir / "wells.csv", dir / "history.csv", dir / "density.csv"};
    write_outline(files.outline, ds.outline);
    write_wells(files.wells, ds.well_specs, ds.shares);
    write_history(files.history, ds.extraction);
    write_density(files.density, ds.grid, ds.density);
    return files;
}

}  // namespace seiscontrol
