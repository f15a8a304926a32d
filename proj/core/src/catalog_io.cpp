#include "seiscontrol/catalog_io.hpp"

#include "seiscontrol/errors.hpp"
#include "seiscontrol/table.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace seiscontrol {

void write_catalog(std::ostream& out, const Catalog& catalog, const CatalogHeader& h) {
    out << "# seiscontrol catalog v1\n";
    out << fmt::format("# seed={} run={}\n", h.seed, h.run);
    out << fmt::format("# gr a={} b={} mc={} mmax={}\n", h.gr.a, h.gr.b, h.gr.mc, h.gr.mmax);
    out << fmt::format("# grid={}\n", h.grid_hash);
    out << fmt::format("# epoch={}\n", h.epoch.to_string());
    out << "time_iso,t_hr,x_km,y_km,magnitude\n";
    for (const SeismicEvent& e : catalog) {
        out << fmt::format("{},{},{},{},{}\n", iso_timestamp(h.epoch, e.t), e.t, e.location.x, e.location.y,
                           e.magnitude);
    }
}

void write_catalog(const std::filesystem::path& path, const Catalog& catalog, const CatalogHeader& header) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(fmt::format("cannot write catalog '{}'", path.string()));
    write_catalog(out, catalog, header);
    if (!out) throw IoError(fmt::format("failed writing catalog '{}'", path.string()));
}

namespace {

void parse_header_line(const std::string& line, CatalogHeader& h) {
    std::istringstream ss(line.substr(1));
    std::string token;
    while (ss >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "seed") h.seed = std::stoull(value);
        else if (key == "run") h.run = std::stoull(value);
        else if (key == "a") h.gr.a = std::stod(value);
        else if (key == "b") h.gr.b = std::stod(value);
        else if (key == "mc") h.gr.mc = std::stod(value);
        else if (key == "mmax") h.gr.mmax = std::stod(value);
        else if (key == "grid") h.grid_hash = value;
        else if (key == "epoch") h.epoch = parse_year_month(value);
    }
}

}  // namespace

CatalogFile read_catalog(std::istream& in) {
    CatalogFile file;
    std::string line;
    int col_t = -1, col_x = -1, col_y = -1, col_m = -1;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            try {
                parse_header_line(line, file.header);
            } catch (const std::exception& ex) {
                throw ConfigError(fmt::format("catalog line {}: bad header: {}", lineno, ex.what()));
            }
            continue;
        }
        const auto cells = split_delimited(line);
        if (col_t < 0) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (cells[i] == "t_hr") col_t = static_cast<int>(i);
                if (cells[i] == "x_km") col_x = static_cast<int>(i);
                if (cells[i] == "y_km") col_y = static_cast<int>(i);
                if (cells[i] == "magnitude") col_m = static_cast<int>(i);
            }
            if (col_t < 0 || col_x < 0 || col_y < 0 || col_m < 0)
                throw ConfigError(fmt::format("catalog line {}: header must name t_hr, x_km, y_km, magnitude", lineno));
            continue;
        }
        const int need = std::max({col_t, col_x, col_y, col_m});
        if (static_cast<int>(cells.size()) <= need)
            throw ConfigError(fmt::format("catalog line {}: expected at least {} columns", lineno, need + 1));
        SeismicEvent e;
        e.t = parse_double(cells[static_cast<std::size_t>(col_t)], lineno);
        e.location.x = parse_double(cells[static_cast<std::size_t>(col_x)], lineno);
        e.location.y = parse_double(cells[static_cast<std::size_t>(col_y)], lineno);
        e.magnitude = parse_double(cells[static_cast<std::size_t>(col_m)], lineno);
        file.events.push_back(e);
    }
    return file;
}

CatalogFile read_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot read catalog '{}'", path.string()));
    return read_catalog(in);
}

}  // namespace seiscontrol
