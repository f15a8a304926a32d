#include "seiscontrol/config.hpp"

#include "seiscontrol/errors.hpp"
#include "seiscontrol/table.hpp"
#include "seiscontrol/units.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace seiscontrol {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s{
        {"scenario", {"mode", "start", "end", "control_start", "physics_dt_months", "seed", "runs", "demand_scale"}},
        {"dataset",
         {"source", "synthetic_seed", "nx", "ny", "dx_km", "dy_km", "thickness_km", "n_wells", "peak_extraction",
          "seasonal_amplitude", "share_spread", "outline", "wells", "history", "density"}},
        {"pressure-diffusion", {"c_hy", "beta", "boundary"}},
        {"seismicity-rate", {"gamma1_scale", "gamma2", "r_star_total"}},
        {"catalog-generator", {"a", "b", "mc", "mmax"}},
        {"control-loop",
         {"k1", "k2", "k3", "l", "gamma1_0", "r_star_0", "beta_0", "tau_months", "control_period_months", "q_min",
          "q_max", "reference"}},
    };
    return s;
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    template <typename F>
    static auto parse(const std::string& section, const std::string& key, F&& f) {
        try {
            return f();
        } catch (const ConfigError&) {
            throw ConfigError(fmt::format("[{}] {}: invalid value", section, key));
        }
    }

    const std::string* raw(const std::string& section, const std::string& key) const {
        const auto sec = tree_.get_child_optional(section);
        if (!sec) return nullptr;
        const auto v = sec->get_child_optional(pt::ptree::path_type(key, '\0'));
        if (!v) return nullptr;
        return &v->data();
    }

    void number(const std::string& section, const std::string& key, double& out) const {
        if (const auto* s = raw(section, key)) out = parse(section, key, [&] { return parse_double(*s, 0); });
    }
    template <typename Int>
    void integer(const std::string& section, const std::string& key, Int& out) const {
        if (const auto* s = raw(section, key))
            out = static_cast<Int>(parse(section, key, [&] { return parse_int(*s, 0); }));
    }
    void text(const std::string& section, const std::string& key, std::string& out) const {
        if (const auto* s = raw(section, key)) out = *s;
    }
    void month(const std::string& section, const std::string& key, YearMonth& out) const {
        if (const auto* s = raw(section, key)) out = parse(section, key, [&] { return parse_year_month(*s); });
    }

private:
    const pt::ptree& tree_;
};

void check_schema(const pt::ptree& tree) {
    for (const auto& [section, body] : tree) {
        const auto it = schema().find(section);
        if (it == schema().end()) {
            if (body.empty()) throw ConfigError(fmt::format("'{}': settings must appear inside a section", section));
            throw ConfigError(fmt::format("[{}]: unknown section", section));
        }
        for (const auto& [key, value] : body) {
            if (!it->second.count(key)) throw ConfigError(fmt::format("[{}] {}: unknown key", section, key));
        }
    }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    if (p.empty()) return {};
    const std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

AppConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(fmt::format("line {}: {}", e.line(), e.message()));
    }
    check_schema(tree);
    const Reader r(tree);
    AppConfig cfg;
    ScenarioConfig& sc = cfg.scenario;

    std::string mode = std::string(to_string(sc.mode));
    r.text("scenario", "mode", mode);
    sc.mode = Reader::parse("scenario", "mode", [&] { return parse_mode(mode); });
    r.month("scenario", "start", sc.start);
    r.month("scenario", "end", sc.end);
    r.month("scenario", "control_start", sc.control_start);
    double dt_months = units::hours_to_months(sc.physics_dt);
    r.number("scenario", "physics_dt_months", dt_months);
    sc.physics_dt = units::months_to_hours(dt_months);
    r.integer("scenario", "seed", sc.seed);
    r.integer("scenario", "runs", sc.runs);
    r.number("scenario", "demand_scale", sc.demand_scale);

    DatasetConfig& ds = cfg.dataset;
    std::string source = "synthetic";
    r.text("dataset", "source", source);
    if (source == "synthetic") ds.source = DatasetConfig::Source::Synthetic;
    else if (source == "files") ds.source = DatasetConfig::Source::Files;
    else throw ConfigError(fmt::format("[dataset] source: expected synthetic or files, got '{}'", source));
    r.integer("dataset", "synthetic_seed", ds.synthetic_seed);
    r.integer("dataset", "nx", ds.synthetic.nx);
    r.integer("dataset", "ny", ds.synthetic.ny);
    r.number("dataset", "dx_km", ds.synthetic.dx);
    r.number("dataset", "dy_km", ds.synthetic.dy);
    r.number("dataset", "thickness_km", ds.synthetic.thickness);
    r.integer("dataset", "n_wells", ds.synthetic.n_wells);
    r.number("dataset", "peak_extraction", ds.synthetic.peak_extraction);
    r.number("dataset", "seasonal_amplitude", ds.synthetic.seasonal_amplitude);
    r.number("dataset", "share_spread", ds.synthetic.share_spread);
    ds.synthetic.start = sc.start;
    ds.synthetic.end = sc.end;
    ds.grid = GridSpec{ds.synthetic.nx, ds.synthetic.ny, ds.synthetic.dx, ds.synthetic.dy, ds.synthetic.thickness, {}};
    std::string outline, wells, history, density;
    r.text("dataset", "outline", outline);
    r.text("dataset", "wells", wells);
    r.text("dataset", "history", history);
    r.text("dataset", "density", density);
    ds.files = {resolve(base_dir, outline), resolve(base_dir, wells), resolve(base_dir, history),
                resolve(base_dir, density)};
    if (ds.source == DatasetConfig::Source::Files && (wells.empty() || history.empty()))
        throw ConfigError("[dataset] wells, history: required when source = files");

    r.number("pressure-diffusion", "c_hy", sc.diffusion.c_hy);
    r.number("pressure-diffusion", "beta", sc.diffusion.beta);
    std::string bc = sc.diffusion.bc == BoundaryCondition::NeumannZero ? "neumann" : "dirichlet";
    r.text("pressure-diffusion", "boundary", bc);
    if (bc == "neumann") sc.diffusion.bc = BoundaryCondition::NeumannZero;
    else if (bc == "dirichlet") sc.diffusion.bc = BoundaryCondition::DirichletZero;
    else throw ConfigError(fmt::format("[pressure-diffusion] boundary: expected neumann or dirichlet, got '{}'", bc));

    r.number("seismicity-rate", "gamma1_scale", sc.sr.gamma1_scale);
    r.number("seismicity-rate", "gamma2", sc.sr.gamma2);
    r.number("seismicity-rate", "r_star_total", sc.sr.r_star_total);

    r.number("catalog-generator", "a", sc.gr.a);
    r.number("catalog-generator", "b", sc.gr.b);
    r.number("catalog-generator", "mc", sc.gr.mc);
    r.number("catalog-generator", "mmax", sc.gr.mmax);

    ControllerConfig& cc = sc.controller;
    r.number("control-loop", "k1", cc.k1);
    r.number("control-loop", "k2", cc.k2);
    r.number("control-loop", "k3", cc.k3);
    r.number("control-loop", "l", cc.l);
    r.number("control-loop", "gamma1_0", cc.gamma1_0);
    r.number("control-loop", "r_star_0", cc.r_star_0);
    cc.beta_0 = 0.8 * sc.diffusion.beta;
    r.number("control-loop", "beta_0", cc.beta_0);
    double tau_months = units::hours_to_months(sc.tau);
    r.number("control-loop", "tau_months", tau_months);
    sc.tau = units::months_to_hours(tau_months);
    double period_months = units::hours_to_months(sc.control_period);
    r.number("control-loop", "control_period_months", period_months);
    sc.control_period = units::months_to_hours(period_months);
    if (r.raw("control-loop", "q_min") || r.raw("control-loop", "q_max")) {
        FluxBounds b = default_bounds(sc.mode);
        r.number("control-loop", "q_min", b.q_min);
        r.number("control-loop", "q_max", b.q_max);
        sc.bounds = b;
    }
    if (r.raw("control-loop", "reference")) {
        double ref = 0.0;
        r.number("control-loop", "reference", ref);
        sc.reference = ReferenceTrajectory::constant(ref);
    }

    try {
        sc.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("[scenario]: {}", e.what()));
    }
    return cfg;
}

AppConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot read config '{}'", path.string()));
    try {
        return parse_config(in, path.parent_path());
    } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

void write_config(std::ostream& out, const AppConfig& cfg) {
    const ScenarioConfig& sc = cfg.scenario;
    const DatasetConfig& ds = cfg.dataset;
    const ControllerConfig& cc = sc.controller;
    out << "[scenario]\n"
        << fmt::format("mode = {}\n", to_string(sc.mode)) << fmt::format("start = {}\n", sc.start.to_string())
        << fmt::format("end = {}\n", sc.end.to_string())
        << fmt::format("control_start = {}\n", sc.control_start.to_string())
        << fmt::format("physics_dt_months = {}\n", units::hours_to_months(sc.physics_dt))
        << fmt::format("seed = {}\n", sc.seed) << fmt::format("runs = {}\n", sc.runs)
        << fmt::format("demand_scale = {}\n", sc.demand_scale);

    out << "\n[dataset]\n"
        << fmt::format("source = {}\n", ds.source == DatasetConfig::Source::Synthetic ? "synthetic" : "files")
        << fmt::format("synthetic_seed = {}\n", ds.synthetic_seed) << fmt::format("nx = {}\n", ds.synthetic.nx)
        << fmt::format("ny = {}\n", ds.synthetic.ny) << fmt::format("dx_km = {}\n", ds.synthetic.dx)
        << fmt::format("dy_km = {}\n", ds.synthetic.dy)
        << fmt::format("thickness_km = {}\n", ds.synthetic.thickness)
        << fmt::format("n_wells = {}\n", ds.synthetic.n_wells)
        << fmt::format("peak_extraction = {}\n", ds.synthetic.peak_extraction)
        << fmt::format("seasonal_amplitude = {}\n", ds.synthetic.seasonal_amplitude)
        << fmt::format("share_spread = {}\n", ds.synthetic.share_spread);
    if (ds.source == DatasetConfig::Source::Files) {
        out << fmt::format("outline = {}\n", ds.files.outline.string())
            << fmt::format("wells = {}\n", ds.files.wells.string())
            << fmt::format("history = {}\n", ds.files.history.string())
            << fmt::format("density = {}\n", ds.files.density.string());
    }

    out << "\n[pressure-diffusion]\n"
        << fmt::format("c_hy = {}\n", sc.diffusion.c_hy) << fmt::format("beta = {}\n", sc.diffusion.beta)
        << fmt::format("boundary = {}\n", sc.diffusion.bc == BoundaryCondition::NeumannZero ? "neumann" : "dirichlet");

    out << "\n[seismicity-rate]\n"
        << fmt::format("gamma1_scale = {}\n", sc.sr.gamma1_scale) << fmt::format("gamma2 = {}\n", sc.sr.gamma2)
        << fmt::format("r_star_total = {}\n", sc.sr.r_star_total);

    out << "\n[catalog-generator]\n"
        << fmt::format("a = {}\nb = {}\nmc = {}\nmmax = {}\n", sc.gr.a, sc.gr.b, sc.gr.mc, sc.gr.mmax);

    out << "\n[control-loop]\n"
        << fmt::format("k1 = {}\nk2 = {}\nk3 = {}\nl = {}\n", cc.k1, cc.k2, cc.k3, cc.l)
        << fmt::format("gamma1_0 = {}\nr_star_0 = {}\nbeta_0 = {}\n", cc.gamma1_0, cc.r_star_0, cc.beta_0)
        << fmt::format("tau_months = {}\n", units::hours_to_months(sc.tau))
        << fmt::format("control_period_months = {}\n", units::hours_to_months(sc.control_period));
    const FluxBounds b = sc.bounds.value_or(default_bounds(sc.mode));
    out << fmt::format("q_min = {}\nq_max = {}\n", b.q_min, b.q_max);
    if (sc.reference) out << fmt::format("reference = {}\n", sc.reference->at(0.0));
}

std::string config_to_string(const AppConfig& cfg) {
    std::ostringstream out;
    write_config(out, cfg);
    return out.str();
}

Dataset make_dataset(const DatasetConfig& cfg) {
    if (cfg.source == DatasetConfig::Source::Synthetic) return synth_groningen(cfg.synthetic_seed, cfg.synthetic);
    return load_dataset(cfg.grid, cfg.files);
}

}  // namespace seiscontrol
