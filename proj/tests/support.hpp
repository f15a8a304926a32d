#pragma once

#include "seiscontrol/scenario.hpp"
#include "seiscontrol/synthetic.hpp"

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

namespace testing_support {

inline seiscontrol::SynthOptions small_field() {
    seiscontrol::SynthOptions o;
    o.nx = 16;
    o.ny = 20;
    o.n_wells = 6;
    o.start = {1990, 1};
    o.end = {1993, 12};
    return o;
}

inline const seiscontrol::Dataset& small_dataset() {
    static const seiscontrol::Dataset ds = seiscontrol::synth_groningen(11, small_field());
    return ds;
}

inline seiscontrol::ScenarioConfig small_scenario(seiscontrol::Mode mode) {
    seiscontrol::ScenarioConfig c;
    c.mode = mode;
    c.start = {1990, 1};
    c.end = {1993, 12};
    c.control_start = {1991, 12};
    c.seed = 5;
    return c;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("seiscontrol_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace testing_support
