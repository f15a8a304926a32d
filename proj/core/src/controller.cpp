#include "seiscontrol/controller.hpp"

#include "seiscontrol/errors.hpp"
#include "seiscontrol/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace seiscontrol {

double signed_power(double x, double g) {
    if (x == 0.0) return 0.0;
    const double s = x > 0.0 ? 1.0 : -1.0;
    if (g == 0.0) return s;
    if (g == 1.0) return x;
    return s * std::pow(std::abs(x), g);
}

ReferenceTrajectory ReferenceTrajectory::constant(double value) { return {{0.0}, {value}}; }

double ReferenceTrajectory::at(double t) const {
    if (values.empty()) return 0.0;
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return values.front();
    return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

void ReferenceTrajectory::validate() const {
    if (times.size() != values.size() || values.empty())
        throw ConfigError("reference trajectory needs one value per breakpoint");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw ConfigError("reference breakpoints must increase strictly");
    for (double v : values)
        if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("reference values must be finite and nonnegative");
}

void ControllerConfig::validate() const {
    if (!(k1 > 0.0)) throw ConfigError(fmt::format("k1 must be positive, got {}", k1));
    if (!(k2 > 0.0)) throw ConfigError(fmt::format("k2 must be positive, got {}", k2));
    if (!(k3 > 1.0)) throw ConfigError(fmt::format("k3 must exceed 1, got {}", k3));
    if (!(l >= -1.0 && l <= 0.0)) throw ConfigError(fmt::format("l must lie in [-1, 0], got {}", l));
    if (!(gamma1_0 > 0.0) || !(r_star_0 > 0.0)) throw ConfigError("gamma1_0 and R*_0 must be positive");
    if (!(beta_0 > 0.0)) throw ConfigError(fmt::format("beta_0 must be positive, got {}", beta_0));
    if (!(volume > 0.0)) throw ConfigError(fmt::format("controller volume must be positive, got {}", volume));
    if (n_wells == 0) throw ConfigError("controller needs at least one well");
    reference.validate();
}

std::vector<double> ControllerConfig::b0_pinv() const {
    return std::vector<double>(n_wells, -b0_pinv_norm());
}

double ControllerConfig::b0_pinv_norm() const { return beta_0 * volume / static_cast<double>(n_wells); }

double regulation_effort(const ControllerConfig& cfg, double nu, double sigma) {
    return -cfg.k1 * signed_power(sigma, 1.0 / (1.0 - cfg.l)) + nu;
}

namespace {

double nu_drive(const ControllerConfig& cfg, double sigma) {
    return -cfg.k2 * signed_power(sigma, (1.0 + cfg.l) / (1.0 - cfg.l));
}

}  // namespace

double advance_nu(const ControllerConfig& cfg, double nu, double sigma, double rho, double dt) {
    const double drive = nu_drive(cfg, sigma);
    const double c = cfg.k3 * rho;
    if (c == 0.0) return nu + dt * drive;
    // nu' = drive - c nu  =>  nu(dt) = nu e^{-c dt} + drive (1 - e^{-c dt}) / c
    const double decay = std::exp(-c * dt);
    return nu * decay + drive * (-std::expm1(-c * dt)) / c;
}

double leakage_equilibrium(const ControllerConfig& cfg, double sigma, double rho) {
    if (!(rho > 0.0)) throw DomainError("leakage equilibrium needs rho > 0");
    return nu_drive(cfg, sigma) / (cfg.k3 * rho);
}

std::vector<double> control_update(const ControllerConfig& cfg, ControllerState& state, double sigma, double dt_c,
                                   std::span<const double> allocation, std::span<const double> offset) {
    if (!(dt_c > 0.0)) throw ConfigError(fmt::format("control period must be positive, got {}", dt_c));
    if (!offset.empty() && offset.size() != allocation.size())
        throw ConfigError("constraint offset and allocation differ in length");
    if (!std::isfinite(sigma)) throw NumericalError(fmt::format("non-finite tracking error {}", sigma));
    const double effort = regulation_effort(cfg, state.nu, sigma);
    std::vector<double> q(allocation.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        q[i] = units::flux_from_canonical(allocation[i] * effort);
        if (!offset.empty()) q[i] += offset[i];
    }
    state.nu = advance_nu(cfg, state.nu, sigma, state.rho, dt_c);
    if (!std::isfinite(state.nu)) throw NumericalError("controller state nu became non-finite");
    state.last_sigma = sigma;
    state.q_c_held = q;
    return q;
}

std::vector<double> control_update(const ControllerConfig& cfg, ControllerState& state, double sigma, double dt_c) {
    const auto alloc = cfg.b0_pinv();
    return control_update(cfg, state, sigma, dt_c, alloc, {});
}

std::vector<double> saturate(std::span<const double> q, std::span<const double> lower, std::span<const double> upper) {
    if (q.size() != lower.size() || q.size() != upper.size())
        throw ConfigError(fmt::format("{} fluxes for {} wells", q.size(), lower.size()));
    std::vector<double> out(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) out[i] = std::clamp(q[i], lower[i], upper[i]);
    return out;
}

std::vector<double> saturate(std::span<const double> q, const WellSet& wells) {
    return saturate(q, wells.lower_bounds(), wells.upper_bounds());
}

double anti_windup_rho(std::span<const double> q, std::span<const double> lower, std::span<const double> upper,
                       const ControllerConfig& cfg) {
    if (q.size() != lower.size() || q.size() != upper.size())
        throw ConfigError(fmt::format("{} fluxes for {} wells", q.size(), lower.size()));
    double min_width = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double width = std::abs(upper[i] - lower[i]);
        if (width == 0.0) throw ConfigError(fmt::format("well {} has zero-width flux bounds", i));
        if (q[i] >= upper[i] || q[i] <= lower[i]) min_width = std::min(min_width, width);
    }
    if (std::isinf(min_width)) return 0.0;
    return cfg.k2 * cfg.b0_pinv_norm() / units::flux_to_canonical(min_width);
}

double anti_windup_rho(std::span<const double> q, const WellSet& wells, const ControllerConfig& cfg) {
    return anti_windup_rho(q, wells.lower_bounds(), wells.upper_bounds(), cfg);
}

}  // namespace seiscontrol
