#include "seiscontrol/seismicity_rate.hpp"

#include "seiscontrol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace seiscontrol {

SRParams SRParams::from_density(const ScalarField& density, double gamma1_scale, double gamma2,
                                double r_star_total) {
    SRParams p;
    p.gamma1 = ScalarField{units::Unit::PerMPa, density.values};
    for (double& v : p.gamma1.values) v *= gamma1_scale;
    p.gamma2 = gamma2;
    p.r_star = ScalarField{units::Unit::EventsPerKm3PerYear, density.values};
    for (double& v : p.r_star.values) v *= r_star_total;
    return p;
}

void SRParams::validate(const ReservoirGrid& grid) const {
    require_same_grid(grid, gamma1, "gamma1");
    require_same_grid(grid, r_star, "background rate");
    if (!(gamma2 > 0.0)) throw ConfigError(fmt::format("gamma2 must be positive, got {}", gamma2));
    if (std::any_of(gamma1.values.begin(), gamma1.values.end(), [](double v) { return !(v >= 0.0); }))
        throw ConfigError("gamma1 must be nonnegative everywhere");
    if (std::any_of(r_star.values.begin(), r_star.values.end(), [](double v) { return !(v >= 0.0); }))
        throw ConfigError("background rate must be nonnegative everywhere");
}

SRState SRState::background(const ReservoirGrid& grid) {
    return SRState{ScalarField::constant(grid, units::Unit::Dimensionless, 1.0), 0.0};
}

double logistic_step(double rn, double gamma1, double gamma2, double u_t, double dt) {
    const double a = gamma2 - gamma1 * u_t;
    const double at = a * dt;
    double next;
    if (a == 0.0) {
        next = rn / (1.0 + gamma2 * rn * dt);
    } else if (a > 0.0) {
        // R(t) = K R0 / (K e^{-at} + R0 (1 - e^{-at})), K = a / gamma2 the carrying capacity.
        // The denominator is regrouped per side of K so neither branch cancels
        // and R0 == K is reproduced exactly.
        const double k = a / gamma2;
        const double one_minus_e = -std::expm1(-at);
        const double den = rn >= k ? k + (rn - k) * one_minus_e : rn * one_minus_e + k * std::exp(-at);
        next = k * rn / den;
    } else {
        const double k = a / gamma2;  // negative: the rate decays to zero
        next = k * rn * std::exp(at) / (k + rn * std::expm1(at));
    }
    // strong injection can underflow the closed form
    return std::max(next, std::numeric_limits<double>::min());
}

void step_sr(SRState& state, const ScalarField& u_t, double dt, const SRParams& params) {
    if (!(dt > 0.0)) throw ConfigError(fmt::format("time step must be positive, got {}", dt));
    const std::size_t n = state.rn.size();
    if (u_t.size() != n || params.gamma1.size() != n)
        throw ConfigError("seismicity-rate fields do not share the same grid");
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(u_t[k]))
            throw NumericalError(fmt::format("non-finite pressure rate in cell {} at t = {} hr", k, state.t));
    }
    for (std::size_t k = 0; k < n; ++k) state.rn[k] = logistic_step(state.rn[k], params.gamma1[k], params.gamma2, u_t[k], dt);
    state.t += dt;
}

void unnormalized_sr(const SRState& state, const SRParams& params, ScalarField& out) {
    out.unit = units::Unit::EventsPerKm3PerYear;
    out.values.resize(state.rn.size());
    for (std::size_t k = 0; k < state.rn.size(); ++k) out[k] = state.rn[k] * params.r_star[k];
}

ScalarField unnormalized_sr(const SRState& state, const SRParams& params) {
    ScalarField out;
    unnormalized_sr(state, params, out);
    return out;
}

}  // namespace seiscontrol
