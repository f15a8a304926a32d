#include "seiscontrol/converter.hpp"

#include "seiscontrol/errors.hpp"

#include <cmath>

#include <fmt/format.h>

namespace seiscontrol {

double raw_sr_estimate(std::int64_t n_events, double volume_km3, double dt_c_hr) {
    if (!(volume_km3 > 0.0)) throw ConfigError(fmt::format("reservoir volume must be positive, got {}", volume_km3));
    if (!(dt_c_hr > 0.0)) throw ConfigError(fmt::format("control period must be positive, got {}", dt_c_hr));
    return static_cast<double>(n_events) / (volume_km3 * dt_c_hr);
}

double ema_alpha(double dt_c_hr, double tau_hr) {
    if (!(dt_c_hr > 0.0)) throw ConfigError(fmt::format("control period must be positive, got {}", dt_c_hr));
    if (!(tau_hr >= 0.0)) throw ConfigError(fmt::format("EMA time constant must be nonnegative, got {}", tau_hr));
    if (tau_hr == 0.0) return 1.0;
    return -std::expm1(-dt_c_hr / tau_hr);
}

void ConverterState::update(double y_hat, double dt_c_hr) {
    alpha = ema_alpha(dt_c_hr, tau);
    y_R = (1.0 - alpha) * y_R + alpha * y_hat;
}

double tracking_error(double y_R, double r_R, double gamma1_0, double r_star_0) {
    if (!(gamma1_0 > 0.0) || !(r_star_0 > 0.0))
        throw ConfigError("error normalization constants must be positive");
    return (y_R - r_R) / (gamma1_0 * r_star_0);
}

}  // namespace seiscontrol
