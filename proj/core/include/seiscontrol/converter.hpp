#pragma once

#include <cstdint>

namespace seiscontrol {

/// Raw reservoir-average rate from an event count: n / (V * dt_c),
/// events/(km^3 hr). Throws ConfigError unless V > 0 and dt_c > 0.
double raw_sr_estimate(std::int64_t n_events, double volume_km3, double dt_c_hr);

/// Smoothing factor 1 - exp(-dt_c / tau); tau == 0 gives 1.
double ema_alpha(double dt_c_hr, double tau_hr);

/// Exponential moving average of the raw estimate.
struct ConverterState {
    double y_R = 0.0;     // events/(km^3 hr)
    double tau = 730.5;   // hr
    double alpha = 0.0;   // of the last update

    /// y_R <- (1 - alpha) y_R + alpha y_hat
    void update(double y_hat, double dt_c_hr);
};

/// sigma = (y_R - r_R) / (gamma1_0 * R*_0)
double tracking_error(double y_R, double r_R, double gamma1_0, double r_star_0);

}  // namespace seiscontrol
