#pragma once

#include "seiscontrol/wells.hpp"

#include <span>
#include <vector>

namespace seiscontrol {

/// |x|^g sign(x). g == 0 gives sign(x) with sign(0) = 0.
double signed_power(double x, double g);

/// Piecewise-constant reference r_R(t) in events/(km^3 hr): value i holds
/// from times[i] onward; the first value also covers earlier times.
struct ReferenceTrajectory {
    std::vector<double> times;   // hr, strictly increasing
    std::vector<double> values;  // events/(km^3 hr)

    static ReferenceTrajectory constant(double value);
    double at(double t) const;
    void validate() const;
};

/// Super-twisting law with leakage anti-windup:
///   Q_c = B0+ [-k1 |s|^(1/(1-l)) sign(s) + nu]
///   nu' = -k2 |s|^((1+l)/(1-l)) sign(s) - k3 rho nu
/// B0 = -1/(beta_0 V) * ones(1, n), so B0+ = -(beta_0 V / n) * ones(n).
/// Everything is evaluated in canonical units (Q in km^3/hr, nu in MPa/hr);
/// commands are exchanged in m^3/month.
struct ControllerConfig {
    double k1 = 6.7e-4;
    double k2 = 2.2e-7;
    double k3 = 36.05;
    double l = -1.0;
    double gamma1_0 = 1.35e7;
    double r_star_0 = 4.11e-5;
    double beta_0 = 0.8 * 5.7e-4;  // 1/MPa
    double volume = 0.0;           // km^3
    std::size_t n_wells = 0;
    ReferenceTrajectory reference;

    void validate() const;

    /// -(beta_0 V / n) for every well, km^3/MPa.
    std::vector<double> b0_pinv() const;
    /// ||B0+||_inf = beta_0 V / n.
    double b0_pinv_norm() const;
};

struct ControllerState {
    double nu = 0.0;          // MPa/hr
    double rho = 0.0;         // 1/hr, from the previous saturation check
    double last_sigma = 0.0;
    std::vector<double> q_c_held;  // m^3/month
};

/// Scalar regulation effort -k1 |s|^(1/(1-l)) sign(s) + nu, MPa/hr.
double regulation_effort(const ControllerConfig& cfg, double nu, double sigma);

/// Advances nu over dt with sigma and rho frozen. The leakage term is
/// integrated exactly, so the update stays stable for any k3 rho dt; with
/// rho == 0 it is the explicit Euler step nu - dt k2 |s|^g sign(s).
double advance_nu(const ControllerConfig& cfg, double nu, double sigma, double rho, double dt);

/// Leakage fixed point -k2 |s|^g sign(s) / (k3 rho) for rho > 0.
double leakage_equilibrium(const ControllerConfig& cfg, double sigma, double rho);

/// Computes Q_c(t_k) from the current nu (returned before saturation, in
/// m^3/month), then advances nu over [t_k, t_k + dt_c) using state.rho.
std::vector<double> control_update(const ControllerConfig& cfg, ControllerState& state, double sigma, double dt_c);

/// Shared core of control_update: `allocation` maps the scalar effort to
/// well fluxes in km^3/hr per MPa/hr, `offset` (m^3/month) is added as is.
std::vector<double> control_update(const ControllerConfig& cfg, ControllerState& state, double sigma, double dt_c,
                                   std::span<const double> allocation, std::span<const double> offset);

/// Component-wise clamp to [q_min, q_max].
std::vector<double> saturate(std::span<const double> q, const WellSet& wells);
std::vector<double> saturate(std::span<const double> q, std::span<const double> lower, std::span<const double> upper);

/// rho = 0 when every component lies strictly inside its bounds, else
/// k2 ||B0+||_inf / min |q_max - q_min| over the violated wells (1/hr).
/// Throws ConfigError for a zero-width well.
double anti_windup_rho(std::span<const double> q_presat, const WellSet& wells, const ControllerConfig& cfg);
double anti_windup_rho(std::span<const double> q_presat, std::span<const double> lower,
                       std::span<const double> upper, const ControllerConfig& cfg);

}  // namespace seiscontrol
