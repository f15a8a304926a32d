#pragma once

#include "seiscontrol/grid.hpp"

namespace seiscontrol {

/// Parameters of the normalized rate equation
///   dRn/dt = Rn * (gamma2 * (1 - Rn) - gamma1 * u_t).
struct SRParams {
    ScalarField gamma1;       // 1/MPa, per cell
    double gamma2 = 4.67e-8;  // 1/hr
    ScalarField r_star;       // background rate, events/(km^3 yr)

    /// gamma1 = gamma1_scale * d(x), R* = r_star_total * d(x).
    static SRParams from_density(const ScalarField& density, double gamma1_scale = 3.7, double gamma2 = 4.67e-8,
                                 double r_star_total = 4.11e-5);

    void validate(const ReservoirGrid& grid) const;
};

struct SRState {
    ScalarField rn;  // normalized rate, dimensionless, > 0
    double t = 0.0;  // hr

    /// Background equilibrium Rn = 1.
    static SRState background(const ReservoirGrid& grid);
};

/// Exact solution of the logistic equation over `dt` with a frozen forcing:
///   dR/dt = R (a - g2 R),  a = g2 - g1 * u_t.
/// Positive for any positive start value and finite inputs.
double logistic_step(double rn, double gamma1, double gamma2, double u_t, double dt);

/// Advances every cell with logistic_step. Throws NumericalError on a
/// non-finite pressure rate.
void step_sr(SRState& state, const ScalarField& u_t, double dt, const SRParams& params);

/// R = Rn * R*, events/(km^3 yr).
ScalarField unnormalized_sr(const SRState& state, const SRParams& params);
void unnormalized_sr(const SRState& state, const SRParams& params, ScalarField& out);

}  // namespace seiscontrol
