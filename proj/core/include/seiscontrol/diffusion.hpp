#pragma once

#include "seiscontrol/grid.hpp"

#include <vector>

namespace seiscontrol {

enum class BoundaryCondition {
    DirichletZero,  // u = 0 on the reservoir boundary (drained)
    NeumannZero,    // no flux through the boundary
};

struct DiffusionParams {
    double c_hy = 4.4e-2;  // hydraulic diffusivity, km^2/hr
    double beta = 5.7e-4;  // mixture compressibility, 1/MPa
    BoundaryCondition bc = BoundaryCondition::NeumannZero;

    void validate() const;
};

struct PressureState {
    ScalarField u;    // MPa
    ScalarField u_t;  // MPa/hr, backward difference over the last step
    double t = 0.0;   // hr
    bool has_rate = false;

    static PressureState zero(const ReservoirGrid& grid);
};

struct SolverStats {
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Backward-Euler integrator for  u_t = c_hy * lap(u) + s / beta  on a
/// masked grid. Each step solves (I - dt c_hy L) u_new = u_old + dt s / beta
/// with Jacobi-preconditioned conjugate gradients. The source `s` is the
/// volumetric source density produced by source_field (1/hr).
///
/// Dirichlet faces use a mirrored ghost value so that u vanishes on the
/// face between an active cell and the outside.
class DiffusionStepper {
public:
    DiffusionStepper(const ReservoirGrid& grid, DiffusionParams params, double rel_tolerance = 1e-10);

    /// Advances `state` in place. Throws NumericalError if CG does not reach
    /// the tolerance within 10 * active_count iterations.
    void step(PressureState& state, const ScalarField& source, double dt);

    const SolverStats& last_stats() const { return stats_; }
    const DiffusionParams& params() const { return params_; }

    /// y = L x, the masked 5-point Laplacian with this stepper's boundary condition.
    void apply_laplacian(std::span<const double> x, std::span<double> y) const;

private:
    void apply_system(double dt, std::span<const double> x, std::span<double> y) const;

    const ReservoirGrid* grid_;
    DiffusionParams params_;
    double tol_;
    double wx_;
    double wy_;
    std::vector<double> boundary_diag_;  // sum of Dirichlet face weights per cell
    SolverStats stats_;
    // CG work vectors, reused across steps
    std::vector<double> rhs_, r_, z_, p_, ap_, u_new_;
    std::vector<double> inv_diag_;
    double diag_dt_ = 0.0;
};

/// One-shot convenience wrapper around DiffusionStepper.
PressureState step_pressure(const ReservoirGrid& grid, const PressureState& state, const ScalarField& source,
                            double dt, const DiffusionParams& params);

/// Rate stored by the last step; throws StateError before the first step.
const ScalarField& pressure_rate(const PressureState& state);

}  // namespace seiscontrol
