#include "seiscontrol/diffusion.hpp"

#include "seiscontrol/errors.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace seiscontrol {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

void DiffusionParams::validate() const {
    if (!(c_hy > 0.0)) throw ConfigError(fmt::format("hydraulic diffusivity must be positive, got {}", c_hy));
    if (!(beta > 0.0)) throw ConfigError(fmt::format("compressibility must be positive, got {}", beta));
}

PressureState PressureState::zero(const ReservoirGrid& grid) {
    PressureState s;
    s.u = ScalarField::constant(grid, units::Unit::MPa, 0.0);
    s.u_t = ScalarField::constant(grid, units::Unit::MPaPerHour, 0.0);
    return s;
}

DiffusionStepper::DiffusionStepper(const ReservoirGrid& grid, DiffusionParams params, double rel_tolerance)
    : grid_(&grid), params_(params), tol_(rel_tolerance) {
    params_.validate();
    wx_ = 1.0 / (grid.dx() * grid.dx());
    wy_ = 1.0 / (grid.dy() * grid.dy());
    const auto n = static_cast<std::size_t>(grid.active_count());
    boundary_diag_.assign(n, 0.0);
    if (params_.bc == BoundaryCondition::DirichletZero) {
        for (std::size_t k = 0; k < n; ++k) {
            const auto& nb = grid.neighbours(static_cast<int>(k));
            // mirrored ghost: (-u - u) / h^2 per boundary face
            if (nb[ReservoirGrid::West] < 0) boundary_diag_[k] += 2.0 * wx_;
            if (nb[ReservoirGrid::East] < 0) boundary_diag_[k] += 2.0 * wx_;
            if (nb[ReservoirGrid::South] < 0) boundary_diag_[k] += 2.0 * wy_;
            if (nb[ReservoirGrid::North] < 0) boundary_diag_[k] += 2.0 * wy_;
        }
    }
    for (auto* v : {&rhs_, &r_, &z_, &p_, &ap_, &u_new_}) v->resize(n);
}

void DiffusionStepper::apply_laplacian(std::span<const double> x, std::span<double> y) const {
    const auto n = static_cast<std::size_t>(grid_->active_count());
    for (std::size_t k = 0; k < n; ++k) {
        const auto& nb = grid_->neighbours(static_cast<int>(k));
        const double xk = x[k];
        double acc = -boundary_diag_[k] * xk;
        if (nb[0] >= 0) acc += wx_ * (x[static_cast<std::size_t>(nb[0])] - xk);
        if (nb[1] >= 0) acc += wx_ * (x[static_cast<std::size_t>(nb[1])] - xk);
        if (nb[2] >= 0) acc += wy_ * (x[static_cast<std::size_t>(nb[2])] - xk);
        if (nb[3] >= 0) acc += wy_ * (x[static_cast<std::size_t>(nb[3])] - xk);
        y[k] = acc;
    }
}

void DiffusionStepper::apply_system(double dt, std::span<const double> x, std::span<double> y) const {
    apply_laplacian(x, y);
    const double a = dt * params_.c_hy;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = x[k] - a * y[k];
}

void DiffusionStepper::step(PressureState& state, const ScalarField& source, double dt) {
    if (!(dt > 0.0)) throw ConfigError(fmt::format("time step must be positive, got {}", dt));
    require_same_grid(*grid_, state.u, "pressure field");
    require_same_grid(*grid_, source, "source field");
    const auto n = static_cast<std::size_t>(grid_->active_count());
    if (state.u_t.size() != n) state.u_t = ScalarField::constant(*grid_, units::Unit::MPaPerHour, 0.0);

    const double a = dt * params_.c_hy;
    const double inv_beta = 1.0 / params_.beta;
    for (std::size_t k = 0; k < n; ++k) rhs_[k] = state.u[k] + dt * source[k] * inv_beta;

    // Jacobi preconditioner: inverse diagonal of (I - a L), rebuilt when dt changes
    if (dt != diag_dt_) {
        inv_diag_.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const auto& nb = grid_->neighbours(static_cast<int>(k));
            double d = boundary_diag_[k];
            d += (nb[0] >= 0 ? wx_ : 0.0) + (nb[1] >= 0 ? wx_ : 0.0) + (nb[2] >= 0 ? wy_ : 0.0) + (nb[3] >= 0 ? wy_ : 0.0);
            inv_diag_[k] = 1.0 / (1.0 + a * d);
        }
        diag_dt_ = dt;
    }

    // extrapolated initial guess from the previous rate
    for (std::size_t k = 0; k < n; ++k) u_new_[k] = state.u[k] + (state.has_rate ? dt * state.u_t[k] : 0.0);

    const double b_norm = std::sqrt(dot(rhs_, rhs_));
    apply_system(dt, u_new_, ap_);
    for (std::size_t k = 0; k < n; ++k) r_[k] = rhs_[k] - ap_[k];
    double r_norm = std::sqrt(dot(r_, r_));
    const double target = tol_ * b_norm;
    const int max_iter = 10 * static_cast<int>(n);

    int it = 0;
    if (b_norm == 0.0) {
        std::fill(u_new_.begin(), u_new_.end(), 0.0);
        r_norm = 0.0;
    } else if (r_norm > target) {
        for (std::size_t k = 0; k < n; ++k) z_[k] = r_[k] * inv_diag_[k];
        p_ = z_;
        double rz = dot(r_, z_);
        for (it = 1; it <= max_iter; ++it) {
            apply_system(dt, p_, ap_);
            const double alpha = rz / dot(p_, ap_);
            for (std::size_t k = 0; k < n; ++k) {
                u_new_[k] += alpha * p_[k];
                r_[k] -= alpha * ap_[k];
            }
            r_norm = std::sqrt(dot(r_, r_));
            if (r_norm <= target) break;
            for (std::size_t k = 0; k < n; ++k) z_[k] = r_[k] * inv_diag_[k];
            const double rz_new = dot(r_, z_);
            const double beta = rz_new / rz;
            rz = rz_new;
            for (std::size_t k = 0; k < n; ++k) p_[k] = z_[k] + beta * p_[k];
        }
    }
    stats_.iterations = it;
    stats_.relative_residual = b_norm > 0.0 ? r_norm / b_norm : 0.0;
    if (!std::isfinite(r_norm) || (b_norm > 0.0 && r_norm > target))
        throw NumericalError(fmt::format(
            "pressure solve did not converge at t = {} hr: relative residual {:.3e} after {} iterations (tol {:.1e})",
            state.t, stats_.relative_residual, it, tol_));

    const double inv_dt = 1.0 / dt;
    for (std::size_t k = 0; k < n; ++k) {
        state.u_t[k] = (u_new_[k] - state.u[k]) * inv_dt;
        state.u[k] = u_new_[k];
    }
    state.t += dt;
    state.has_rate = true;
}

PressureState step_pressure(const ReservoirGrid& grid, const PressureState& state, const ScalarField& source,
                            double dt, const DiffusionParams& params) {
    DiffusionStepper stepper(grid, params);
    PressureState next = state;
    stepper.step(next, source, dt);
    return next;
}

const ScalarField& pressure_rate(const PressureState& state) {
    if (!state.has_rate) throw StateError("pressure rate requested before the first step");
    return state.u_t;
}

}  // namespace seiscontrol
