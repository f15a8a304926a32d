#pragma once

#include "seiscontrol/controller.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace seiscontrol {

/// Orthonormal basis of null(W) for a full-row-rank W (m x n), from a
/// column-pivoted Householder QR of W^T. Returns n x (n - m).
/// Throws ConfigError when W is rank deficient.
Eigen::MatrixXd null_space_basis(const Eigen::MatrixXd& w);

/// Production constraint W Q = f_t with the control law
///   Q_c = W_bar (B0 W_bar)+ [effort] + W^T (W W^T)^-1 f_t.
/// W is 1 on producers and 0 elsewhere by default.
class ProductionConstraint {
public:
    ProductionConstraint(Eigen::RowVectorXd w, const ControllerConfig& cfg);

    /// Producer-indicator constraint for a well set (Producer and Both count as producers).
    static ProductionConstraint producers(const WellSet& wells, const ControllerConfig& cfg);

    const Eigen::RowVectorXd& w() const { return w_; }
    const Eigen::MatrixXd& w_bar() const { return w_bar_; }

    /// W_bar (B0 W_bar)+, km^3/hr per MPa/hr.
    std::span<const double> regulation_map() const { return {regulation_.data(), static_cast<std::size_t>(regulation_.size())}; }

    /// W^T (W W^T)^-1 f_t, same units as f_t.
    std::vector<double> constraint_term(double f_t) const;

    /// W q
    double apply(std::span<const double> q) const;

private:
    Eigen::RowVectorXd w_;
    Eigen::MatrixXd w_bar_;
    Eigen::VectorXd regulation_;
    Eigen::VectorXd constraint_;
};

/// Minimum-norm right pseudoinverse of a row vector, a^T / (a a^T).
Eigen::VectorXd row_pinv(const Eigen::RowVectorXd& a);

/// Production-constrained law; f_t is the signed target of W Q in m^3/month
/// (negative for net extraction). nu evolves as in control_update.
std::vector<double> constrained_control_update(const ControllerConfig& cfg, const ProductionConstraint& constraint,
                                               ControllerState& state, double sigma, double f_t, double dt_c);

}  // namespace seiscontrol
