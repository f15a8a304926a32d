#include "seiscontrol/allocation.hpp"

#include "seiscontrol/errors.hpp"

#include <cmath>

#include <fmt/format.h>

namespace seiscontrol {

Eigen::MatrixXd null_space_basis(const Eigen::MatrixXd& w) {
    const Eigen::Index m = w.rows();
    const Eigen::Index n = w.cols();
    if (m == 0 || n == 0) throw ConfigError("constraint matrix is empty");
    if (w.cwiseAbs().maxCoeff() == 0.0) throw ConfigError("constraint matrix W is zero");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(w.transpose());
    if (qr.rank() != m) throw ConfigError(fmt::format("constraint matrix has rank {} < {} rows", qr.rank(), m));
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    return q.rightCols(n - m);
}

Eigen::VectorXd row_pinv(const Eigen::RowVectorXd& a) {
    const double nn = a.squaredNorm();
    if (!(nn > 0.0)) throw ConfigError("pseudoinverse of a zero row");
    return a.transpose() / nn;
}

ProductionConstraint::ProductionConstraint(Eigen::RowVectorXd w, const ControllerConfig& cfg) : w_(std::move(w)) {
    cfg.validate();
    const Eigen::Index n = w_.size();
    if (static_cast<std::size_t>(n) != cfg.n_wells)
        throw ConfigError(fmt::format("constraint has {} columns for {} wells", n, cfg.n_wells));
    if (n < 2) throw ConfigError("a production constraint needs at least two wells");
    w_bar_ = null_space_basis(w_);

    const Eigen::RowVectorXd b0 = Eigen::RowVectorXd::Constant(n, -1.0 / (cfg.beta_0 * cfg.volume));
    const Eigen::RowVectorXd b0_wbar = b0 * w_bar_;
    if (b0_wbar.norm() <= 1e-12 * b0.norm())
        throw ConfigError(fmt::format(
            "B0 W_bar vanishes (|B0 W_bar| = {:.3g}): the null space of W leaves no direction to regulate seismicity",
            b0_wbar.norm()));
    regulation_ = w_bar_ * row_pinv(b0_wbar);
    constraint_ = w_.transpose() / w_.squaredNorm();
}

ProductionConstraint ProductionConstraint::producers(const WellSet& wells, const ControllerConfig& cfg) {
    Eigen::RowVectorXd w = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(wells.size()));
    int producers = 0;
    int injectors = 0;
    for (std::size_t i = 0; i < wells.size(); ++i) {
        const WellRole r = wells[i].role;
        if (r != WellRole::Injector) {
            w[static_cast<Eigen::Index>(i)] = 1.0;
            ++producers;
        }
        if (r != WellRole::Producer) ++injectors;
    }
    if (producers == 0 || injectors == 0)
        throw ConfigError(fmt::format("constrained mode needs producers and injectors (got {} and {})", producers,
                                      injectors));
    return ProductionConstraint(std::move(w), cfg);
}

std::vector<double> ProductionConstraint::constraint_term(double f_t) const {
    std::vector<double> out(static_cast<std::size_t>(constraint_.size()));
    for (Eigen::Index i = 0; i < constraint_.size(); ++i) out[static_cast<std::size_t>(i)] = constraint_[i] * f_t;
    return out;
}

double ProductionConstraint::apply(std::span<const double> q) const {
    if (q.size() != static_cast<std::size_t>(w_.size())) throw ConfigError("flux vector length does not match W");
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) s += w_[static_cast<Eigen::Index>(i)] * q[i];
    return s;
}

std::vector<double> constrained_control_update(const ControllerConfig& cfg, const ProductionConstraint& constraint,
                                               ControllerState& state, double sigma, double f_t, double dt_c) {
    if (!std::isfinite(f_t)) throw NumericalError("non-finite production target");
    const auto offset = constraint.constraint_term(f_t);
    return control_update(cfg, state, sigma, dt_c, constraint.regulation_map(), offset);
}

}  // namespace seiscontrol
