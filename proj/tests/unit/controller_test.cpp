#include "seiscontrol/controller.hpp"
#include "seiscontrol/errors.hpp"
#include "seiscontrol/units.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace seiscontrol;

namespace {

ControllerConfig config(double volume = 2.0, std::size_t n = 4) {
    ControllerConfig c;
    c.volume = volume;
    c.n_wells = n;
    c.reference = ReferenceTrajectory::constant(1e-9);
    return c;
}

// explicit Euler on nu' = -k2 sign(s)|s|^g - k3 rho nu with a tiny step
double fine_nu(const ControllerConfig& c, double nu, double sigma, double rho, double dt) {
    const double g = (1.0 + c.l) / (1.0 - c.l);
    const double drive = sigma == 0.0 ? 0.0 : -c.k2 * std::copysign(std::pow(std::abs(sigma), g), sigma);
    const int n = 200000;
    const double h = dt / n;
    for (int i = 0; i < n; ++i) nu += h * (drive - c.k3 * rho * nu);
    return nu;
}

}  // namespace

TEST(Controller, SignedPower) {
    EXPECT_DOUBLE_EQ(signed_power(-8.0, 1.0 / 3.0), -2.0);
    EXPECT_DOUBLE_EQ(signed_power(4.0, 0.5), 2.0);
    EXPECT_DOUBLE_EQ(signed_power(-3.0, 0.0), -1.0);
    EXPECT_DOUBLE_EQ(signed_power(0.0, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(signed_power(-2.5, 1.0), -2.5);
}

TEST(Controller, PseudoInverseOfInputMap) {
    const ControllerConfig c = config(2.0, 4);
    // B0 = -1/(beta0 V) [1 1 1 1]; B0 B0+ = 1
    const auto p = c.b0_pinv();
    double b0_p = 0.0;
    for (double v : p) b0_p += -1.0 / (c.beta_0 * c.volume) * v;
    EXPECT_NEAR(b0_p, 1.0, 1e-14);
    EXPECT_DOUBLE_EQ(c.b0_pinv_norm(), c.beta_0 * 2.0 / 4.0);
    EXPECT_DOUBLE_EQ(c.beta_0, 0.8 * 5.7e-4);
}

TEST(Controller, RegulationEffortForDefaultExponents) {
    const ControllerConfig c = config();  // l = -1: |s|^(1/2), nu' driven by sign(s)
    EXPECT_NEAR(regulation_effort(c, 0.0, 4.0), -c.k1 * 2.0, 1e-18);
    EXPECT_NEAR(regulation_effort(c, 1e-3, -9.0), c.k1 * 3.0 + 1e-3, 1e-18);
    EXPECT_DOUBLE_EQ(advance_nu(c, 0.5, 0.3, 0.0, 10.0), 0.5 - 10.0 * c.k2);
    EXPECT_DOUBLE_EQ(advance_nu(c, 0.5, -0.3, 0.0, 10.0), 0.5 + 10.0 * c.k2);
    EXPECT_DOUBLE_EQ(advance_nu(c, 0.5, 0.0, 0.0, 10.0), 0.5);
}

TEST(Controller, LeakageIntegrationMatchesFineEuler) {
    ControllerConfig c = config();
    c.l = -0.5;
    for (double rho : {1e-9, 1e-4, 3e-3}) {
        for (double sigma : {-2.0, 0.0, 0.7}) {
            const double exact = advance_nu(c, 1e-4, sigma, rho, 730.5);
            const double ref = fine_nu(c, 1e-4, sigma, rho, 730.5);
            EXPECT_NEAR(exact, ref, 1e-4 * std::max(std::abs(ref), 1e-8)) << rho << " " << sigma;
        }
    }
}

TEST(Controller, LeakageIsStableForStiffProducts) {
    const ControllerConfig c = config();
    const double rho = 10.0;  // k3 rho dt ~ 2.6e5, far beyond explicit Euler's limit
    double nu = 1.0;
    for (int k = 0; k < 50; ++k) {
        nu = advance_nu(c, nu, 0.4, rho, 730.5);
        ASSERT_TRUE(std::isfinite(nu));
    }
    EXPECT_NEAR(nu, leakage_equilibrium(c, 0.4, rho), 1e-15);
    EXPECT_THROW(leakage_equilibrium(c, 0.4, 0.0), DomainError);
}

TEST(Controller, UpdateUsesCurrentNuThenAdvances) {
    const ControllerConfig c = config(2.0, 4);
    ControllerState s;
    s.nu = 2e-5;
    s.rho = 0.0;
    const double sigma = 0.25;
    const auto q = control_update(c, s, sigma, 730.5);
    const double effort = -c.k1 * 0.5 + 2e-5;
    const double expected = units::flux_from_canonical(-(c.beta_0 * 2.0 / 4.0) * effort);
    ASSERT_EQ(q.size(), 4u);
    for (double v : q) EXPECT_NEAR(v, expected, 1e-9 * std::abs(expected));
    EXPECT_DOUBLE_EQ(s.nu, 2e-5 - 730.5 * c.k2);
    EXPECT_EQ(s.q_c_held, q);
    EXPECT_DOUBLE_EQ(s.last_sigma, sigma);
    // positive error (too many events) commands net injection reduction: Q_c > 0
    EXPECT_GT(q[0], 0.0);
}

TEST(Controller, UpdateRejectsNonFiniteError) {
    const ControllerConfig c = config();
    ControllerState s;
    EXPECT_THROW(control_update(c, s, std::nan(""), 1.0), NumericalError);
    EXPECT_THROW(control_update(c, s, 0.1, 0.0), ConfigError);
}

TEST(Controller, Saturate) {
    const std::vector<double> lo{-1.0, -1.0, -5.0}, hi{0.0, 1.0, 5.0};
    EXPECT_EQ(saturate(std::vector<double>{-3.0, 0.5, 9.0}, lo, hi), (std::vector<double>{-1.0, 0.5, 5.0}));
    EXPECT_THROW(saturate(std::vector<double>{1.0}, lo, hi), ConfigError);
}

TEST(Controller, AntiWindupRho) {
    const ControllerConfig c = config(2.0, 4);
    const std::vector<double> lo{-1e6, -1e6, -2e5, -1e6}, hi{0.0, 0.0, 0.0, 0.0};
    EXPECT_EQ(anti_windup_rho(std::vector<double>{-5.0, -5.0, -5.0, -5.0}, lo, hi, c), 0.0);
    // on the boundary counts as saturated; the narrowest violated well sets rho
    const double rho_wide = anti_windup_rho(std::vector<double>{0.0, -5.0, -5.0, -5.0}, lo, hi, c);
    EXPECT_NEAR(rho_wide, c.k2 * c.b0_pinv_norm() / units::flux_to_canonical(1e6), 1e-12 * rho_wide);
    const double rho_narrow = anti_windup_rho(std::vector<double>{0.0, -5.0, -3e5, -5.0}, lo, hi, c);
    EXPECT_NEAR(rho_narrow, c.k2 * c.b0_pinv_norm() / units::flux_to_canonical(2e5), 1e-12 * rho_narrow);
    EXPECT_THROW(anti_windup_rho(std::vector<double>{0.0}, std::vector<double>{0.0}, std::vector<double>{0.0}, c),
                 ConfigError);
}

TEST(Controller, RhoIsIndependentOfTheFluxUnit) {
    // rho = k2 ||B0+|| / width must be the same whether width is expressed in
    // canonical units or converted from m^3/month
    const ControllerConfig c = config(2.0, 4);
    const double width_m3 = 1e6;
    const double rho = anti_windup_rho(std::vector<double>{0.0}, std::vector<double>{-width_m3},
                                       std::vector<double>{0.0}, config(2.0, 1));
    const double canonical = c.k2 * (c.beta_0 * 2.0) / (width_m3 / 1e9 / 730.5);
    EXPECT_NEAR(rho, canonical, 1e-12 * canonical);
}

TEST(Controller, ConfigValidation) {
    ControllerConfig c = config();
    EXPECT_NO_THROW(c.validate());
    c.k3 = 1.0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = config();
    c.l = 0.5;
    EXPECT_THROW(c.validate(), ConfigError);
    c = config();
    c.volume = 0.0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = config();
    c.n_wells = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = config();
    c.reference = {{0.0, 0.0}, {1.0, 2.0}};
    EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Reference, PiecewiseConstant) {
    const ReferenceTrajectory r{{0.0, 100.0, 250.0}, {3.0, 2.0, 1.0}};
    EXPECT_NO_THROW(r.validate());
    EXPECT_EQ(r.at(-5.0), 3.0);
    EXPECT_EQ(r.at(99.9), 3.0);
    EXPECT_EQ(r.at(100.0), 2.0);
    EXPECT_EQ(r.at(1e9), 1.0);
    EXPECT_THROW((ReferenceTrajectory{{0.0}, {-1.0}}.validate()), ConfigError);
    EXPECT_THROW((ReferenceTrajectory{{}, {}}.validate()), ConfigError);
}
