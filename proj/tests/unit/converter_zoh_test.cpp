#include "seiscontrol/converter.hpp"
#include "seiscontrol/errors.hpp"
#include "seiscontrol/zoh.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace seiscontrol;

TEST(Converter, RawEstimateIsCountPerVolumeTime) {
    EXPECT_DOUBLE_EQ(raw_sr_estimate(12, 2.0, 730.5), 12.0 / 1461.0);
    EXPECT_DOUBLE_EQ(raw_sr_estimate(0, 2.0, 730.5), 0.0);
    EXPECT_THROW(raw_sr_estimate(1, 0.0, 1.0), ConfigError);
    EXPECT_THROW(raw_sr_estimate(1, 1.0, 0.0), ConfigError);
}

TEST(Converter, EmaAlpha) {
    EXPECT_DOUBLE_EQ(ema_alpha(730.5, 0.0), 1.0);
    EXPECT_NEAR(ema_alpha(730.5, 730.5), 1.0 - std::exp(-1.0), 1e-15);
    EXPECT_NEAR(ema_alpha(1e-6, 1.0), 1e-6, 1e-12);
    EXPECT_THROW(ema_alpha(0.0, 1.0), ConfigError);
    EXPECT_THROW(ema_alpha(1.0, -1.0), ConfigError);
}

TEST(Converter, EmaConvergesToConstantInputGeometrically) {
    ConverterState c;
    c.tau = 730.5;
    const double a = 1.0 - std::exp(-1.0);
    for (int k = 1; k <= 20; ++k) {
        c.update(3.0, 730.5);
        EXPECT_NEAR(c.y_R, 3.0 * (1.0 - std::pow(1.0 - a, k)), 1e-12);
    }
    EXPECT_DOUBLE_EQ(c.alpha, a);
}

TEST(Converter, ZeroTauPassesTheRawEstimate) {
    ConverterState c;
    c.tau = 0.0;
    c.update(5.0, 10.0);
    EXPECT_DOUBLE_EQ(c.y_R, 5.0);
    c.update(1.0, 10.0);
    EXPECT_DOUBLE_EQ(c.y_R, 1.0);
}

TEST(Converter, TrackingErrorNormalization) {
    EXPECT_DOUBLE_EQ(tracking_error(3.0, 1.0, 2.0, 4.0), 0.25);
    EXPECT_DOUBLE_EQ(tracking_error(1.0, 1.0, 2.0, 4.0), 0.0);
    EXPECT_THROW(tracking_error(1.0, 1.0, 0.0, 4.0), ConfigError);
}

TEST(Zoh, HoldsBetweenSamplesWithLeftClosedIntervals) {
    ZeroOrderHold h(100.0, 10.0, 2);
    EXPECT_THROW(h.at(100.0), StateError);
    h.latch(0, std::vector<double>{1.0, 2.0});
    EXPECT_EQ(h.at(100.0)[1], 2.0);
    EXPECT_EQ(h.at(109.999)[0], 1.0);
    EXPECT_THROW(h.at(110.0), StateError);  // sample 1 not latched yet
    h.latch(1, std::vector<double>{3.0, 4.0});
    EXPECT_EQ(h.at(110.0)[0], 3.0);
    EXPECT_EQ(h.last_sample(), 1);
    EXPECT_THROW(h.at(99.0), StateError);
}

TEST(Zoh, SampleIndexIsRobustToRounding) {
    const ZeroOrderHold h(0.0, 73.05 * 10, 1);
    for (int k = 0; k < 700; ++k) {
        double t = 0.0;
        for (int j = 0; j < 10 * k; ++j) t += 73.05;  // accumulated rounding
        EXPECT_EQ(h.sample_index(k * 730.5), k);
        EXPECT_EQ(h.sample_index(t), k);
    }
}

TEST(Zoh, RejectsMisuse) {
    EXPECT_THROW(ZeroOrderHold(0.0, 0.0, 1), ConfigError);
    ZeroOrderHold h(0.0, 1.0, 2);
    EXPECT_THROW(h.latch(0, std::vector<double>{1.0}), ConfigError);
    h.latch(3, std::vector<double>{1.0, 1.0});
    EXPECT_THROW(h.latch(3, std::vector<double>{1.0, 1.0}), StateError);
    EXPECT_THROW(h.latch(2, std::vector<double>{1.0, 1.0}), StateError);
}
