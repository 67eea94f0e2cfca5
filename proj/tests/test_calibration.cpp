#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kitten/calibration.hpp"
#include "kitten/errors.hpp"

namespace {

using namespace kitten;
using namespace kitten::calibration;

TEST(Calibration, WorkedExample) {
    const auto r = calibrate(0.661, 1.995, 0.68, 0.08);
    EXPECT_NEAR(r.v0, 0.341, 0.001);
    EXPECT_NEAR(r.v0_db, -4.67, 0.02);
    EXPECT_NEAR(r.r_total, 0.2438, 0.0005);
    EXPECT_NEAR(r.r1, 0.1771, 0.002);
}

TEST(Calibration, HomodyneEfficiency) {
    EXPECT_EQ(homodyne_efficiency(1, 1, 1), 1.0);
    EXPECT_NEAR(homodyne_efficiency(0.99, 0.95, 0.98), 0.99 * 0.95 * 0.9604, 1e-15);
    EXPECT_EQ(homodyne_efficiency(0.7, 1, 1), 0.7);
    EXPECT_THROW(homodyne_efficiency(0.0, 1, 1), CalibrationError);
    EXPECT_THROW(homodyne_efficiency(1, 1, 1.2), CalibrationError);
}

TEST(Calibration, PureSqueezing) {
    EXPECT_NEAR(estimate_pure_squeezing(0.9, 1.2), 0.5, 1e-12);
    EXPECT_NEAR(estimate_pure_squeezing(0.25, 4.0), 0.25, 1e-12);
    EXPECT_THROW(estimate_pure_squeezing(0.5, 1.0), CalibrationError);
    EXPECT_THROW(estimate_pure_squeezing(1.1, 2.0), CalibrationError);
}

TEST(Calibration, TotalImpurity) {
    EXPECT_NEAR(estimate_total_impurity(0.5, 2.0, 1.0), 0.0, 1e-12);
    // A pure pair claimed to pass an inefficient detector needs negative impurity.
    EXPECT_THROW(estimate_total_impurity(0.5, 2.0, 0.8), CalibrationError);
    // The same pair after 20% loss, read with eta_HD = 1, shows the loss as impurity.
    const double vs = 0.8 * 0.5 + 0.2, va = 0.8 * 2.0 + 0.2;
    EXPECT_NEAR(estimate_total_impurity(vs, va, 1.0), 0.2, 1e-12);
    // V_sqz + V_asqz == 2 leaves the formula undefined
    EXPECT_THROW(estimate_total_impurity(0.5, 1.5, 0.9), CalibrationError);
}

TEST(Calibration, SplitImpurity) {
    EXPECT_NEAR(split_impurity(0.2438, 0.08), 0.1780, 0.0005);
    EXPECT_NEAR(split_impurity(0.3, 0.0), 0.3, 1e-15);
    EXPECT_THROW(split_impurity(0.0, 0.08), CalibrationError);
}

TEST(Calibration, Decibels) {
    EXPECT_NEAR(to_db(0.341), -4.67, 0.005);
    EXPECT_EQ(to_db(1.0), 0.0);
    EXPECT_NEAR(to_db(1.995), 3.0, 0.005);
    EXPECT_THROW(to_db(0.0), InvalidArgument);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-30, 30);
    for (int i = 0; i < 200; ++i) {
        const double db = u(rng);
        EXPECT_NEAR(to_db(from_db(db)), db, 1e-12);
    }
}

// Forward model: the mixing of V0 and 1/V0 with vacuum by the effective transmission.
TEST(Calibration, RoundTripThroughForwardModel) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> v0d(0.05, 0.95), rd(0.0, 0.6), ed(0.3, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double v0 = v0d(rng), r_total = rd(rng), eta = ed(rng);
        const double g = eta * (1 - r_total);
        const double v_sqz = g * v0 + (1 - g);
        const double v_asqz = g / v0 + (1 - g);
        if (std::abs(2 - v_sqz - v_asqz) < 1e-6) continue;
        EXPECT_NEAR(estimate_pure_squeezing(v_sqz, v_asqz), v0, 1e-9);
        EXPECT_NEAR(estimate_total_impurity(v_sqz, v_asqz, eta), r_total, 1e-9);
    }
}

TEST(Calibration, SplitInvertsComposition) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 0.9);
    for (int i = 0; i < 500; ++i) {
        const double r1 = u(rng), r2 = u(rng);
        const double r_total = 1 - (1 - r1) * (1 - r2);
        EXPECT_NEAR(split_impurity(r_total, r2), r1, 1e-12);
    }
}

}  // namespace
