#include <cmath>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <gtest/gtest.h>

#include "kitten/errors.hpp"
#include "kitten/subtraction.hpp"
#include "kitten/witness.hpp"

namespace {

using namespace kitten;
using namespace kitten::witness;
using big = boost::multiprecision::cpp_dec_float_50;

DensityMatrix dark_count_kitten() {
    subtraction::ExperimentParams p;
    p.mode_purity = 1.0;
    p.eta_hd = 1.0;
    return subtraction::prepare_kitten(p, subtraction::make_detector(subtraction::DetectorKind::imnpnrd, 1e-4, 0.05));
}

TEST(GaussianPoints, AgreeWithHighPrecision) {
    for (double r : {0.0, 0.2, 0.55, 1.3}) {
        const big br(r);
        const big e = exp(-exp(br) * sinh(br));
        const big ch = cosh(br);
        const big p0 = e / ch;
        const big p1 = (exp(4 * br) - 1) / 4 * e / (ch * ch * ch);
        const auto got = gaussian_p0p1(r);
        EXPECT_NEAR(got.p0, p0.convert_to<double>(), 1e-15);
        EXPECT_NEAR(got.p1, p1.convert_to<double>(), 1e-15);
        EXPECT_LE(got.p0 + got.p1, 1.0 + 1e-15);
    }
    EXPECT_EQ(gaussian_p0p1(0.0).p0, 1.0);
    EXPECT_EQ(gaussian_p0p1(0.0).p1, 0.0);
    EXPECT_LT(gaussian_p0p1(8.0).p0 + gaussian_p0p1(8.0).p1, 1e-100);
}

TEST(GoldenSection, FindsKnownMaxima) {
    const auto r = golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-9);
    EXPECT_NEAR(r.x, 0.3, 1e-8);
    const auto edge = golden_section_max([](double x) { return x; }, 0.0, 2.0, 1e-9);
    EXPECT_EQ(edge.x, 2.0);
}

TEST(Boundary, ClassicalClosedForm) {
    for (int i = 0; i <= 100; ++i) {
        const double a = i / 100.0;
        // brute maximization over mean photon number
        double best = 0.0;
        for (int j = 0; j <= 20000; ++j) {
            const double n = j * 1e-4;
            best = std::max(best, (a + n) * std::exp(-n));
        }
        EXPECT_NEAR(classical_boundary(a), best, 1e-8);
        EXPECT_NEAR(classical_boundary(a), std::exp(a - 1), 1e-15);
    }
}

TEST(Boundary, GaussianDominatesClassicalAndIsMonotone) {
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double a = i / 100.0;
        const double wg = gaussian_boundary(a);
        EXPECT_GE(wg - classical_boundary(a), -1e-9) << a;
        EXPECT_GE(wg, a - 1e-15);
        EXPECT_GE(wg, prev - 1e-12);
        prev = wg;
    }
    EXPECT_NEAR(gaussian_boundary(1.0), 1.0, 1e-6);
}

TEST(Boundary, ZeroWeightIsPeakSinglePhoton) {
    double best = 0.0;
    for (int j = 0; j <= 300000; ++j) best = std::max(best, gaussian_p0p1(j * 1e-5).p1);
    EXPECT_NEAR(gaussian_boundary(0.0), best, 1e-9);
}

TEST(Boundary, NarrowBracketIsWidened) {
    // optimum near 0.55 lies outside [0, 0.4]; one widening recovers it
    EXPECT_NEAR(gaussian_boundary(0.0, 0.4), gaussian_boundary(0.0), 1e-12);
    EXPECT_THROW(gaussian_boundary(0.0, 0.1), NumericalError);
}

TEST(StateP0P1, Examples) {
    const auto vac = DensityMatrix::vacuum(41);
    EXPECT_EQ(state_p0p1(vac, 0.0).p0, 1.0);
    const auto one = DensityMatrix::fock(41, 1);
    EXPECT_EQ(state_p0p1(one, 0.0).p1, 1.0);
    for (double xi : {0.2, 0.538}) {
        const auto sv = fock::squeezed_vacuum_dm({xi, 40});
        const auto p = state_p0p1(sv, xi);
        EXPECT_NEAR(p.p0, 1.0, 1e-4);
        EXPECT_NEAR(p.p1, 0.0, 1e-4);
    }
    // vacuum read through an anti-squeeze looks like a squeezed vacuum
    EXPECT_NEAR(state_p0p1(vac, 0.4).p0, 1.0 / std::cosh(0.4), 1e-9);
}

TEST(StateP0P1, AgreesWithFullConjugation) {
    const auto k = dark_count_kitten();
    for (double s : {0.1, 0.37, 0.8}) {
        const auto full = fock::squeeze_conjugate(k, s, fock::SqueezeDirection::anti_squeeze).state;
        const auto p = state_p0p1(k, s);
        EXPECT_NEAR(p.p0, full(0, 0), 1e-12);
        EXPECT_NEAR(p.p1, full(1, 1), 1e-12);
    }
}

TEST(Witness, VacuumIsNotCertified) {
    const auto r = evaluate_witness(DensityMatrix::vacuum(41));
    EXPECT_LE(r.witness_value, 0.0);
    EXPECT_LE(r.classical_margin, 0.0);
}

TEST(Witness, NoFalsePositivesOnGaussianStates) {
    for (double xi : {0.1, 0.3, 0.538}) {
        for (double r1 : {0.0, 0.1771, 0.4}) {
            const auto rho = fock::impure_squeezed_vacuum({xi, 40}, r1);
            const auto r = evaluate_witness(rho);
            EXPECT_LE(r.witness_value, 1e-6) << xi << ' ' << r1;
            for (const auto& t : r.trajectory) EXPECT_LE(t.p0 + t.p1, 1.0 + 1e-9);
        }
    }
}

DensityMatrix table_kitten() {
    return subtraction::prepare_kitten({}, subtraction::make_detector(subtraction::DetectorKind::imnpnrd, 1e-4, 0.05));
}

double best_classical_margin(const WitnessResult& r, const WitnessConfig& cfg) {
    double margin = -1.0;
    for (const auto& t : r.trajectory)
        for (double a : cfg.a_grid) margin = std::max(margin, a * t.p0 + t.p1 - classical_boundary(a));
    return margin;
}

TEST(Witness, ImpureSqueezedVacuumStaysGaussian) {
    const auto rho = fock::impure_squeezed_vacuum(fock::SqueezedVacuumSpec::from_db(-4.67), 0.1771);
    WitnessConfig cfg;
    cfg.s_grid = linspace(0.18, 0.57, 40);
    EXPECT_LE(evaluate_witness(rho, cfg).witness_value, 1e-6);
}

// Expected to exceed the coherent-state boundary somewhere on the trajectory.
TEST(Witness, ImpureSqueezedVacuumExceedsClassicalBoundary) {
    const auto rho = fock::impure_squeezed_vacuum(fock::SqueezedVacuumSpec::from_db(-4.67), 0.1771);
    WitnessConfig cfg;
    cfg.s_grid = linspace(0.18, 0.57, 40);
    EXPECT_GT(best_classical_margin(evaluate_witness(rho, cfg), cfg), 0.0);
}

TEST(Witness, DarkCountKittenCrossesAfterAntiSqueezing) {
    const auto r = evaluate_witness(dark_count_kitten());
    EXPECT_GT(r.witness_value, 0.0);
    EXPECT_GT(r.s_opt, 0.0);
    EXPECT_LE(r.p0 + r.p1, 1.0 + 1e-9);
}

TEST(Witness, DarkCountKittenIsGaussianWithoutAntiSqueezing) {
    WitnessConfig at_zero;
    at_zero.s_grid = {0.0};
    EXPECT_LE(evaluate_witness(dark_count_kitten(), at_zero).witness_value, 0.0);
}

TEST(Witness, TypicalSettingsKittenNeedsAntiSqueezing) {
    const auto k = table_kitten();
    WitnessConfig at_zero;
    at_zero.s_grid = {0.0};
    EXPECT_LE(evaluate_witness(k, at_zero).witness_value, 0.0);
    const auto r = evaluate_witness(k);
    EXPECT_GT(r.witness_value, 0.0);
    EXPECT_GT(r.s_opt, 0.0);
}

TEST(Witness, LossNeverIncreasesTheWitness) {
    const auto k = dark_count_kitten();
    const double base = evaluate_witness(k).witness_value;
    for (double eta : {0.9, 0.7, 0.5}) {
        EXPECT_LE(evaluate_witness(fock::loss_channel(k, eta)).witness_value, base + 1e-6) << eta;
    }
}

TEST(Witness, RefinementNeverWorsensTheGrid) {
    const auto k = dark_count_kitten();
    const auto r = evaluate_witness(k);
    double grid_best = -1.0;
    WitnessConfig cfg;
    for (std::size_t i = 0; i < cfg.a_grid.size(); ++i)
        for (const auto& t : r.trajectory)
            grid_best = std::max(grid_best, cfg.a_grid[i] * t.p0 + t.p1 - gaussian_boundary(cfg.a_grid[i]));
    EXPECT_GE(r.witness_value, grid_best);
    EXPECT_NEAR(r.witness_value, r.a_opt * r.p0 + r.p1 - gaussian_boundary(r.a_opt), 1e-12);
}

TEST(Witness, ConfigValidation) {
    WitnessConfig cfg;
    cfg.a_grid = {0.5, 0.2};
    EXPECT_THROW(cfg.validate(), InvalidArgument);
    cfg = WitnessConfig{};
    cfg.s_grid.clear();
    EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(Witness, AllGridOverflowIsAnError) {
    WitnessConfig cfg;
    cfg.s_grid = {2.5, 3.0};
    EXPECT_THROW(evaluate_witness(DensityMatrix::fock(11, 9), cfg), TruncationOverflow);
}

}  // namespace
