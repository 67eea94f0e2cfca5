#pragma once
// Quantum non-Gaussian character witness built on the vacuum and single-photon
// probabilities, optionally read out after an anti-squeezing conjugation.

#include <cstddef>
#include <functional>
#include <vector>

#include "kitten/density_matrix.hpp"

namespace kitten::witness {

/// Evenly spaced points lo..hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t count);

struct WitnessConfig {
    std::vector<double> a_grid = linspace(0.0, 1.0, 101);
    std::vector<double> s_grid = linspace(0.0, 1.0, 61);
    double r_max = 3.0;        ///< upper end of the Gaussian-boundary bracket
    double refine_tol = 1e-6;  ///< golden-section termination width

    void validate() const;
};

struct P0P1 {
    double p0 = 0.0;
    double p1 = 0.0;
};

struct TrajectoryPoint {
    double s = 0.0;
    double p0 = 0.0;
    double p1 = 0.0;
};

struct WitnessResult {
    double witness_value = 0.0;     ///< W(a_opt, s_opt) - W_G(a_opt)
    double a_opt = 0.0;
    double s_opt = 0.0;
    double p0 = 0.0;
    double p1 = 0.0;
    double classical_margin = 0.0;  ///< W(a_opt, s_opt) - e^(a_opt - 1)
    std::vector<TrajectoryPoint> trajectory;
    std::vector<double> skipped_s;  ///< grid points dropped for truncation overflow
};

struct GoldenResult {
    double x = 0.0;
    double f = 0.0;
};

/// Maximizes a unimodal f on [lo, hi] to bracket width `tol`. The endpoints are
/// compared too, so boundary maxima are returned exactly.
GoldenResult golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol);

/// Vacuum and single-photon probabilities of a pure squeezed vacuum with parameter r.
P0P1 gaussian_p0p1(double r);

/// W_G(a) = max over r in [0, r_max] of a p0(r) + p1(r).
double gaussian_boundary(double a, double r_max = 3.0);

/// max over mean photon number of a e^-n + n e^-n = e^(a-1).
double classical_boundary(double a);

/// <n|S^+(s) rho S(s)|n> for n = 0, 1.
P0P1 state_p0p1(const DensityMatrix& rho, double s);

struct AOptimum {
    double a = 0.0;
    double value = 0.0;  ///< a p0 + p1 - W_G(a)
};

/// Best a for a fixed (p0, p1): grid scan over cfg.a_grid then golden refinement.
AOptimum optimal_a(const P0P1& p, const WitnessConfig& cfg);

WitnessResult evaluate_witness(const DensityMatrix& rho, const WitnessConfig& cfg = {});

}  // namespace kitten::witness
