#pragma once
// Truncated Fock-space states, Gaussian channel primitives and Wigner evaluation.

#include <cstddef>
#include <span>
#include <vector>

#include "kitten/density_matrix.hpp"

namespace kitten::fock {

inline constexpr std::size_t kDefaultNmax = 40;
/// Tail mass beyond the cutoff above which a state is flagged as under-resolved.
inline constexpr double kCutoffTailTolerance = 1e-3;
/// Trace lost during squeezing conjugation above which the result is rejected.
inline constexpr double kConjugationTraceTolerance = 1e-4;

/// Squeezing parameter xi >= 0 at zero squeezing angle, with the basis cutoff.
/// Quadrature variances are in vacuum units: V0 = exp(-2 xi), dB = 10 log10(V0).
struct SqueezedVacuumSpec {
    double xi = 0.0;
    std::size_t nmax = kDefaultNmax;

    static SqueezedVacuumSpec from_variance(double v0, std::size_t nmax = kDefaultNmax);
    static SqueezedVacuumSpec from_db(double v0_db, std::size_t nmax = kDefaultNmax);

    double variance() const;
    double v0_db() const;
    void validate() const;
};

struct SqueezedAmplitudes {
    std::vector<double> values;  // indices 0..nmax
    double tail_mass = 0.0;      // 1 - sum of squares
    bool insufficient_cutoff = false;
};

/// Fock amplitudes of the pure squeezed vacuum; odd entries are exactly zero.
SqueezedAmplitudes squeezed_vacuum_coeffs(double xi, std::size_t nmax);

DensityMatrix squeezed_vacuum_dm(const SqueezedVacuumSpec& spec);

/// Bosonic loss with intensity transmission eta (generalized Bernoulli map).
DensityMatrix loss_channel(const DensityMatrix& rho, double eta);

/// Pure squeezed vacuum after a beam splitter of intensity reflectivity r1 with the
/// reflected port traced out. Evaluated from the two-mode expansion directly.
DensityMatrix impure_squeezed_vacuum(const SqueezedVacuumSpec& spec, double r1);

/// True when the state's recorded truncation deficit exceeds kCutoffTailTolerance.
bool insufficient_cutoff(const DensityMatrix& rho);

/// W(0,0) with the convention that vacuum evaluates to 1/pi.
double wigner_origin(const DensityMatrix& rho);

struct WignerGrid {
    std::vector<double> x;
    std::vector<double> p;
    std::vector<double> values;  // row-major, values[ix * p.size() + ip]

    double at(std::size_t ix, std::size_t ip) const { return values[ix * p.size() + ip]; }
};

/// Wigner function on the x/p grid, in units where the vacuum is exp(-x^2-p^2)/pi.
WignerGrid wigner_grid(const DensityMatrix& rho, std::span<const double> x_grid,
                       std::span<const double> p_grid);

std::vector<double> photon_distribution(const DensityMatrix& rho);

enum class SqueezeDirection {
    squeeze,       ///< S rho S^+
    anti_squeeze,  ///< S^+ rho S  (undoes the squeezing of the input vacuum convention)
};

/// Real orthogonal matrix of S(s) = exp((s/2)(a^2 - a^+2)) in a truncated basis,
/// obtained by scaling-and-squaring of the truncated generator.
class SqueezeOperator {
public:
    SqueezeOperator(double s, std::size_t dim);

    double parameter() const noexcept { return s_; }
    std::size_t dim() const noexcept { return dim_; }
    double operator()(std::size_t row, std::size_t col) const noexcept { return m_[row * dim_ + col]; }
    std::span<const double> elements() const noexcept { return m_; }

    /// Top-left block rows/cols 0..n-1, row-major.
    std::vector<double> block(std::size_t n) const;

private:
    double s_;
    std::size_t dim_;
    std::vector<double> m_;
};

/// Basis size used while conjugating a state with cutoff nmax: at least 50% padding,
/// more for strong squeezing so that every column up to nmax is converged.
std::size_t padded_dim(std::size_t nmax, double s);

struct ConjugationResult {
    DensityMatrix state;
    double trace_loss = 0.0;
};

/// Conjugates rho by the squeezing operator in a padded basis and re-truncates.
/// Throws TruncationOverflow when more than kConjugationTraceTolerance is lost.
ConjugationResult squeeze_conjugate(const DensityMatrix& rho, double s, SqueezeDirection direction);

}  // namespace kitten::fock
