#pragma once
// Conditional photon subtraction: tap beam splitter, detector models and the
// end-to-end kitten preparation pipeline.
//
// Reflectivities and transmissions are intensity fractions (r + t = 1); field
// amplitudes enter as sqrt(r), sqrt(t).

#include <cstddef>
#include <string_view>
#include <vector>

#include "kitten/density_matrix.hpp"
#include "kitten/fock_core.hpp"

namespace kitten::subtraction {

/// Dark-count probability per gate, quantum efficiency and resolving ability of
/// the heralding detector. `ideal` forces pdc = 0 and eta = 1.
struct DetectorModel {
    double pdc = 0.0;
    double eta = 1.0;
    bool resolving = true;
    bool ideal = true;
    unsigned m = 1;  ///< click count that heralds success

    double effective_pdc() const noexcept { return ideal ? 0.0 : pdc; }
    double effective_eta() const noexcept { return ideal ? 1.0 : eta; }
    void validate() const;
};

/// The four detector configurations compared throughout the analysis.
enum class DetectorKind { pnrd, npnrd, impnrd, imnpnrd };

std::string_view to_string(DetectorKind kind);
DetectorKind parse_detector_kind(std::string_view name);
/// Builds the model for `kind` from an imperfect device's (pdc, eta).
DetectorModel make_detector(DetectorKind kind, double pdc, double eta, unsigned m = 1);
DetectorKind kind_of(const DetectorModel& det);

struct ExperimentParams {
    fock::SqueezedVacuumSpec spec = fock::SqueezedVacuumSpec::from_db(-4.67);
    double r1 = 0.1771;          ///< input impurity
    double r2 = 0.08;            ///< tap reflectivity
    double mode_purity = 0.8;    ///< s'
    double eta_hd = 0.85;        ///< homodyne efficiency

    double t2() const noexcept { return 1.0 - r2; }
    void validate() const;
};

/// How the non-resolving mixture weighs each click count. The published mixture
/// leaves its weight undefined; the marginal click probability is the default.
enum class ClickWeighting { marginal_click_probability, subtraction_probability };

struct ConditionalResult {
    DensityMatrix state;  ///< unnormalized; trace == weight
    double weight = 0.0;  ///< probability S(k) that exactly k photons were tapped
};

/// E_k rho E_k^T with E_k = sqrt(r2^k / k!) t2^(n/2) a^k (n counted after annihilation).
ConditionalResult conditional_unnormalized(const DensityMatrix& rho_in, double r2, std::size_t k);

/// S(k) for one k.
double subtraction_probability(const DensityMatrix& rho_in, double r2, std::size_t k);

/// All normalized k-photon-subtracted states and their probabilities S(k), k = 0..nmax.
/// States with S(k) == 0 are left as zero matrices.
struct SubtractionFamily {
    std::vector<DensityMatrix> states;
    std::vector<double> probabilities;
};
SubtractionFamily subtraction_family(const DensityMatrix& rho_in, double r2);

/// Ideal resolving herald on m photons; normalized.
DensityMatrix pnrd_state(const DensityMatrix& rho_in, double r2, std::size_t m);

/// P(m clicks | k photons) with Poissonian dark counts and binomial detection.
double detector_response(std::size_t k, std::size_t m, const DetectorModel& det);

/// Q(k|m) over k = 0..nmax by Bayes' rule.
std::vector<double> bayes_weights(const DensityMatrix& rho_in, double r2, const DetectorModel& det,
                                  std::size_t m);

/// Resolving (possibly imperfect) detector reporting exactly m clicks.
DensityMatrix impnrd_state(const DensityMatrix& rho_in, double r2, const DetectorModel& det,
                           std::size_t m);

/// Non-resolving (possibly imperfect) detector reporting at least m clicks.
DensityMatrix imnpnrd_state(const DensityMatrix& rho_in, double r2, const DetectorModel& det,
                            std::size_t m,
                            ClickWeighting weighting = ClickWeighting::marginal_click_probability);

/// s' * projected + (1 - s') * unprojected
DensityMatrix mode_mix(const DensityMatrix& projected, const DensityMatrix& unprojected, double s_prime);

struct KittenState {
    DensityMatrix state;
    double herald_probability = 0.0;
};

/// Impure input -> heralded subtraction -> mode-purity mixing -> homodyne loss.
KittenState prepare_kitten_detailed(const ExperimentParams& params, const DetectorModel& det,
                                    ClickWeighting weighting = ClickWeighting::marginal_click_probability);

DensityMatrix prepare_kitten(const ExperimentParams& params, const DetectorModel& det);

}  // namespace kitten::subtraction
