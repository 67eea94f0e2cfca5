#include <algorithm>
#include <cmath>
#include <string>

#include "../fock_core/math_util.hpp"
#include "kitten/errors.hpp"
#include "kitten/kernels.hpp"
#include "kitten/subtraction.hpp"
#include "subtraction_internal.hpp"

namespace kitten::subtraction {
namespace {

void check_reflectivity(double r2) {
    if (!(r2 > 0.0 && r2 < 1.0)) throw InvalidArgument("tap reflectivity r2 must lie in (0, 1)");
}

}  // namespace

ConditionalResult conditional_unnormalized(const DensityMatrix& rho_in, double r2, std::size_t k) {
    check_reflectivity(r2);
    const std::size_t dim = rho_in.dim();
    ConditionalResult res{DensityMatrix(dim, rho_in.trace_deficit()), 0.0};
    if (k >= dim) return res;
    // <i|out|j> = c_{i+k} c_{j+k} <i+k|rho|j+k>,  c_n = sqrt(C(n,k) r^k t^(n-k))
    const std::size_t len = dim - k;
    std::vector<double> c(len);
    for (std::size_t i = 0; i < len; ++i) c[i] = std::sqrt(detail::binomial_pmf(i + k, k, r2));
    for (std::size_t i = 0; i < len; ++i) {
        if (c[i] == 0.0) continue;
        simd::active().scaled_product_acc(c[i], c.data(), rho_in.row(i + k).data() + k,
                                          res.state.row(i).data(), len);
    }
    res.weight = res.state.trace();
    return res;
}

double subtraction_probability(const DensityMatrix& rho_in, double r2, std::size_t k) {
    check_reflectivity(r2);
    if (k >= rho_in.dim()) return 0.0;
    // Only the diagonal is needed: S(k) = sum_n C(n,k) r^k t^(n-k) rho_nn.
    double s = 0.0;
    for (std::size_t n = k; n < rho_in.dim(); ++n) s += detail::binomial_pmf(n, k, r2) * rho_in(n, n);
    return s;
}

SubtractionFamily subtraction_family(const DensityMatrix& rho_in, double r2) {
    SubtractionFamily fam;
    const std::size_t dim = rho_in.dim();
    fam.states.reserve(dim);
    fam.probabilities.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        ConditionalResult c = conditional_unnormalized(rho_in, r2, k);
        if (c.weight > 0.0) c.state.normalize();
        fam.probabilities.push_back(c.weight);
        fam.states.push_back(std::move(c.state));
    }
    return fam;
}

DensityMatrix pnrd_state(const DensityMatrix& rho_in, double r2, std::size_t m) {
    ConditionalResult c = conditional_unnormalized(rho_in, r2, m);
    if (!(c.weight > 0.0)) {
        throw ImpossibleHerald("a " + std::to_string(m) + "-photon herald has zero probability for this input");
    }
    return c.state.normalize();
}

namespace internal {

std::vector<std::vector<double>> response_matrix(std::size_t dim, const DetectorModel& det) {
    std::vector<std::vector<double>> p(dim, std::vector<double>(dim, 0.0));
    for (std::size_t m = 0; m < dim; ++m)
        for (std::size_t k = 0; k < dim; ++k) p[m][k] = detector_response(k, m, det);
    return p;
}

std::vector<double> click_marginals(const std::vector<std::vector<double>>& response,
                                    const std::vector<double>& s) {
    std::vector<double> pm(response.size(), 0.0);
    for (std::size_t m = 0; m < response.size(); ++m)
        for (std::size_t k = 0; k < s.size(); ++k) pm[m] += response[m][k] * s[k];
    return pm;
}

DensityMatrix mixture(const SubtractionFamily& fam, const std::vector<double>& weights) {
    const std::size_t dim = fam.states.front().dim();
    DensityMatrix out(dim, fam.states.front().trace_deficit());
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (weights[k] == 0.0) continue;
        out.accumulate(weights[k], fam.states[k]);
    }
    return out;
}

std::vector<double> bayes_from_family(const SubtractionFamily& fam,
                                      const std::vector<std::vector<double>>& response, std::size_t m,
                                      double* herald_probability) {
    const std::size_t dim = fam.probabilities.size();
    std::vector<double> q(dim, 0.0);
    double pm = 0.0;
    if (m < response.size()) {
        for (std::size_t k = 0; k < dim; ++k) pm += response[m][k] * fam.probabilities[k];
    }
    if (!(pm > 0.0)) {
        throw ImpossibleHerald("an " + std::to_string(m) + "-click herald has zero probability for this input");
    }
    for (std::size_t k = 0; k < dim; ++k) q[k] = response[m][k] * fam.probabilities[k] / pm;
    if (herald_probability) *herald_probability = pm;
    return q;
}

DensityMatrix resolving_state(const SubtractionFamily& fam, const DetectorModel& det, std::size_t m,
                              double* herald_probability) {
    const auto response = response_matrix(fam.probabilities.size(), det);
    return mixture(fam, bayes_from_family(fam, response, m, herald_probability));
}

DensityMatrix non_resolving_state(const SubtractionFamily& fam, const DetectorModel& det, std::size_t m,
                                  ClickWeighting weighting, double* herald_probability) {
    const std::size_t dim = fam.probabilities.size();
    const auto response = response_matrix(dim, det);
    const std::vector<double> marginals = click_marginals(response, fam.probabilities);
    const std::vector<double>& click_weight =
        weighting == ClickWeighting::marginal_click_probability ? marginals : fam.probabilities;

    // Collapse sum_{k>=m} W(k) Q(j|k) into one weight per photon number j, ascending k.
    std::vector<double> w(dim, 0.0);
    double total = 0.0;
    for (std::size_t k = m; k < dim; ++k) {
        if (!(marginals[k] > 0.0) || click_weight[k] == 0.0) continue;
        total += click_weight[k];
        const double scale = click_weight[k] / marginals[k];
        for (std::size_t j = 0; j < dim; ++j) w[j] += scale * response[k][j] * fam.probabilities[j];
    }
    if (!(total > 0.0)) {
        throw ImpossibleHerald("no click count >= " + std::to_string(m) + " is possible for this input");
    }
    for (double& v : w) v /= total;
    if (herald_probability) {
        double below = 0.0;
        for (std::size_t k = 0; k < m && k < dim; ++k) below += marginals[k];
        *herald_probability = std::max(0.0, 1.0 - below);
    }
    return mixture(fam, w);
}

}  // namespace internal

std::vector<double> bayes_weights(const DensityMatrix& rho_in, double r2, const DetectorModel& det,
                                  std::size_t m) {
    det.validate();
    const SubtractionFamily fam = subtraction_family(rho_in, r2);
    return internal::bayes_from_family(fam, internal::response_matrix(rho_in.dim(), det), m, nullptr);
}

DensityMatrix impnrd_state(const DensityMatrix& rho_in, double r2, const DetectorModel& det, std::size_t m) {
    det.validate();
    return internal::resolving_state(subtraction_family(rho_in, r2), det, m, nullptr);
}

DensityMatrix imnpnrd_state(const DensityMatrix& rho_in, double r2, const DetectorModel& det, std::size_t m,
                            ClickWeighting weighting) {
    det.validate();
    return internal::non_resolving_state(subtraction_family(rho_in, r2), det, m, weighting, nullptr);
}

DensityMatrix mode_mix(const DensityMatrix& projected, const DensityMatrix& unprojected, double s_prime) {
    if (!(s_prime >= 0.0 && s_prime <= 1.0)) throw InvalidArgument("mode purity must lie in [0, 1]");
    if (projected.dim() != unprojected.dim()) throw InvalidArgument("dimension mismatch in mode mixing");
    DensityMatrix out(projected.dim(), std::max(projected.trace_deficit(), unprojected.trace_deficit()));
    if (s_prime > 0.0) out.accumulate(s_prime, projected);
    if (s_prime < 1.0) out.accumulate(1.0 - s_prime, unprojected);
    return out;
}

}  // namespace kitten::subtraction
