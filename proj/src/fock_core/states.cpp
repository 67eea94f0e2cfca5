#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kitten/errors.hpp"
#include "kitten/fock_core.hpp"
#include "kitten/kernels.hpp"
#include "math_util.hpp"

namespace kitten::fock {

SqueezedVacuumSpec SqueezedVacuumSpec::from_variance(double v0, std::size_t nmax) {
    if (!(v0 > 0.0) || v0 > 1.0) throw InvalidArgument("squeezed variance must lie in (0, 1]");
    SqueezedVacuumSpec spec{-0.5 * std::log(v0), nmax};
    return spec;
}

SqueezedVacuumSpec SqueezedVacuumSpec::from_db(double v0_db, std::size_t nmax) {
    if (!(v0_db <= 0.0)) throw InvalidArgument("squeezing level in dB must be <= 0");
    return from_variance(std::pow(10.0, v0_db / 10.0), nmax);
}

double SqueezedVacuumSpec::variance() const { return std::exp(-2.0 * xi); }

double SqueezedVacuumSpec::v0_db() const { return 10.0 * std::log10(variance()); }

void SqueezedVacuumSpec::validate() const {
    if (!(xi >= 0.0) || !std::isfinite(xi)) throw InvalidArgument("squeezing parameter must be finite and >= 0");
}

SqueezedAmplitudes squeezed_vacuum_coeffs(double xi, std::size_t nmax) {
    if (!(xi >= 0.0) || !std::isfinite(xi)) throw InvalidArgument("squeezing parameter must be finite and >= 0");
    SqueezedAmplitudes out;
    out.values.assign(nmax + 1, 0.0);
    const double t = std::tanh(xi);
    // alpha_{2n+2} / alpha_{2n} = -tanh(xi) * sqrt((2n+1)/(2n+2))
    double a = 1.0 / std::sqrt(std::cosh(xi));
    double norm = 0.0;
    for (std::size_t n = 0; 2 * n <= nmax; ++n) {
        out.values[2 * n] = a;
        norm += a * a;
        const double two_n = 2.0 * static_cast<double>(n);
        a *= -t * std::sqrt((two_n + 1.0) / (two_n + 2.0));
    }
    out.tail_mass = std::max(0.0, 1.0 - norm);
    out.insufficient_cutoff = out.tail_mass > kCutoffTailTolerance;
    return out;
}

DensityMatrix squeezed_vacuum_dm(const SqueezedVacuumSpec& spec) {
    spec.validate();
    const SqueezedAmplitudes amps = squeezed_vacuum_coeffs(spec.xi, spec.nmax);
    return DensityMatrix::pure(amps.values, amps.tail_mass);
}

DensityMatrix loss_channel(const DensityMatrix& rho, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidArgument("loss transmission must lie in [0, 1]");
    const std::size_t dim = rho.dim();
    DensityMatrix out(dim, rho.trace_deficit());
    if (eta == 1.0) {
        out = rho;
        return out;
    }
    // <l|out|n> = sum_k B_k[l] B_k[n] <l+k|rho|n+k>,  B_k[l] = sqrt(C(l+k,l) eta^l (1-eta)^k)
    std::vector<double> b(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const std::size_t len = dim - k;
        for (std::size_t l = 0; l < len; ++l) b[l] = std::sqrt(detail::binomial_pmf(l + k, l, eta));
        for (std::size_t l = 0; l < len; ++l) {
            if (b[l] == 0.0) continue;
            const double* src = rho.row(l + k).data() + k;
            simd::active().scaled_product_acc(b[l], b.data(), src, out.row(l).data(), len);
        }
    }
    return out;
}

DensityMatrix impure_squeezed_vacuum(const SqueezedVacuumSpec& spec, double r1) {
    spec.validate();
    if (!(r1 >= 0.0 && r1 < 1.0)) throw InvalidArgument("impurity r1 must lie in [0, 1)");
    const SqueezedAmplitudes amps = squeezed_vacuum_coeffs(spec.xi, spec.nmax);
    const std::size_t dim = spec.nmax + 1;
    DensityMatrix out(dim, amps.tail_mass);
    const double t1 = 1.0 - r1;
    const std::size_t half = spec.nmax / 2;
    const double log_r = r1 > 0.0 ? std::log(r1) : 0.0;
    const double log_t = std::log(t1);
    // rho_t1 = sum_{n,b} sum_k sqrt((2n)!(2b)!/((2n-k)!(2b-k)!)) a_2n a_2b r^k t^(n+b-k)/k! |2n-k><2b-k|
    for (std::size_t n = 0; n <= half; ++n) {
        for (std::size_t b = 0; b <= half; ++b) {
            const double ab = amps.values[2 * n] * amps.values[2 * b];
            const std::size_t kmax = 2 * std::min(n, b);
            for (std::size_t k = 0; k <= kmax; ++k) {
                if (k > 0 && r1 == 0.0) break;
                const double log_mag =
                    0.5 * (detail::log_factorial(2 * n) + detail::log_factorial(2 * b) -
                           detail::log_factorial(2 * n - k) - detail::log_factorial(2 * b - k)) -
                    detail::log_factorial(k) + static_cast<double>(k) * log_r +
                    static_cast<double>(n + b - k) * log_t;
                out(2 * n - k, 2 * b - k) += ab * std::exp(log_mag);
            }
        }
    }
    return out;
}

bool insufficient_cutoff(const DensityMatrix& rho) { return rho.trace_deficit() > kCutoffTailTolerance; }

double wigner_origin(const DensityMatrix& rho) {
    double parity = 0.0;
    for (std::size_t n = 0; n < rho.dim(); ++n) parity += (n % 2 == 0 ? 1.0 : -1.0) * rho(n, n);
    return parity * std::numbers::inv_pi;
}

WignerGrid wigner_grid(const DensityMatrix& rho, std::span<const double> x_grid,
                       std::span<const double> p_grid) {
    const std::size_t dim = rho.dim();
    // coef[d][n] = c_d (-1)^n sqrt(n!/(n+d)!) rho_{n+d,n}, c_0 = 1, c_d = 2 (real symmetric rho)
    std::vector<double> coef(dim * dim, 0.0);
    for (std::size_t d = 0; d < dim; ++d) {
        const double c = d == 0 ? 1.0 : 2.0;
        for (std::size_t n = 0; n + d < dim; ++n) {
            const double ratio = std::exp(0.5 * (detail::log_factorial(n) - detail::log_factorial(n + d)));
            coef[d * dim + n] = c * (n % 2 == 0 ? 1.0 : -1.0) * ratio * rho(n + d, n);
        }
    }
    WignerGrid grid;
    grid.x.assign(x_grid.begin(), x_grid.end());
    grid.p.assign(p_grid.begin(), p_grid.end());
    const std::size_t count = x_grid.size() * p_grid.size();
    std::vector<double> xs(count);
    std::vector<double> ps(count);
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        for (std::size_t j = 0; j < p_grid.size(); ++j) {
            xs[i * p_grid.size() + j] = x_grid[i];
            ps[i * p_grid.size() + j] = p_grid[j];
        }
    }
    grid.values.resize(count);
    simd::active().wigner(coef.data(), dim, xs.data(), ps.data(), grid.values.data(), count);
    return grid;
}

std::vector<double> photon_distribution(const DensityMatrix& rho) { return rho.diagonal(); }

}  // namespace kitten::fock
