#include <algorithm>
#include <cmath>
#include <string>

#include "kitten/errors.hpp"
#include "kitten/fock_core.hpp"
#include "kitten/kernels.hpp"

namespace kitten::fock {
namespace {

// Y = X * G for the sparse generator G = (s/2)(a^2 - a^+2):
//   G[n-2][n] = +h sqrt(n(n-1)),  G[n][n-2] = -h sqrt(n(n-1)),  h = s/2.
void multiply_by_generator(const std::vector<double>& x, std::vector<double>& y, std::size_t dim,
                           const std::vector<double>& g_upper) {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        const double* xr = x.data() + i * dim;
        double* yr = y.data() + i * dim;
        for (std::size_t n = 2; n < dim; ++n) {
            // column n receives x[i][n-2] * G[n-2][n]; column n-2 receives x[i][n] * G[n][n-2]
            yr[n] += xr[n - 2] * g_upper[n];
            yr[n - 2] -= xr[n] * g_upper[n];
        }
    }
}

void transpose_into(const std::vector<double>& a, std::vector<double>& at, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) at[j * n + i] = a[i * n + j];
}

}  // namespace

std::size_t padded_dim(std::size_t nmax, double s) {
    // Columns near the cutoff spread over roughly (1 + 3.5 s) times their level;
    // below that the truncated exponential is visibly wrong there.
    const std::size_t half = nmax + (nmax + 1) / 2 + 1;
    const auto grown = static_cast<std::size_t>(std::ceil(static_cast<double>(nmax + 1) * (1.0 + 3.5 * std::abs(s)))) + 10;
    return std::max(half, grown);
}

SqueezeOperator::SqueezeOperator(double s, std::size_t dim) : s_(s), dim_(dim), m_(dim * dim, 0.0) {
    if (!std::isfinite(s)) throw InvalidArgument("squeezing parameter must be finite");
    if (dim == 0) throw InvalidArgument("squeeze operator needs a non-empty basis");
    for (std::size_t i = 0; i < dim; ++i) m_[i * dim + i] = 1.0;
    if (s == 0.0 || dim < 3) return;

    std::vector<double> g_upper(dim, 0.0);
    double norm1 = 0.0;  // column-sum norm of G
    for (std::size_t n = 2; n < dim; ++n) {
        g_upper[n] = 0.5 * s * std::sqrt(static_cast<double>(n) * static_cast<double>(n - 1));
    }
    for (std::size_t n = 0; n < dim; ++n) {
        const double up = g_upper[n];
        const double down = n + 2 < dim ? g_upper[n + 2] : 0.0;
        norm1 = std::max(norm1, std::abs(up) + std::abs(down));
    }
    int squarings = 0;
    double scale = 1.0;
    while (norm1 * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    for (double& g : g_upper) g *= scale;

    // Taylor series of exp(G / 2^j) with sparse generator products.
    std::vector<double> term(m_);
    std::vector<double> next(dim * dim);
    for (int k = 1; k <= 40; ++k) {
        multiply_by_generator(term, next, dim, g_upper);
        const double inv_k = 1.0 / static_cast<double>(k);
        double tnorm = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i) {
            next[i] *= inv_k;
            tnorm = std::max(tnorm, std::abs(next[i]));
        }
        simd::axpy(1.0, next, m_);
        term.swap(next);
        if (tnorm < 1e-18) break;
    }
    std::vector<double> tmp(dim * dim);
    for (int j = 0; j < squarings; ++j) {
        simd::active().gemm(m_.data(), m_.data(), tmp.data(), dim, dim, dim);
        m_.swap(tmp);
    }
}

std::vector<double> SqueezeOperator::block(std::size_t n) const {
    n = std::min(n, dim_);
    std::vector<double> out(n * n);
    for (std::size_t i = 0; i < n; ++i) std::copy_n(m_.data() + i * dim_, n, out.data() + i * n);
    return out;
}

ConjugationResult squeeze_conjugate(const DensityMatrix& rho, double s, SqueezeDirection direction) {
    if (!(s >= 0.0)) throw InvalidArgument("squeezing parameter must be >= 0");
    const std::size_t dim = rho.dim();
    if (s == 0.0) return {rho, 0.0};
    const SqueezeOperator op(s, padded_dim(rho.nmax(), s));
    // rho lives on the first `dim` levels, so only the top-left block A of S enters:
    //   anti-squeeze: A^T rho A      squeeze: A rho A^T
    const std::vector<double> a = op.block(dim);
    std::vector<double> at(dim * dim);
    transpose_into(a, at, dim);
    const std::vector<double>& left = direction == SqueezeDirection::anti_squeeze ? at : a;
    const std::vector<double>& right = direction == SqueezeDirection::anti_squeeze ? a : at;

    std::vector<double> tmp(dim * dim);
    std::vector<double> res(dim * dim);
    const auto& k = simd::active();
    k.gemm(rho.elements().data(), right.data(), tmp.data(), dim, dim, dim);
    k.gemm(left.data(), tmp.data(), res.data(), dim, dim, dim);
    // Symmetrize away rounding asymmetry.
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
            const double v = 0.5 * (res[i * dim + j] + res[j * dim + i]);
            res[i * dim + j] = v;
            res[j * dim + i] = v;
        }
    DensityMatrix out(dim, std::move(res), rho.trace_deficit());
    const double loss = rho.trace() - out.trace();
    if (loss > kConjugationTraceTolerance) {
        throw TruncationOverflow("squeezing conjugation at s=" + std::to_string(s) + " lost " +
                                 std::to_string(loss) + " of the trace to truncation");
    }
    out.set_trace_deficit(rho.trace_deficit() + std::max(0.0, loss));
    return {std::move(out), loss};
}

}  // namespace kitten::fock
