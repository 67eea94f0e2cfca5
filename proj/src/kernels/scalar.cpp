#include <cmath>
#include <numbers>

#include "kernels_impl.hpp"

namespace kitten::simd {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scaled_product_acc_scalar(double a, const double* x, const double* z, double* y,
                               std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i] * z[i];
}

void gemm_scalar(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                 std::size_t n) {
    for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = c + i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const double ail = a[i * k + l];
            if (ail == 0.0) continue;
            const double* brow = b + l * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += ail * brow[j];
        }
    }
}

void wigner_scalar(const double* coef, std::size_t dim, const double* xs, const double* ps,
                   double* out, std::size_t count) {
    for (std::size_t q = 0; q < count; ++q) {
        const double x = xs[q];
        const double p = ps[q];
        const double r2 = x * x + p * p;
        const double u = 2.0 * r2;
        // zr + i zi = (sqrt2 (x + i p))^d
        const double wr = std::numbers::sqrt2 * x;
        const double wi = std::numbers::sqrt2 * p;
        double zr = 1.0;
        double zi = 0.0;
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double* row = coef + d * dim;
            const std::size_t len = dim - d;
            const double dd = static_cast<double>(d);
            double lprev = 1.0;
            double sum = row[0] * lprev;
            if (len > 1) {
                double lcur = 1.0 + dd - u;
                sum += row[1] * lcur;
                for (std::size_t n = 1; n + 1 < len; ++n) {
                    const double nn = static_cast<double>(n);
                    const double lnext = ((2.0 * nn + 1.0 + dd - u) * lcur - (nn + dd) * lprev) / (nn + 1.0);
                    lprev = lcur;
                    lcur = lnext;
                    sum += row[n + 1] * lcur;
                }
            }
            acc += sum * zr;
            const double nzr = zr * wr - zi * wi;
            zi = zr * wi + zi * wr;
            zr = nzr;
        }
        out[q] = acc * std::exp(-r2) * std::numbers::inv_pi;
    }
}

constexpr KernelTable kScalar{
    "scalar", dot_scalar, axpy_scalar, scaled_product_acc_scalar, gemm_scalar, wigner_scalar,
};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace kitten::simd
