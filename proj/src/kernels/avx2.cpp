// Built with -mavx2 -mfma. Nothing in this file may run before the dispatcher
// has confirmed CPU support.

#include <cmath>
#include <numbers>

#include "kernels_impl.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace kitten::simd {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scaled_product_acc_avx2(double a, const double* x, const double* z, double* y,
                             std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ax = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(ax, _mm256_loadu_pd(z + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] += a * x[i] * z[i];
}

void gemm_avx2(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
               std::size_t n) {
    for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
    // Two rows of C per pass so each B row load feeds two FMAs.
    std::size_t i = 0;
    for (; i + 2 <= m; i += 2) {
        double* c0 = c + i * n;
        double* c1 = c0 + n;
        for (std::size_t l = 0; l < k; ++l) {
            const double a0 = a[i * k + l];
            const double a1 = a[(i + 1) * k + l];
            if (a0 == 0.0 && a1 == 0.0) continue;
            const __m256d va0 = _mm256_set1_pd(a0);
            const __m256d va1 = _mm256_set1_pd(a1);
            const double* brow = b + l * n;
            std::size_t j = 0;
            for (; j + 4 <= n; j += 4) {
                const __m256d bv = _mm256_loadu_pd(brow + j);
                _mm256_storeu_pd(c0 + j, _mm256_fmadd_pd(va0, bv, _mm256_loadu_pd(c0 + j)));
                _mm256_storeu_pd(c1 + j, _mm256_fmadd_pd(va1, bv, _mm256_loadu_pd(c1 + j)));
            }
            for (; j < n; ++j) {
                c0[j] += a0 * brow[j];
                c1[j] += a1 * brow[j];
            }
        }
    }
    for (; i < m; ++i) {
        double* crow = c + i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const double ail = a[i * k + l];
            if (ail == 0.0) continue;
            axpy_avx2(ail, b + l * n, crow, n);
        }
    }
}

void wigner_avx2(const double* coef, std::size_t dim, const double* xs, const double* ps,
                 double* out, std::size_t count) {
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d sqrt2 = _mm256_set1_pd(std::numbers::sqrt2);
    std::size_t q = 0;
    for (; q + 4 <= count; q += 4) {
        const __m256d x = _mm256_loadu_pd(xs + q);
        const __m256d p = _mm256_loadu_pd(ps + q);
        const __m256d r2 = _mm256_fmadd_pd(x, x, _mm256_mul_pd(p, p));
        const __m256d u = _mm256_mul_pd(two, r2);
        const __m256d wr = _mm256_mul_pd(sqrt2, x);
        const __m256d wi = _mm256_mul_pd(sqrt2, p);
        __m256d zr = one;
        __m256d zi = _mm256_setzero_pd();
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t d = 0; d < dim; ++d) {
            const double* row = coef + d * dim;
            const std::size_t len = dim - d;
            const double dd = static_cast<double>(d);
            __m256d lprev = one;
            __m256d sum = _mm256_set1_pd(row[0]);
            if (len > 1) {
                __m256d lcur = _mm256_sub_pd(_mm256_set1_pd(1.0 + dd), u);
                sum = _mm256_fmadd_pd(_mm256_set1_pd(row[1]), lcur, sum);
                for (std::size_t n = 1; n + 1 < len; ++n) {
                    const double nn = static_cast<double>(n);
                    const __m256d alpha = _mm256_sub_pd(_mm256_set1_pd(2.0 * nn + 1.0 + dd), u);
                    const __m256d num = _mm256_fmsub_pd(alpha, lcur, _mm256_mul_pd(_mm256_set1_pd(nn + dd), lprev));
                    const __m256d lnext = _mm256_div_pd(num, _mm256_set1_pd(nn + 1.0));
                    lprev = lcur;
                    lcur = lnext;
                    sum = _mm256_fmadd_pd(_mm256_set1_pd(row[n + 1]), lcur, sum);
                }
            }
            acc = _mm256_fmadd_pd(sum, zr, acc);
            const __m256d nzr = _mm256_fmsub_pd(zr, wr, _mm256_mul_pd(zi, wi));
            zi = _mm256_fmadd_pd(zr, wi, _mm256_mul_pd(zi, wr));
            zr = nzr;
        }
        alignas(32) double lanes[4];
        alignas(32) double radii[4];
        _mm256_store_pd(lanes, acc);
        _mm256_store_pd(radii, r2);
        for (int j = 0; j < 4; ++j) out[q + j] = lanes[j] * std::exp(-radii[j]) * std::numbers::inv_pi;
    }
    if (q < count) scalar_kernels().wigner(coef, dim, xs + q, ps + q, out + q, count - q);
}

constexpr KernelTable kAvx2{
    "avx2", dot_avx2, axpy_avx2, scaled_product_acc_avx2, gemm_avx2, wigner_avx2,
};

}  // namespace

namespace detail {
const KernelTable* avx2_table() { return &kAvx2; }
}  // namespace detail

}  // namespace kitten::simd

#else

namespace kitten::simd::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace kitten::simd::detail

#endif
