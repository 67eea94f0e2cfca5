#pragma once
// Dense double-precision kernels behind the simulator's inner loops.
//
// Every kernel has a portable scalar reference implementation and, on x86-64
// hosts with AVX2+FMA, a vectorized variant. The active table is chosen once at
// first use from CPU capabilities; KITTEN_SIMD=scalar|avx2|auto overrides it.

#include <cstddef>
#include <span>
#include <string_view>

namespace kitten::simd {

struct KernelTable {
    std::string_view name;

    /// sum_i x[i] * y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);

    /// y += a * x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);

    /// y += a * (x ⊙ z)
    void (*scaled_product_acc)(double a, const double* x, const double* z, double* y,
                               std::size_t n);

    /// C = A * B with A (m x k), B (k x n), C (m x n), all row-major and dense.
    void (*gemm)(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                 std::size_t n);

    /// Fock-basis Wigner expansion evaluated at `count` phase-space points.
    /// `coef` holds dim*dim entries laid out [d * dim + n] (n + d < dim), the
    /// prefactor of L_n^{(d)}(2r^2) * Re[(sqrt2 (x + i p))^d] for the pair
    /// (n + d, n). The kernel applies exp(-r^2)/pi.
    void (*wigner)(const double* coef, std::size_t dim, const double* x, const double* p,
                   double* out, std::size_t count);
};

/// Portable reference kernels; always available.
const KernelTable& scalar_kernels();

/// AVX2+FMA kernels, or nullptr when not compiled in or unsupported by the CPU.
const KernelTable* avx2_kernels();

/// The table selected for this process.
const KernelTable& active();

// Span conveniences over the active table.

inline double dot(std::span<const double> x, std::span<const double> y) {
    return active().dot(x.data(), y.data(), x.size());
}

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
    active().axpy(a, x.data(), y.data(), x.size());
}

inline void scaled_product_acc(double a, std::span<const double> x, std::span<const double> z,
                               std::span<double> y) {
    active().scaled_product_acc(a, x.data(), z.data(), y.data(), x.size());
}

}  // namespace kitten::simd
