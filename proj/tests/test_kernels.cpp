#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "kitten/kernels.hpp"

namespace {

using kitten::simd::KernelTable;

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

const KernelTable* vector_table() { return kitten::simd::avx2_kernels(); }

TEST(Kernels, ActiveTableIsOneOfTheKnownTables) {
    const auto& a = kitten::simd::active();
    EXPECT_TRUE(&a == &kitten::simd::scalar_kernels() || &a == vector_table());
}

TEST(Kernels, ScalarDotAgainstLongDouble) {
    std::mt19937_64 rng(11);
    for (std::size_t n = 0; n < 68; ++n) {
        const auto x = random_vec(rng, n), y = random_vec(rng, n);
        long double ref = 0;
        for (std::size_t i = 0; i < n; ++i) ref += static_cast<long double>(x[i]) * y[i];
        EXPECT_NEAR(kitten::simd::scalar_kernels().dot(x.data(), y.data(), n), static_cast<double>(ref), 1e-13);
    }
}

TEST(Kernels, VectorMatchesScalarOnEveryLength) {
    const KernelTable* v = vector_table();
    if (!v) GTEST_SKIP() << "no AVX2/FMA on this host";
    const KernelTable& s = kitten::simd::scalar_kernels();
    std::mt19937_64 rng(7);
    for (std::size_t n = 0; n < 68; ++n) {
        const auto x = random_vec(rng, n), y = random_vec(rng, n), z = random_vec(rng, n);
        EXPECT_NEAR(v->dot(x.data(), y.data(), n), s.dot(x.data(), y.data(), n), 1e-13) << n;

        auto y1 = y, y2 = y;
        s.axpy(0.37, x.data(), y1.data(), n);
        v->axpy(0.37, x.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-15);

        y1 = y;
        y2 = y;
        s.scaled_product_acc(-1.3, x.data(), z.data(), y1.data(), n);
        v->scaled_product_acc(-1.3, x.data(), z.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-15);
    }
}

TEST(Kernels, GemmMatchesNaiveAndVector) {
    std::mt19937_64 rng(3);
    const std::size_t shapes[][3] = {{1, 1, 1}, {3, 5, 7}, {8, 8, 8}, {13, 4, 9}, {41, 41, 41}, {61, 61, 61}, {2, 67, 5}};
    for (const auto& sh : shapes) {
        const std::size_t m = sh[0], k = sh[1], n = sh[2];
        const auto a = random_vec(rng, m * k), b = random_vec(rng, k * n);
        std::vector<double> ref(m * n, 0.0), c(m * n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < k; ++l) ref[i * n + j] += a[i * k + l] * b[l * n + j];
        kitten::simd::scalar_kernels().gemm(a.data(), b.data(), c.data(), m, k, n);
        for (std::size_t i = 0; i < m * n; ++i) EXPECT_NEAR(c[i], ref[i], 1e-12);
        if (const auto* v = vector_table()) {
            v->gemm(a.data(), b.data(), c.data(), m, k, n);
            for (std::size_t i = 0; i < m * n; ++i) EXPECT_NEAR(c[i], ref[i], 1e-12);
        }
    }
}

TEST(Kernels, WignerKernelVectorMatchesScalar) {
    const KernelTable* v = vector_table();
    if (!v) GTEST_SKIP() << "no AVX2/FMA on this host";
    std::mt19937_64 rng(5);
    for (std::size_t dim : {1u, 2u, 5u, 12u, 41u}) {
        const auto coef = random_vec(rng, dim * dim);
        for (std::size_t count : {0u, 1u, 3u, 4u, 5u, 17u}) {
            auto x = random_vec(rng, count), p = random_vec(rng, count);
            for (auto& q : x) q *= 3.0;
            for (auto& q : p) q *= 3.0;
            std::vector<double> o1(count), o2(count);
            kitten::simd::scalar_kernels().wigner(coef.data(), dim, x.data(), p.data(), o1.data(), count);
            v->wigner(coef.data(), dim, x.data(), p.data(), o2.data(), count);
            for (std::size_t i = 0; i < count; ++i) EXPECT_NEAR(o1[i], o2[i], 1e-12 * (1 + std::abs(o1[i])));
        }
    }
}

}  // namespace
