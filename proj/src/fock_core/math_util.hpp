#pragma once

#include <cmath>
#include <cstddef>

namespace kitten::detail {

inline double log_factorial(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

inline double log_binomial(std::size_t n, std::size_t k) {
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

/// x^k with 0^0 = 1 and no log of zero.
inline double ipow(double x, std::size_t k) {
    double r = 1.0;
    double b = x;
    while (k) {
        if (k & 1u) r *= b;
        b *= b;
        k >>= 1u;
    }
    return r;
}

/// C(n,k) * p^k * (1-p)^(n-k) evaluated without overflow.
inline double binomial_pmf(std::size_t n, std::size_t k, double p) {
    if (k > n) return 0.0;
    if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return k == n ? 1.0 : 0.0;
    return std::exp(log_binomial(n, k) + static_cast<double>(k) * std::log(p) +
                    static_cast<double>(n - k) * std::log1p(-p));
}

}  // namespace kitten::detail
