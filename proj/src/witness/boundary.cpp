#include <cmath>
#include <limits>
#include <string>

#include "kitten/errors.hpp"
#include "kitten/witness.hpp"

namespace kitten::witness {

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
    if (count > 1) out.back() = hi;
    return out;
}

void WitnessConfig::validate() const {
    auto check_grid = [](const std::vector<double>& g, const char* name, double lo, double hi) {
        if (g.empty()) throw InvalidArgument(std::string(name) + " must not be empty");
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (!(g[i] >= lo && g[i] <= hi)) throw InvalidArgument(std::string(name) + " value out of range");
            if (i > 0 && !(g[i] > g[i - 1])) throw InvalidArgument(std::string(name) + " must be strictly increasing");
        }
    };
    check_grid(a_grid, "a_grid", 0.0, 1.0);
    check_grid(s_grid, "s_grid", 0.0, std::numeric_limits<double>::max());
    if (!(r_max > 0.0 && std::isfinite(r_max))) throw InvalidArgument("r_max must be positive");
    if (!(refine_tol > 0.0)) throw InvalidArgument("refine_tol must be positive");
}

GoldenResult golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(hi >= lo)) throw InvalidArgument("golden-section bracket is inverted");
    GoldenResult best{lo, f(lo)};
    if (hi == lo) return best;
    const double f_hi = f(hi);
    if (f_hi > best.f) best = {hi, f_hi};

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {  // keep the left section on ties
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const GoldenResult inner = fc >= fd ? GoldenResult{c, fc} : GoldenResult{d, fd};
    if (inner.f > best.f) best = inner;
    return best;
}

P0P1 gaussian_p0p1(double r) {
    if (!(r >= 0.0)) throw InvalidArgument("squeezing parameter r must be >= 0");
    const double ch = std::cosh(r);
    const double e = std::exp(-std::exp(r) * std::sinh(r));
    return {e / ch, 0.25 * std::expm1(4.0 * r) * e / (ch * ch * ch)};
}

namespace {

constexpr double kBoundaryTol = 1e-10;

GoldenResult boundary_search(double a, double hi) {
    return golden_section_max(
        [a](double r) {
            const P0P1 p = gaussian_p0p1(r);
            return a * p.p0 + p.p1;
        },
        0.0, hi, kBoundaryTol);
}

}  // namespace

double gaussian_boundary(double a, double r_max) {
    if (!(a >= 0.0 && a <= 1.0)) throw InvalidArgument("a must lie in [0, 1]");
    if (!(r_max > 0.0)) throw InvalidArgument("r_max must be positive");
    GoldenResult best = boundary_search(a, r_max);
    if (r_max - best.x < 1e-6) {
        r_max *= 2.0;
        best = boundary_search(a, r_max);
        if (r_max - best.x < 1e-6) {
            throw NumericalError("Gaussian boundary maximum is not interior to [0, r_max] for a=" +
                                 std::to_string(a));
        }
    }
    // Independent restarts with different brackets around the optimum.
    const double alt_hi[2] = {0.5 * (best.x + r_max), std::min(r_max, 2.0 * best.x + 0.1)};
    for (double hi : alt_hi) {
        const GoldenResult other = boundary_search(a, hi);
        if (std::abs(other.f - best.f) > 1e-8) {
            throw NumericalError("Gaussian boundary search is not unimodal at a=" + std::to_string(a));
        }
        if (other.f > best.f) best = other;
    }
    return best.f;
}

double classical_boundary(double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw InvalidArgument("a must lie in [0, 1]");
    return std::exp(a - 1.0);
}

AOptimum optimal_a(const P0P1& p, const WitnessConfig& cfg) {
    const auto& g = cfg.a_grid;
    auto value = [&](double a) { return a * p.p0 + p.p1 - gaussian_boundary(a, cfg.r_max); };
    std::size_t best = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double v = value(g[i]);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    AOptimum out{g[best], best_v};
    if (g.size() > 1) {
        const double lo = g[best > 0 ? best - 1 : 0];
        const double hi = g[best + 1 < g.size() ? best + 1 : best];
        const GoldenResult r = golden_section_max(value, lo, hi, cfg.refine_tol);
        if (r.f > out.value) out = {r.x, r.f};
    }
    return out;
}

}  // namespace kitten::witness
