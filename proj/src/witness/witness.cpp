#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <utility>

#include "kitten/errors.hpp"
#include "kitten/fock_core.hpp"
#include "kitten/kernels.hpp"
#include "kitten/witness.hpp"

namespace kitten::witness {
namespace {

// What the witness needs from S(s) restricted to the first `dim` levels (block A):
// columns 0 and 1 of A, and A A^T so that tr(A^T rho A) = <rho, A A^T>.
struct SqueezeColumns {
    std::size_t dim = 0;
    std::vector<double> col0, col1;
    std::vector<double> kept;  // A A^T, row-major
};

std::shared_ptr<const SqueezeColumns> build_columns(std::size_t dim, double s) {
    auto out = std::make_shared<SqueezeColumns>();
    out->dim = dim;
    out->col0.resize(dim);
    out->col1.resize(dim);
    out->kept.resize(dim * dim);
    const fock::SqueezeOperator op(s, fock::padded_dim(dim - 1, s));
    const std::vector<double> a = op.block(dim);
    std::vector<double> at(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        out->col0[i] = a[i * dim];
        out->col1[i] = dim > 1 ? a[i * dim + 1] : 0.0;
        for (std::size_t j = 0; j < dim; ++j) at[j * dim + i] = a[i * dim + j];
    }
    simd::active().gemm(a.data(), at.data(), out->kept.data(), dim, dim, dim);
    return out;
}

// Grid values of s are shared between every state evaluated in a process.
std::shared_ptr<const SqueezeColumns> cached_columns(std::size_t dim, double s) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, double>, std::shared_ptr<const SqueezeColumns>> cache;
    const auto key = std::make_pair(dim, s);
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto built = build_columns(dim, s);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(built)).first->second;
}

P0P1 probabilities(const DensityMatrix& rho, const SqueezeColumns& c, double s) {
    const std::size_t dim = rho.dim();
    const auto& k = simd::active();
    const double* m = rho.elements().data();
    const double kept = k.dot(m, c.kept.data(), dim * dim);
    const double loss = rho.trace() - kept;
    if (loss > fock::kConjugationTraceTolerance) {
        std::ostringstream msg;
        msg << "anti-squeezing at s=" << s << " lost " << loss << " of the trace to truncation";
        throw TruncationOverflow(msg.str());
    }
    std::vector<double> v0(dim, 0.0), v1(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        v0[i] = k.dot(m + i * dim, c.col0.data(), dim);
        v1[i] = k.dot(m + i * dim, c.col1.data(), dim);
    }
    return {std::max(0.0, k.dot(c.col0.data(), v0.data(), dim)),
            std::max(0.0, k.dot(c.col1.data(), v1.data(), dim))};
}

P0P1 p0p1_at(const DensityMatrix& rho, double s, bool use_cache) {
    if (!(s >= 0.0)) throw InvalidArgument("anti-squeezing parameter must be >= 0");
    if (rho.dim() < 2) throw InvalidArgument("witness needs at least two Fock levels");
    if (s == 0.0) return {std::max(0.0, rho(0, 0)), std::max(0.0, rho(1, 1))};
    const auto cols = use_cache ? cached_columns(rho.dim(), s) : build_columns(rho.dim(), s);
    return probabilities(rho, *cols, s);
}

}  // namespace

P0P1 state_p0p1(const DensityMatrix& rho, double s) { return p0p1_at(rho, s, false); }

WitnessResult evaluate_witness(const DensityMatrix& rho, const WitnessConfig& cfg) {
    cfg.validate();
    if (std::abs(rho.trace() - 1.0) > 1e-6 + rho.trace_deficit()) {
        throw InvalidArgument("witness expects a normalized state");
    }
    const auto& ag = cfg.a_grid;
    const auto& sg = cfg.s_grid;

    std::vector<double> wg(ag.size());
    for (std::size_t i = 0; i < ag.size(); ++i) wg[i] = gaussian_boundary(ag[i], cfg.r_max);

    WitnessResult res;
    std::vector<std::size_t> s_index;  // grid index of each trajectory entry
    for (std::size_t j = 0; j < sg.size(); ++j) {
        try {
            const P0P1 p = p0p1_at(rho, sg[j], true);
            res.trajectory.push_back({sg[j], p.p0, p.p1});
            s_index.push_back(j);
        } catch (const TruncationOverflow&) {
            res.skipped_s.push_back(sg[j]);
        }
    }
    if (res.trajectory.empty()) {
        std::ostringstream msg;
        msg << "anti-squeezing overflowed the Fock cutoff at every s:";
        for (double s : res.skipped_s) msg << ' ' << s;
        throw TruncationOverflow(msg.str());
    }

    // Coarse scan: a outer, s inner, strict improvement so ties keep smaller a then smaller s.
    std::size_t ia = 0, it = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ag.size(); ++i) {
        for (std::size_t t = 0; t < res.trajectory.size(); ++t) {
            const auto& q = res.trajectory[t];
            const double v = ag[i] * q.p0 + q.p1 - wg[i];
            if (v > best) {
                best = v;
                ia = i;
                it = t;
            }
        }
    }

    double a = ag[ia];
    double s = res.trajectory[it].s;
    P0P1 p{res.trajectory[it].p0, res.trajectory[it].p1};

    const double a_step = ag.size() > 1 ? ag[1] - ag[0] : 0.0;
    const std::size_t js = s_index[it];
    const double s_lo = sg[js > 0 ? js - 1 : 0];
    const double s_hi = sg[js + 1 < sg.size() ? js + 1 : js];

    auto objective_s = [&](double a_fixed) {
        return [&rho, a_fixed, &cfg](double sv) {
            try {
                const P0P1 q = p0p1_at(rho, sv, false);
                return a_fixed * q.p0 + q.p1 - gaussian_boundary(a_fixed, cfg.r_max);
            } catch (const TruncationOverflow&) {
                return -std::numeric_limits<double>::infinity();
            }
        };
    };

    // Alternate one-dimensional refinements until neither coordinate moves.
    for (int round = 0; round < 10; ++round) {
        bool moved = false;
        if (ag.size() > 1) {
            const double lo = std::max(ag.front(), a - a_step);
            const double hi = std::min(ag.back(), a + a_step);
            const GoldenResult r = golden_section_max(
                [&](double av) { return av * p.p0 + p.p1 - gaussian_boundary(av, cfg.r_max); }, lo, hi,
                cfg.refine_tol);
            if (r.f > best) {
                moved = moved || std::abs(r.x - a) > cfg.refine_tol;
                best = r.f;
                a = r.x;
            }
        }
        if (s_hi > s_lo) {
            const GoldenResult r = golden_section_max(objective_s(a), s_lo, s_hi, cfg.refine_tol);
            if (r.f > best) {
                moved = moved || std::abs(r.x - s) > cfg.refine_tol;
                best = r.f;
                s = r.x;
                p = p0p1_at(rho, s, false);
            }
        }
        if (!moved) break;
    }

    res.witness_value = best;
    res.a_opt = a;
    res.s_opt = s;
    res.p0 = p.p0;
    res.p1 = p.p1;
    res.classical_margin = a * p.p0 + p.p1 - classical_boundary(a);
    return res;
}

}  // namespace kitten::witness
