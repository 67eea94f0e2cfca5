#include "kitten/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "kitten/errors.hpp"

namespace kitten::sweep {

using subtraction::DetectorKind;
using subtraction::DetectorModel;
using subtraction::ExperimentParams;

const std::vector<DetectorPreset>& presets() {
    static const std::vector<DetectorPreset> table = {
        {"si-aqr-12", "Si-APD SPCM-AQR-12", 5e-6, 0.45},
        {"si-aqr-13", "Si-APD SPCM-AQR-13", 2.5e-6, 0.45},
        {"si-aqr-14", "Si-APD SPCM-AQR-14", 1e-6, 0.45},
        {"si-aqr-15", "Si-APD SPCM-AQR-15", 5e-7, 0.45},
        {"si-aqr-16", "Si-APD SPCM-AQR-16", 2.5e-7, 0.45},
        {"ingaas-id200", "InGaAs-APD id200", 1e-4, 0.10},
        {"ingaas-id220-a", "InGaAs-APD id220", 1e-5, 0.10},
        {"ingaas-id220-b", "InGaAs-APD id220", 2.5e-5, 0.15},
        {"ingaas-id220-c", "InGaAs-APD id220", 5e-5, 0.20},
    };
    return table;
}

const DetectorPreset& find_preset(std::string_view name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    throw ConfigError("detector.preset", "unknown preset '" + std::string(name) + "'");
}

ExperimentParams default_experiment(std::size_t nmax) {
    ExperimentParams p;
    p.spec = fock::SqueezedVacuumSpec::from_db(-4.67, nmax);
    p.r1 = 0.1771;
    p.r2 = 0.08;
    p.mode_purity = 0.8;
    p.eta_hd = 0.85;
    return p;
}

namespace {

constexpr std::pair<Variable, std::string_view> kVariableNames[] = {
    {Variable::v0_db, "v0_db"}, {Variable::r1, "r1"},   {Variable::r2, "r2"},
    {Variable::eta_apd, "eta_apd"}, {Variable::eta_hd, "eta_hd"}, {Variable::pdc, "pdc"},
    {Variable::mode_purity, "mode_purity"},
};

constexpr std::pair<Column, std::string_view> kColumnNames[] = {
    {Column::w00, "w00"}, {Column::witness, "witness"}, {Column::a_opt, "a_opt"},
    {Column::s_opt, "s_opt"}, {Column::p0, "p0"}, {Column::p1, "p1"},
    {Column::herald_prob, "herald_prob"},
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string_view to_string(Variable v) {
    for (const auto& [var, name] : kVariableNames)
        if (var == v) return name;
    return "?";
}

Variable parse_variable(std::string_view name) {
    for (const auto& [var, n] : kVariableNames)
        if (n == name) return var;
    throw ConfigError("sweep.variable", "unknown sweep variable '" + std::string(name) + "'");
}

GridDefaults default_grid(Variable v) {
    switch (v) {
        case Variable::v0_db: return {-6.0, -0.1, 41, false};
        case Variable::r1: return {0.0, 0.6, 41, false};
        case Variable::r2: return {0.01, 0.3, 41, false};
        case Variable::eta_apd: return {0.01, 1.0, 41, false};
        case Variable::eta_hd: return {0.4, 1.0, 41, false};
        case Variable::pdc: return {1e-7, 1e-2, 41, true};
        case Variable::mode_purity: return {0.4, 1.0, 41, false};
    }
    return {0.0, 1.0, 41, false};
}

std::vector<double> make_grid(double from, double to, std::size_t points, bool log_spaced) {
    if (points == 0) throw ConfigError("sweep.points", "must be at least 1");
    if (!std::isfinite(from) || !std::isfinite(to)) throw ConfigError("sweep.from", "grid ends must be finite");
    if (!log_spaced) return witness::linspace(from, to, points);
    if (!(from > 0.0 && to > 0.0)) throw ConfigError("sweep.log", "log grid needs positive ends");
    std::vector<double> g = witness::linspace(std::log10(from), std::log10(to), points);
    for (double& x : g) x = std::pow(10.0, x);
    g.front() = from;
    g.back() = to;
    return g;
}

const std::vector<DetectorKind>& all_kinds() {
    static const std::vector<DetectorKind> k = {DetectorKind::pnrd, DetectorKind::npnrd, DetectorKind::impnrd,
                                                DetectorKind::imnpnrd};
    return k;
}

std::vector<DetectorEntry> detector_set(const DetectorPreset& preset, const std::vector<DetectorKind>& kinds,
                                        unsigned m) {
    std::vector<DetectorEntry> out;
    for (DetectorKind k : kinds) out.push_back({preset.name, subtraction::make_detector(k, preset.pdc, preset.eta, m)});
    return out;
}

void SweepSpec::validate() const {
    if (grid.empty()) throw ConfigError("sweep.points", "grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) throw ConfigError("sweep.from", "grid values must be finite");
    }
    if (detectors.empty()) throw ConfigError("detector.models", "no detectors selected");
    try {
        base.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError("experiment", e.what());
    }
    try {
        witness_cfg.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError("witness", e.what());
    }
    for (const auto& d : detectors) {
        try {
            d.model.validate();
        } catch (const InvalidArgument& e) {
            throw ConfigError("detector", e.what());
        }
    }
    // Every grid value must give valid parameters.
    const auto range_check = [&](double lo, double hi, bool lo_open, bool hi_open) {
        for (double v : grid) {
            const bool bad = (lo_open ? v <= lo : v < lo) || (hi_open ? v >= hi : v > hi);
            if (bad) {
                throw ConfigError("sweep.from", "value " + std::to_string(v) + " is outside the range of " +
                                                    std::string(to_string(variable)));
            }
        }
    };
    switch (variable) {
        case Variable::v0_db: range_check(-std::numeric_limits<double>::max(), 0.0, false, false); break;
        case Variable::r1: range_check(0.0, 1.0, false, true); break;
        case Variable::r2: range_check(0.0, 1.0, true, true); break;
        case Variable::eta_apd: range_check(0.0, 1.0, false, false); break;
        case Variable::eta_hd: range_check(0.0, 1.0, false, false); break;
        case Variable::pdc: range_check(0.0, 1.0, false, true); break;
        case Variable::mode_purity: range_check(0.0, 1.0, false, false); break;
    }
}

std::pair<ExperimentParams, DetectorModel> substitute(const ExperimentParams& base, const DetectorModel& det,
                                                      Variable v, double value) {
    ExperimentParams p = base;
    DetectorModel d = det;
    switch (v) {
        case Variable::v0_db: p.spec = fock::SqueezedVacuumSpec::from_db(value, base.spec.nmax); break;
        case Variable::r1: p.r1 = value; break;
        case Variable::r2: p.r2 = value; break;
        case Variable::eta_apd: d.eta = value; break;
        case Variable::eta_hd: p.eta_hd = value; break;
        case Variable::pdc: d.pdc = value; break;
        case Variable::mode_purity: p.mode_purity = value; break;
    }
    return {p, d};
}

SweepRow evaluate_point(const SweepSpec& spec, std::size_t gi, std::size_t di) {
    const DetectorEntry& entry = spec.detectors[di];
    SweepRow row;
    row.variable = spec.variable;
    row.value = spec.grid[gi];
    row.detector = entry.label;
    row.model = subtraction::kind_of(entry.model);
    try {
        const auto [params, det] = substitute(spec.base, entry.model, spec.variable, row.value);
        const subtraction::KittenState k = subtraction::prepare_kitten_detailed(params, det);
        row.w00 = fock::wigner_origin(k.state);
        row.herald_prob = k.herald_probability;
        if (spec.compute_witness) {
            const witness::WitnessResult w = witness::evaluate_witness(k.state, spec.witness_cfg);
            row.witness = w.witness_value;
            row.a_opt = w.a_opt;
            row.s_opt = w.s_opt;
            row.p0 = w.p0;
            row.p1 = w.p1;
        } else {
            row.witness = row.a_opt = row.s_opt = kNaN;
            const auto pd = fock::photon_distribution(k.state);
            row.p0 = pd[0];
            row.p1 = pd.size() > 1 ? pd[1] : 0.0;
        }
    } catch (const Error& e) {
        row.w00 = row.witness = row.a_opt = row.s_opt = row.p0 = row.p1 = row.herald_prob = kNaN;
        row.error = e.what();
    }
    return row;
}

std::size_t default_workers() {
    if (const char* env = std::getenv("KITTEN_WORKERS"); env && *env) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (*end != '\0' || n < 0) throw ConfigError("KITTEN_WORKERS", "must be a non-negative integer");
        if (n > 0) return static_cast<std::size_t>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, std::size_t workers) {
    spec.validate();
    const std::size_t nd = spec.detectors.size();
    const std::size_t total = spec.grid.size() * nd;
    std::vector<SweepRow> rows(total);
    if (workers == 0) workers = default_workers();
    workers = std::min(workers, total);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < total; i = next++) rows[i] = evaluate_point(spec, i / nd, i % nd);
    };
    if (workers <= 1) {
        work();
        return rows;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return rows;
}

Column parse_column(std::string_view name) {
    for (const auto& [c, n] : kColumnNames)
        if (n == name) return c;
    throw ConfigError("column", "unknown column '" + std::string(name) + "'");
}

double column_value(const SweepRow& row, Column c) {
    switch (c) {
        case Column::w00: return row.w00;
        case Column::witness: return row.witness;
        case Column::a_opt: return row.a_opt;
        case Column::s_opt: return row.s_opt;
        case Column::p0: return row.p0;
        case Column::p1: return row.p1;
        case Column::herald_prob: return row.herald_prob;
    }
    return kNaN;
}

std::vector<SweepRow> select(const std::vector<SweepRow>& rows, std::string_view detector, DetectorKind model) {
    std::vector<SweepRow> out;
    for (const auto& r : rows)
        if (r.detector == detector && r.model == model) out.push_back(r);
    return out;
}

std::optional<double> find_crossing(const std::vector<SweepRow>& rows, Column column, double threshold, bool log_x) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double y0 = column_value(rows[i - 1], column) - threshold;
        const double y1 = column_value(rows[i], column) - threshold;
        if (!std::isfinite(y0) || !std::isfinite(y1)) continue;
        if (y0 == 0.0) return rows[i - 1].value;
        if ((y0 < 0.0) == (y1 < 0.0) && y1 != 0.0) continue;
        double x0 = rows[i - 1].value, x1 = rows[i].value;
        if (log_x) {
            if (!(x0 > 0.0 && x1 > 0.0)) continue;
            x0 = std::log10(x0);
            x1 = std::log10(x1);
        }
        const double x = x0 + (x1 - x0) * y0 / (y0 - y1);
        return log_x ? std::pow(10.0, x) : x;
    }
    return std::nullopt;
}

}  // namespace kitten::sweep
