#pragma once
// Detector presets and parameter sweeps across the four detector models.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kitten/subtraction.hpp"
#include "kitten/witness.hpp"

namespace kitten::sweep {

inline constexpr std::string_view kPresetVersion = "apd-table-1";

struct DetectorPreset {
    std::string name;
    std::string device;  // product family, for listings
    double pdc = 0.0;
    double eta = 1.0;
};

const std::vector<DetectorPreset>& presets();
/// Throws ConfigError for an unknown name.
const DetectorPreset& find_preset(std::string_view name);

/// The experiment defaults used by every sweep unless overridden.
subtraction::ExperimentParams default_experiment(std::size_t nmax = fock::kDefaultNmax);

enum class Variable { v0_db, r1, r2, eta_apd, eta_hd, pdc, mode_purity };

std::string_view to_string(Variable v);
Variable parse_variable(std::string_view name);

/// Default range and spacing for plot-style sweeps of `v`.
struct GridDefaults {
    double from;
    double to;
    std::size_t points;
    bool log;
};
GridDefaults default_grid(Variable v);

std::vector<double> make_grid(double from, double to, std::size_t points, bool log_spaced);

struct DetectorEntry {
    std::string label;  // preset name or "custom"
    subtraction::DetectorModel model;
};

/// One entry per requested model kind, all sharing the preset's (pdc, eta).
std::vector<DetectorEntry> detector_set(const DetectorPreset& preset,
                                        const std::vector<subtraction::DetectorKind>& kinds,
                                        unsigned m = 1);

const std::vector<subtraction::DetectorKind>& all_kinds();

struct SweepSpec {
    Variable variable = Variable::pdc;
    std::vector<double> grid;
    std::vector<DetectorEntry> detectors;
    subtraction::ExperimentParams base = default_experiment();
    witness::WitnessConfig witness_cfg;
    bool compute_witness = true;

    std::size_t nmax() const noexcept { return base.spec.nmax; }
    /// Throws ConfigError naming the offending field.
    void validate() const;
};

struct SweepRow {
    Variable variable = Variable::pdc;
    double value = 0.0;
    std::string detector;
    subtraction::DetectorKind model = subtraction::DetectorKind::pnrd;
    // NaN when the point failed or the witness was not requested.
    double w00 = 0.0;
    double witness = 0.0;
    double a_opt = 0.0;
    double s_opt = 0.0;
    double p0 = 0.0;
    double p1 = 0.0;
    double herald_prob = 0.0;
    std::string error;  // empty on success

    bool ok() const noexcept { return error.empty(); }
};

/// Parameters and detector for one grid value.
std::pair<subtraction::ExperimentParams, subtraction::DetectorModel> substitute(
    const subtraction::ExperimentParams& base, const subtraction::DetectorModel& det, Variable v, double value);

SweepRow evaluate_point(const SweepSpec& spec, std::size_t grid_index, std::size_t detector_index);

/// Worker count from KITTEN_WORKERS, or the hardware concurrency when unset.
std::size_t default_workers();

/// Rows in (grid, detector) order regardless of `workers`; 0 means default_workers().
std::vector<SweepRow> run_sweep(const SweepSpec& spec, std::size_t workers = 0);

enum class Column { w00, witness, a_opt, s_opt, p0, p1, herald_prob };
Column parse_column(std::string_view name);
double column_value(const SweepRow& row, Column c);

/// Rows for one (detector label, model) curve, in grid order.
std::vector<SweepRow> select(const std::vector<SweepRow>& rows, std::string_view detector,
                             subtraction::DetectorKind model);

/// First place along the curve where `column - threshold` changes sign, linearly
/// interpolated (in log10 of the variable when `log_x`). Failed rows break the curve.
std::optional<double> find_crossing(const std::vector<SweepRow>& rows, Column column, double threshold,
                                    bool log_x = false);

}  // namespace kitten::sweep
