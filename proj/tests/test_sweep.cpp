#include <cmath>
#include <optional>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "kitten/config.hpp"
#include "kitten/errors.hpp"
#include "kitten/sweep.hpp"
#include "kitten/sweep_io.hpp"

namespace {

using namespace kitten;
using namespace kitten::sweep;

SweepSpec small_spec() {
    SweepSpec s;
    s.variable = Variable::pdc;
    s.grid = make_grid(1e-6, 1e-3, 4, true);
    s.detectors = detector_set(find_preset("ingaas-id200"), all_kinds());
    s.witness_cfg.a_grid = witness::linspace(0, 1, 21);
    s.witness_cfg.s_grid = witness::linspace(0, 1, 11);
    return s;
}

std::string csv_of(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    write_csv(rows, os);
    return os.str();
}

TEST(Presets, TableValues) {
    EXPECT_EQ(presets().size(), 9u);
    EXPECT_EQ(find_preset("si-aqr-12").pdc, 5e-6);
    EXPECT_EQ(find_preset("si-aqr-16").pdc, 2.5e-7);
    EXPECT_EQ(find_preset("si-aqr-14").eta, 0.45);
    EXPECT_EQ(find_preset("ingaas-id200").pdc, 1e-4);
    EXPECT_EQ(find_preset("ingaas-id200").eta, 0.10);
    EXPECT_EQ(find_preset("ingaas-id220-b").pdc, 2.5e-5);
    EXPECT_EQ(find_preset("ingaas-id220-c").eta, 0.20);
    EXPECT_THROW(find_preset("tes"), ConfigError);
    const auto e = default_experiment();
    EXPECT_NEAR(e.spec.v0_db(), -4.67, 1e-12);
    EXPECT_EQ(e.r1, 0.1771);
    EXPECT_EQ(e.r2, 0.08);
    EXPECT_EQ(e.mode_purity, 0.8);
    EXPECT_EQ(e.eta_hd, 0.85);
}

TEST(Grid, LinearAndLog) {
    const auto lin = make_grid(0.0, 1.0, 5, false);
    EXPECT_EQ(lin, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
    const auto lg = make_grid(1e-6, 1e-2, 5, true);
    EXPECT_EQ(lg.front(), 1e-6);
    EXPECT_EQ(lg.back(), 1e-2);
    EXPECT_NEAR(lg[2], 1e-4, 1e-18);
    EXPECT_THROW(make_grid(0.0, 1.0, 3, true), ConfigError);
}

TEST(Sweep, RowsInGridThenDetectorOrder) {
    const auto spec = small_spec();
    const auto rows = run_sweep(spec, 1);
    ASSERT_EQ(rows.size(), 16u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].value, spec.grid[i / 4]);
        EXPECT_EQ(rows[i].model, all_kinds()[i % 4]);
        EXPECT_TRUE(rows[i].ok()) << rows[i].error;
    }
}

TEST(Sweep, ParallelIsByteIdenticalToSerial) {
    const auto spec = small_spec();
    const std::string serial = csv_of(run_sweep(spec, 1));
    EXPECT_EQ(csv_of(run_sweep(spec, 3)), serial);
    EXPECT_EQ(csv_of(run_sweep(spec, 8)), serial);
    EXPECT_EQ(csv_of(run_sweep(spec, 1)), serial);
}

TEST(Sweep, SinglePointEqualsDirectCall) {
    SweepSpec s;
    s.variable = Variable::eta_hd;
    s.grid = {0.85};
    s.detectors = {{"ideal", subtraction::DetectorModel{}}};
    s.compute_witness = false;
    const auto rows = run_sweep(s, 1);
    ASSERT_EQ(rows.size(), 1u);
    const auto k = subtraction::prepare_kitten_detailed(default_experiment(), subtraction::DetectorModel{});
    EXPECT_EQ(rows[0].w00, fock::wigner_origin(k.state));
    EXPECT_EQ(rows[0].herald_prob, k.herald_probability);
}

TEST(Sweep, FailuresBecomeExplicitRows) {
    SweepSpec s;
    s.variable = Variable::v0_db;
    s.grid = {-4.67, 0.0};  // no squeezing: nothing to subtract
    s.detectors = {{"ideal", subtraction::DetectorModel{}}};
    s.compute_witness = false;
    const auto rows = run_sweep(s, 1);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_TRUE(rows[0].ok());
    EXPECT_FALSE(rows[1].ok());
    EXPECT_TRUE(std::isnan(rows[1].w00));
    const auto csv = csv_of(rows);
    EXPECT_NE(csv.find("v0_db,0,ideal,PNRD,,,,,,,\n"), std::string::npos) << csv;
}

TEST(Sweep, InvalidSpecNamesTheField) {
    SweepSpec s = small_spec();
    s.variable = Variable::r1;
    s.grid = {0.1, 1.5};
    try {
        s.validate();
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.path(), "sweep.from");
    }
}

TEST(Crossing, InterpolatesLinearly) {
    std::vector<SweepRow> rows(4);
    const double xs[] = {0.0, 1.0, 2.0, 3.0}, ys[] = {2.0, 1.0, -1.0, -2.0};
    for (int i = 0; i < 4; ++i) {
        rows[i].value = xs[i];
        rows[i].w00 = ys[i];
    }
    EXPECT_NEAR(*find_crossing(rows, Column::w00, 0.0), 1.5, 1e-15);
    EXPECT_NEAR(*find_crossing(rows, Column::w00, 1.5), 0.5, 1e-15);
    EXPECT_FALSE(find_crossing(rows, Column::w00, 5.0).has_value());
    rows[1].w00 = NAN;
    rows[2].w00 = NAN;
    EXPECT_FALSE(find_crossing(rows, Column::w00, 0.0).has_value());
}

TEST(Crossing, LogAxis) {
    std::vector<SweepRow> rows(2);
    rows[0].value = 1e-5;
    rows[0].witness = 1.0;
    rows[1].value = 1e-3;
    rows[1].witness = -1.0;
    EXPECT_NEAR(*find_crossing(rows, Column::witness, 0.0, true), 1e-4, 1e-18);
}

std::optional<double> imnpnrd_crossing(const char* preset, Variable v, std::vector<double> grid, Column c, bool log_x) {
    SweepSpec spec;
    spec.variable = v;
    spec.grid = std::move(grid);
    spec.detectors = detector_set(find_preset(preset), {subtraction::DetectorKind::imnpnrd});
    spec.compute_witness = c != Column::w00;
    return find_crossing(run_sweep(spec), c, 0.0, log_x);
}

TEST(Thresholds, SiliconNegativityOnsetInSqueezing) {
    // Negativity is bracketed on both sides in V0; the onset is the weak-squeezing edge.
    const auto x = imnpnrd_crossing("si-aqr-12", Variable::v0_db, make_grid(-2.0, -0.1, 39, false), Column::w00, false);
    ASSERT_TRUE(x.has_value()) << "W(0,0) never changes sign over -2..-0.1 dB";
    EXPECT_NEAR(*x, -0.4, 0.3);
}

TEST(Thresholds, InGaAsNegativityNeedsLowDarkCounts) {
    const auto x = imnpnrd_crossing("ingaas-id200", Variable::pdc, make_grid(1e-7, 1e-1, 49, true), Column::w00, true);
    ASSERT_TRUE(x.has_value()) << "W(0,0) never changes sign over pdc 1e-7..1e-1";
    EXPECT_GE(*x, 2e-5 / 1.5);
    EXPECT_LE(*x, 2e-5 * 1.5);
}

TEST(Thresholds, InGaAsNegativityNeedsHomodyneEfficiency) {
    const auto x = imnpnrd_crossing("ingaas-id200", Variable::eta_hd, make_grid(0.4, 1.0, 61, false), Column::w00, false);
    ASSERT_TRUE(x.has_value());
    EXPECT_NEAR(*x, 0.88, 0.03);
}

TEST(Thresholds, SiliconWitnessToleratesImpurity) {
    const auto x = imnpnrd_crossing("si-aqr-12", Variable::r1, make_grid(0.0, 0.6, 31, false), Column::witness, false);
    ASSERT_TRUE(x.has_value());
    EXPECT_NEAR(*x, 0.47, 0.05);
}

TEST(Emit, CsvShapeAndRoundTrip) {
    const auto rows = run_sweep(small_spec(), 1);
    const std::string csv = csv_of(rows);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, kCsvHeader);
    while (std::getline(in, line)) EXPECT_EQ(std::count(line.begin(), line.end(), ','), 10) << line;
    std::istringstream again(csv);
    EXPECT_EQ(csv_of(read_csv(again)), csv);

    std::ostringstream empty;
    write_csv({}, empty);
    std::istringstream e(empty.str());
    EXPECT_TRUE(read_csv(e).empty());
}

TEST(Emit, JsonMirrorsRowsAndMeta) {
    const auto spec = small_spec();
    const auto rows = run_sweep(spec, 1);
    std::ostringstream os;
    write_json(rows, spec, os);
    const auto doc = nlohmann::json::parse(os.str());
    EXPECT_EQ(doc["meta"]["nmax"], 40);
    EXPECT_EQ(doc["meta"]["preset_version"], std::string(kPresetVersion));
    EXPECT_EQ(doc["rows"].size(), rows.size());
    std::istringstream in(os.str());
    const auto back = read_json(in);
    EXPECT_EQ(csv_of(back), csv_of(rows));
}

TEST(Emit, DensityMatrixDump) {
    const auto rho = fock::impure_squeezed_vacuum(fock::SqueezedVacuumSpec::from_db(-3, 20), 0.2);
    std::stringstream ss;
    write_density_matrix(rho, ss);
    const auto back = read_density_matrix(ss);
    EXPECT_EQ(back.dim(), rho.dim());
    EXPECT_EQ(max_abs_difference(back, rho), 0.0);
    std::istringstream complex_entries(R"({"dim":1,"elements":[[1,0]],"trace_deficit":0})");
    EXPECT_THROW(read_density_matrix(complex_entries), ConfigError);
}

TEST(Config, SectionsAndOverrides) {
    std::istringstream in(R"(
[experiment]
v0_db = -3
r1 = 0.1
nmax = 30
[detector]
preset = si-aqr-12, si-aqr-16
models = imnpnrd
[witness]
a_points = 11
s_min = 0
s_max = 0.8
s_points = 9
[sweep]
variable = eta_hd
from = 0.5
to = 1.0
points = 6
[output]
format = json
)");
    const auto c = config::load_config(in);
    EXPECT_EQ(c.spec.variable, Variable::eta_hd);
    EXPECT_EQ(c.spec.grid.size(), 6u);
    EXPECT_EQ(c.spec.detectors.size(), 2u);
    EXPECT_EQ(c.spec.nmax(), 30u);
    EXPECT_NEAR(c.spec.base.spec.v0_db(), -3.0, 1e-12);
    EXPECT_EQ(c.spec.witness_cfg.a_grid.size(), 11u);
    EXPECT_EQ(c.spec.witness_cfg.s_grid.back(), 0.8);
    EXPECT_EQ(c.format, OutputFormat::json);
}

TEST(Config, UnknownKeysAreErrors) {
    std::istringstream in("[experiment]\nsqueezing = 3\n");
    try {
        config::load_config(in);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.path(), "experiment.squeezing");
    }
    std::istringstream sec("[plot]\nx = 1\n");
    EXPECT_THROW(config::load_config(sec), ConfigError);
    std::istringstream bad("[sweep]\npoints = many\n");
    EXPECT_THROW(config::load_config(bad), ConfigError);
}

TEST(Config, EmptyFileGivesDefaults) {
    std::istringstream in("");
    const auto c = config::load_config(in);
    EXPECT_EQ(c.spec.variable, Variable::pdc);
    EXPECT_EQ(c.spec.grid.size(), 41u);
    EXPECT_EQ(c.spec.detectors.size(), 8u);
    EXPECT_EQ(c.spec.base.r1, 0.1771);
}

}  // namespace
