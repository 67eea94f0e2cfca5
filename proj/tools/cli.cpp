#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kitten/calibration.hpp"
#include "kitten/config.hpp"
#include "kitten/errors.hpp"
#include "kitten/fock_core.hpp"
#include "kitten/subtraction.hpp"
#include "kitten/sweep.hpp"
#include "kitten/sweep_io.hpp"
#include "kitten/witness.hpp"

namespace kitten::cli {
namespace {

std::string num(double v, int digits = 9) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// Options shared by prepare, witness and sweep; unset ones leave the config alone.
struct Overrides {
    std::string config_path;
    std::optional<double> v0_db, r1, r2, mode_purity, eta_hd, pdc, eta_apd;
    std::optional<long> nmax;
    std::optional<unsigned> m;
    std::vector<std::string> presets;
    std::vector<std::string> models;

    void attach(CLI::App* app, bool multi_detector) {
        app->add_option("--config", config_path, "Configuration file")->check(CLI::ExistingFile);
        app->add_option("--v0-db", v0_db, "Pure squeezing level in dB");
        app->add_option("--r1", r1, "Input impurity");
        app->add_option("--r2", r2, "Tap reflectivity");
        app->add_option("--mode-purity", mode_purity, "Mode purity s'");
        app->add_option("--eta-hd", eta_hd, "Homodyne efficiency");
        app->add_option("--nmax", nmax, "Fock cutoff");
        app->add_option("--pdc", pdc, "Dark-count probability (custom detector)");
        app->add_option("--eta-apd", eta_apd, "Detection efficiency (custom detector)");
        app->add_option("--m", m, "Herald click count");
        if (multi_detector) {
            app->add_option("--preset", presets, "Detector presets")->delimiter(',');
            app->add_option("--model", models, "Detector models")->delimiter(',');
        } else {
            app->add_option("--preset", presets, "Detector preset")->expected(1);
            app->add_option("--model", models, "Detector model")->expected(1);
        }
    }

    config::RunConfig resolve() const {
        config::RunConfig c = config_path.empty() ? config::default_config() : config::load_config_file(config_path);
        auto& base = c.spec.base;
        if (nmax) {
            if (*nmax < 2 || *nmax > 400) throw ConfigError("--nmax", "must lie in [2, 400]");
            const double db = base.spec.v0_db();
            base.spec = fock::SqueezedVacuumSpec::from_db(db, static_cast<std::size_t>(*nmax));
        }
        if (v0_db) base.spec = fock::SqueezedVacuumSpec::from_db(*v0_db, base.spec.nmax);
        if (r1) base.r1 = *r1;
        if (r2) base.r2 = *r2;
        if (mode_purity) base.mode_purity = *mode_purity;
        if (eta_hd) base.eta_hd = *eta_hd;
        if (m) c.m = *m;
        if (!presets.empty()) {
            c.preset_names = presets;
            c.custom_detector = false;
        }
        if (pdc || eta_apd) {
            if (!presets.empty()) throw ConfigError("--preset", "give either a preset or --pdc/--eta-apd, not both");
            if (!c.custom_detector) {
                // start from the first preset so a single override keeps the other value
                const auto& p = sweep::find_preset(c.preset_names.empty() ? "si-aqr-12" : c.preset_names.front());
                c.custom_pdc = p.pdc;
                c.custom_eta = p.eta;
            }
            c.custom_detector = true;
            if (pdc) c.custom_pdc = *pdc;
            if (eta_apd) c.custom_eta = *eta_apd;
        }
        if (!models.empty()) {
            c.kinds.clear();
            for (const auto& name : models) {
                try {
                    c.kinds.push_back(subtraction::parse_detector_kind(name));
                } catch (const InvalidArgument& e) {
                    throw ConfigError("--model", e.what());
                }
            }
        }
        c.finalize();
        try {
            base.validate();
        } catch (const InvalidArgument& e) {
            throw ConfigError("experiment", e.what());
        }
        return c;
    }
};

// prepare/witness act on one detector: the first configured entry.
sweep::DetectorEntry single_detector(const config::RunConfig& c, bool model_given) {
    if (!model_given) {
        for (const auto& d : c.spec.detectors)
            if (subtraction::kind_of(d.model) == subtraction::DetectorKind::imnpnrd) return d;
    }
    return c.spec.detectors.front();
}

void print_distribution(const DensityMatrix& rho, std::size_t levels, std::ostream& out) {
    const auto pd = fock::photon_distribution(rho);
    out << "photon_distribution:\n";
    for (std::size_t n = 0; n < std::min(levels, pd.size()); ++n) out << "  " << n << ' ' << num(pd[n]) << '\n';
}

void print_witness(const witness::WitnessResult& w, std::ostream& out) {
    out << "witness = " << num(w.witness_value) << '\n'
        << "a_opt = " << num(w.a_opt) << '\n'
        << "s_opt = " << num(w.s_opt) << '\n'
        << "p0 = " << num(w.p0) << '\n'
        << "p1 = " << num(w.p1) << '\n'
        << "classical_margin = " << num(w.classical_margin) << '\n'
        << "quantum_non_gaussian = " << (w.witness_value > 0.0 ? "yes" : "no") << '\n';
    if (!w.skipped_s.empty()) out << "skipped_s_points = " << w.skipped_s.size() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Photon-subtracted squeezed vacuum simulator"};
    app.name("kitten");
    app.require_subcommand(1, 1);

    // prepare
    Overrides prep;
    std::string dump_path;
    std::size_t levels = 11;
    auto* prepare = app.add_subcommand("prepare", "Prepare a heralded state and report W(0,0)");
    prep.attach(prepare, false);
    prepare->add_option("--dump", dump_path, "Write the density matrix as JSON");
    prepare->add_option("--levels", levels, "Photon-number levels to print");

    // witness
    Overrides wit;
    std::string state_path;
    auto* wcmd = app.add_subcommand("witness", "Evaluate the non-Gaussian witness");
    wit.attach(wcmd, false);
    wcmd->add_option("--state", state_path, "Density-matrix JSON file")->check(CLI::ExistingFile);

    // sweep
    Overrides swp;
    std::optional<std::string> var, format, output;
    std::optional<double> from, to;
    std::optional<std::size_t> points, workers;
    bool log_grid = false, linear_grid = false, no_witness = false;
    auto* scmd = app.add_subcommand("sweep", "Sweep one parameter across detector models");
    swp.attach(scmd, true);
    scmd->add_option("--var", var, "Variable: v0_db, r1, r2, eta_apd, eta_hd, pdc, mode_purity");
    scmd->add_option("--from", from, "First grid value");
    scmd->add_option("--to", to, "Last grid value");
    scmd->add_option("--points", points, "Grid size");
    auto* log_flag = scmd->add_flag("--log", log_grid, "Logarithmic grid");
    scmd->add_flag("--linear", linear_grid, "Linear grid")->excludes(log_flag);
    scmd->add_flag("--no-witness", no_witness, "Skip the witness optimization");
    scmd->add_option("--format", format, "csv or json");
    scmd->add_option("--output", output, "Output file (default stdout)");
    scmd->add_option("--workers", workers, "Worker threads (default from KITTEN_WORKERS)");

    // calibrate
    double vsqz = 0.0, vasqz = 0.0, r2 = 0.08;
    std::optional<double> eta_hd, eta_qe, eta_t, zeta;
    auto* ccmd = app.add_subcommand("calibrate", "Map measured variances onto model parameters");
    ccmd->add_option("--vsqz", vsqz, "Measured squeezed variance (linear)")->required();
    ccmd->add_option("--vasqz", vasqz, "Measured anti-squeezed variance (linear)")->required();
    ccmd->add_option("--r2", r2, "Tap reflectivity");
    auto* eta_opt = ccmd->add_option("--eta-hd", eta_hd, "Homodyne efficiency");
    ccmd->add_option("--eta-qe", eta_qe, "Photodiode quantum efficiency")->excludes(eta_opt);
    ccmd->add_option("--eta-t", eta_t, "Path transmission")->excludes(eta_opt);
    ccmd->add_option("--zeta", zeta, "Fringe visibility")->excludes(eta_opt);

    auto* pcmd = app.add_subcommand("presets", "List detector presets and experiment defaults");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (prepare->parsed()) {
            const auto c = prep.resolve();
            const auto det = single_detector(c, !prep.models.empty());
            const auto k = subtraction::prepare_kitten_detailed(c.spec.base, det.model);
            out << "detector = " << det.label << '\n'
                << "model = " << subtraction::to_string(subtraction::kind_of(det.model)) << '\n'
                << "W(0,0) = " << num(fock::wigner_origin(k.state)) << '\n'
                << "herald_probability = " << num(k.herald_probability) << '\n'
                << "purity = " << num(k.state.purity()) << '\n';
            print_distribution(k.state, levels, out);
            if (!dump_path.empty()) {
                std::ofstream f(dump_path);
                if (!f) throw ConfigError("--dump", "cannot open '" + dump_path + "'");
                sweep::write_density_matrix(k.state, f);
            }
        } else if (wcmd->parsed()) {
            const auto c = wit.resolve();
            DensityMatrix rho;
            if (!state_path.empty()) {
                std::ifstream f(state_path);
                rho = sweep::read_density_matrix(f);
            } else {
                const auto det = single_detector(c, !wit.models.empty());
                rho = subtraction::prepare_kitten(c.spec.base, det.model);
            }
            out << "W(0,0) = " << num(fock::wigner_origin(rho)) << '\n';
            print_witness(witness::evaluate_witness(rho, c.spec.witness_cfg), out);
        } else if (scmd->parsed()) {
            auto c = swp.resolve();
            if (var) {
                c.spec.variable = sweep::parse_variable(*var);
                c.grid = sweep::default_grid(c.spec.variable);
            }
            if (from) c.grid.from = *from;
            if (to) c.grid.to = *to;
            if (points) c.grid.points = *points;
            if (log_grid) c.grid.log = true;
            if (linear_grid) c.grid.log = false;
            if (no_witness) c.spec.compute_witness = false;
            if (format) c.format = sweep::parse_format(*format);
            if (output) c.output_path = *output;
            c.finalize();
            const auto rows = sweep::run_sweep(c.spec, workers.value_or(0));
            sweep::emit(rows, c.spec, c.format, c.output_path, out);
            std::size_t failed = 0;
            for (const auto& r : rows) failed += r.ok() ? 0 : 1;
            if (failed) err << failed << " of " << rows.size() << " points failed (see empty fields)\n";
        } else if (ccmd->parsed()) {
            double eta = 1.0;
            if (eta_hd) {
                eta = *eta_hd;
            } else if (eta_qe || eta_t || zeta) {
                eta = calibration::homodyne_efficiency(eta_qe.value_or(1.0), eta_t.value_or(1.0), zeta.value_or(1.0));
            }
            const auto r = calibration::calibrate(vsqz, vasqz, eta, r2);
            out << std::fixed << std::setprecision(4) << "eta_HD = " << r.eta_hd << '\n'
                << std::setprecision(3) << "V0 = " << r.v0 << " (" << r.v0_db << " dB)\n"
                << std::setprecision(4) << "r_total = " << r.r_total << '\n'
                << "r1 = " << r.r1 << '\n';
        } else if (pcmd->parsed()) {
            out << "# detector presets (version " << sweep::kPresetVersion << ")\n"
                << "name,device,pdc,eta\n";
            for (const auto& p : sweep::presets()) out << p.name << ',' << p.device << ',' << num(p.pdc) << ',' << num(p.eta) << '\n';
            const auto e = sweep::default_experiment();
            out << "# experiment defaults\n"
                << "v0_db = " << num(e.spec.v0_db()) << '\n'
                << "r1 = " << num(e.r1) << '\n'
                << "r2 = " << num(e.r2) << '\n'
                << "mode_purity = " << num(e.mode_purity) << '\n'
                << "eta_hd = " << num(e.eta_hd) << '\n'
                << "nmax = " << e.spec.nmax << '\n';
        }
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace kitten::cli
