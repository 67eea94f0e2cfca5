#pragma once
// Run configuration read from sectioned key-value text:
//   [experiment] v0_db v0 r1 r2 mode_purity eta_hd nmax
//   [detector]   preset models pdc eta m
//   [witness]    enabled a_points s_min s_max s_points r_max refine_tol
//   [sweep]      variable from to points log
//   [output]     format path
// Every key is optional; unknown sections and keys are rejected.

#include <iosfwd>
#include <string>
#include <vector>

#include "kitten/sweep.hpp"
#include "kitten/sweep_io.hpp"

namespace kitten::config {

struct RunConfig {
    sweep::SweepSpec spec;
    sweep::GridDefaults grid;
    std::vector<std::string> preset_names;
    std::vector<subtraction::DetectorKind> kinds;
    // Explicit device parameters replace the presets with a single "custom" device.
    bool custom_detector = false;
    double custom_pdc = 0.0;
    double custom_eta = 1.0;
    unsigned m = 1;
    sweep::OutputFormat format = sweep::OutputFormat::csv;
    std::string output_path;

    /// Rebuilds spec.grid and spec.detectors from the fields above.
    void finalize();
};

RunConfig default_config();
RunConfig load_config(std::istream& in, const std::string& source = "config");
RunConfig load_config_file(const std::string& path);

std::vector<std::string> split_list(const std::string& text);
double parse_real(const std::string& text, const std::string& path);
long parse_integer(const std::string& text, const std::string& path);
bool parse_bool(const std::string& text, const std::string& path);

}  // namespace kitten::config
