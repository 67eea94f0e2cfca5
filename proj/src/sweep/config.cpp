#include "kitten/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "kitten/errors.hpp"

namespace kitten::config {

namespace pt = boost::property_tree;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        const auto b = cur.find_first_not_of(" \t");
        const auto e = cur.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') {
            flush();
        } else {
            cur += c;
        }
    }
    flush();
    return out;
}

double parse_real(const std::string& text, const std::string& path) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError(path, "expected a number, got '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v)) throw ConfigError(path, "expected a number, got '" + text + "'");
    return v;
}

long parse_integer(const std::string& text, const std::string& path) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(text, &used);
    } catch (const std::exception&) {
        throw ConfigError(path, "expected an integer, got '" + text + "'");
    }
    if (used != text.size()) throw ConfigError(path, "expected an integer, got '" + text + "'");
    return v;
}

bool parse_bool(const std::string& text, const std::string& path) {
    std::string t = text;
    for (char& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
    if (t == "false" || t == "no" || t == "off" || t == "0") return false;
    throw ConfigError(path, "expected a boolean, got '" + text + "'");
}

void RunConfig::finalize() {
    spec.grid = sweep::make_grid(grid.from, grid.to, grid.points, grid.log);
    spec.detectors.clear();
    if (kinds.empty()) throw ConfigError("detector.models", "no detector models selected");
    if (custom_detector) {
        const sweep::DetectorPreset custom{"custom", "user supplied", custom_pdc, custom_eta};
        spec.detectors = sweep::detector_set(custom, kinds, m);
    } else {
        if (preset_names.empty()) throw ConfigError("detector.preset", "no presets selected");
        for (const auto& name : preset_names) {
            const auto set = sweep::detector_set(sweep::find_preset(name), kinds, m);
            spec.detectors.insert(spec.detectors.end(), set.begin(), set.end());
        }
    }
}

RunConfig default_config() {
    RunConfig c;
    c.spec.variable = sweep::Variable::pdc;
    c.grid = sweep::default_grid(c.spec.variable);
    c.preset_names = {"si-aqr-12", "ingaas-id200"};
    c.kinds = sweep::all_kinds();
    c.finalize();
    return c;
}

namespace {

using Handler = void (*)(RunConfig&, const std::string&, const std::string&);

struct Key {
    const char* section;
    const char* name;
    Handler apply;
};

const Key kKeys[] = {
    {"experiment", "v0_db",
     [](RunConfig& c, const std::string& v, const std::string& p) {
         c.spec.base.spec = fock::SqueezedVacuumSpec::from_db(parse_real(v, p), c.spec.base.spec.nmax);
     }},
    {"experiment", "v0",
     [](RunConfig& c, const std::string& v, const std::string& p) {
         const double lin = parse_real(v, p);
         if (!(lin > 0.0 && lin <= 1.0)) throw ConfigError(p, "squeezed variance must lie in (0, 1]");
         c.spec.base.spec = fock::SqueezedVacuumSpec::from_variance(lin, c.spec.base.spec.nmax);
     }},
    {"experiment", "r1", [](RunConfig& c, const std::string& v, const std::string& p) { c.spec.base.r1 = parse_real(v, p); }},
    {"experiment", "r2", [](RunConfig& c, const std::string& v, const std::string& p) { c.spec.base.r2 = parse_real(v, p); }},
    {"experiment", "mode_purity",
     [](RunConfig& c, const std::string& v, const std::string& p) { c.spec.base.mode_purity = parse_real(v, p); }},
    {"experiment", "eta_hd", [](RunConfig& c, const std::string& v, const std::string& p) { c.spec.base.eta_hd = parse_real(v, p); }},
    {"experiment", "nmax",
     [](RunConfig& c, const std::string& v, const std::string& p) {
         const long n = parse_integer(v, p);
         if (n < 2 || n > 400) throw ConfigError(p, "nmax must lie in [2, 400]");
         c.spec.base.spec.nmax = static_cast<std::size_t>(n);
     }},
    {"detector", "preset", [](RunConfig& c, const std::string& v, const std::string&) { c.preset_names = split_list(v); }},
    {"detector", "models",
     [](RunConfig& c, const std::string& v, const std::string& p) {
         c.kinds.clear();
         for (const auto& name : split_list(v)) {
             try {
                 c.kinds.push_back(subtraction::parse_detector_kind(name));
             } catch (const InvalidArgument& e) {
                 throw ConfigError(p, e.what());
             }
         }
     }},
    {"detector", "pdc",
     [](RunConfig& c, const std::string& v, const std::string& p) {
         c.custom_detector = true;
         c.custom_pdc = parse_real(v, p);
     }},
    {"detector", "eta",
     [](RunConfig& c, const std::string& v, const std::string& p) {
         c.custom_detector = true;
         c.custom_eta = parse_real(v, p);
     }},
    {"detector", "m",
     [](RunConfig& c, const std::string& v, const std::string& p) {
         const long m = parse_integer(v, p);
         if (m < 1) throw ConfigError(p, "click count must be >= 1");
         c.m = static_cast<unsigned>(m);
     }},
    {"witness", "enabled", [](RunConfig& c, const std::string& v, const std::string& p) { c.spec.compute_witness = parse_bool(v, p); }},
    {"witness", "a_points",
     [](RunConfig& c, const std::string& v, const std::string& p) {
         const long n = parse_integer(v, p);
         if (n < 1) throw ConfigError(p, "must be >= 1");
         c.spec.witness_cfg.a_grid = witness::linspace(0.0, 1.0, static_cast<std::size_t>(n));
     }},
    {"witness", "s_min", nullptr},
    {"witness", "s_max", nullptr},
    {"witness", "s_points", nullptr},
    {"witness", "r_max", [](RunConfig& c, const std::string& v, const std::string& p) { c.spec.witness_cfg.r_max = parse_real(v, p); }},
    {"witness", "refine_tol",
     [](RunConfig& c, const std::string& v, const std::string& p) { c.spec.witness_cfg.refine_tol = parse_real(v, p); }},
    {"sweep", "variable",
     [](RunConfig& c, const std::string& v, const std::string&) {
         c.spec.variable = sweep::parse_variable(v);
         c.grid = sweep::default_grid(c.spec.variable);
     }},
    {"sweep", "from", [](RunConfig& c, const std::string& v, const std::string& p) { c.grid.from = parse_real(v, p); }},
    {"sweep", "to", [](RunConfig& c, const std::string& v, const std::string& p) { c.grid.to = parse_real(v, p); }},
    {"sweep", "points",
     [](RunConfig& c, const std::string& v, const std::string& p) {
         const long n = parse_integer(v, p);
         if (n < 1) throw ConfigError(p, "must be >= 1");
         c.grid.points = static_cast<std::size_t>(n);
     }},
    {"sweep", "log", [](RunConfig& c, const std::string& v, const std::string& p) { c.grid.log = parse_bool(v, p); }},
    {"output", "format",
     [](RunConfig& c, const std::string& v, const std::string&) { c.format = sweep::parse_format(v); }},
    {"output", "path", [](RunConfig& c, const std::string& v, const std::string&) { c.output_path = v; }},
};

const Key* lookup(const std::string& section, const std::string& name) {
    for (const auto& k : kKeys)
        if (section == k.section && name == k.name) return &k;
    return nullptr;
}

}  // namespace

RunConfig load_config(std::istream& in, const std::string& source) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(source + ":" + std::to_string(e.line()), e.message());
    }
    RunConfig c = default_config();

    // Section order matters for the variable/grid pair, so apply [sweep].variable
    // and [experiment].nmax before everything else.
    const std::pair<const char*, const char*> first[] = {{"experiment", "nmax"}, {"sweep", "variable"}};
    for (const auto& [sec, key] : first) {
        if (auto s = tree.get_child_optional(sec))
            if (auto v = s->get_optional<std::string>(key)) lookup(sec, key)->apply(c, *v, std::string(sec) + "." + key);
    }

    double s_min = c.spec.witness_cfg.s_grid.front();
    double s_max = c.spec.witness_cfg.s_grid.back();
    long s_points = static_cast<long>(c.spec.witness_cfg.s_grid.size());
    bool s_touched = false;

    for (const auto& [section, body] : tree) {
        if (!body.data().empty()) throw ConfigError(section, "keys must live inside a section");
        bool known_section = false;
        for (const auto& k : kKeys) known_section = known_section || section == k.section;
        if (!known_section) throw ConfigError(section, "unknown section");
        for (const auto& [name, value] : body) {
            const std::string path = section + "." + name;
            const Key* key = lookup(section, name);
            if (!key) throw ConfigError(path, "unknown key");
            const std::string text = value.data();
            if (section == "witness" && name == "s_min") {
                s_min = parse_real(text, path);
                s_touched = true;
            } else if (section == "witness" && name == "s_max") {
                s_max = parse_real(text, path);
                s_touched = true;
            } else if (section == "witness" && name == "s_points") {
                s_points = parse_integer(text, path);
                if (s_points < 1) throw ConfigError(path, "must be >= 1");
                s_touched = true;
            } else if ((section == "experiment" && name == "nmax") || (section == "sweep" && name == "variable")) {
                continue;
            } else {
                try {
                    key->apply(c, text, path);
                } catch (const ConfigError&) {
                    throw;
                } catch (const Error& e) {
                    throw ConfigError(path, e.what());
                }
            }
        }
    }
    if (s_touched) {
        if (!(s_min >= 0.0 && s_max >= s_min)) throw ConfigError("witness.s_min", "need 0 <= s_min <= s_max");
        c.spec.witness_cfg.s_grid = witness::linspace(s_min, s_max, static_cast<std::size_t>(s_points));
    }
    if (c.custom_detector && tree.get_optional<std::string>("detector.preset")) {
        throw ConfigError("detector.preset", "give either a preset or explicit pdc/eta, not both");
    }
    c.finalize();
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError(path, "cannot open config file");
    return load_config(f, path);
}

}  // namespace kitten::config
