#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kitten/errors.hpp"
#include "kitten/sweep_io.hpp"

namespace kitten::sweep {
namespace {

using nlohmann::json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
    if (!std::isfinite(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

double parse_number(const std::string& field, std::size_t line) {
    if (field.empty()) return kNaN;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != field.size()) throw ConfigError("csv:" + std::to_string(line), "bad number '" + field + "'");
    return v;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j, const char* key) {
    const auto& v = j.at(key);
    return v.is_null() ? kNaN : v.get<double>();
}

}  // namespace

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << to_string(r.variable) << ',' << fmt(r.value) << ',' << r.detector << ','
            << subtraction::to_string(r.model) << ',' << fmt(r.w00) << ',' << fmt(r.witness) << ','
            << fmt(r.a_opt) << ',' << fmt(r.s_opt) << ',' << fmt(r.p0) << ',' << fmt(r.p1) << ','
            << fmt(r.herald_prob) << '\n';
    }
}

std::vector<SweepRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || split(line).size() != 11 || line.rfind(kCsvHeader, 0) != 0) {
        throw ConfigError("csv:1", "missing or malformed header");
    }
    std::vector<SweepRow> rows;
    std::size_t n = 1;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 11) throw ConfigError("csv:" + std::to_string(n), "expected 11 columns");
        SweepRow r;
        r.variable = parse_variable(f[0]);
        r.value = parse_number(f[1], n);
        r.detector = f[2];
        r.model = subtraction::parse_detector_kind(f[3]);
        r.w00 = parse_number(f[4], n);
        r.witness = parse_number(f[5], n);
        r.a_opt = parse_number(f[6], n);
        r.s_opt = parse_number(f[7], n);
        r.p0 = parse_number(f[8], n);
        r.p1 = parse_number(f[9], n);
        r.herald_prob = parse_number(f[10], n);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_json(const std::vector<SweepRow>& rows, const SweepSpec& spec, std::ostream& out) {
    json meta;
    meta["nmax"] = spec.nmax();
    meta["variable"] = std::string(to_string(spec.variable));
    meta["grid"] = spec.grid;
    meta["preset_version"] = std::string(kPresetVersion);
    meta["witness"] = {
        {"enabled", spec.compute_witness},
        {"a_grid", spec.witness_cfg.a_grid},
        {"s_grid", spec.witness_cfg.s_grid},
        {"r_max", spec.witness_cfg.r_max},
        {"refine_tol", spec.witness_cfg.refine_tol},
    };
    meta["experiment"] = {
        {"v0_db", spec.base.spec.v0_db()},     {"r1", spec.base.r1},
        {"r2", spec.base.r2},                  {"mode_purity", spec.base.mode_purity},
        {"eta_hd", spec.base.eta_hd},
    };
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({
            {"variable", std::string(to_string(r.variable))},
            {"value", r.value},
            {"detector", r.detector},
            {"model", std::string(subtraction::to_string(r.model))},
            {"w00", number_or_null(r.w00)},
            {"witness", number_or_null(r.witness)},
            {"a_opt", number_or_null(r.a_opt)},
            {"s_opt", number_or_null(r.s_opt)},
            {"p0", number_or_null(r.p0)},
            {"p1", number_or_null(r.p1)},
            {"herald_prob", number_or_null(r.herald_prob)},
            {"error", r.ok() ? json(nullptr) : json(r.error)},
        });
    }
    out << json{{"meta", meta}, {"rows", arr}}.dump(2) << '\n';
}

std::vector<SweepRow> read_json(std::istream& in) {
    std::vector<SweepRow> rows;
    try {
        const json doc = json::parse(in);
        for (const auto& j : doc.at("rows")) {
            SweepRow r;
            r.variable = parse_variable(j.at("variable").get<std::string>());
            r.value = j.at("value").get<double>();
            r.detector = j.at("detector").get<std::string>();
            r.model = subtraction::parse_detector_kind(j.at("model").get<std::string>());
            r.w00 = number_from(j, "w00");
            r.witness = number_from(j, "witness");
            r.a_opt = number_from(j, "a_opt");
            r.s_opt = number_from(j, "s_opt");
            r.p0 = number_from(j, "p0");
            r.p1 = number_from(j, "p1");
            r.herald_prob = number_from(j, "herald_prob");
            if (j.contains("error") && !j["error"].is_null()) r.error = j["error"].get<std::string>();
            rows.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw ConfigError("json", e.what());
    }
    return rows;
}

OutputFormat parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw ConfigError("output.format", "expected csv or json, got '" + std::string(name) + "'");
}

void emit(const std::vector<SweepRow>& rows, const SweepSpec& spec, OutputFormat format, const std::string& path,
          std::ostream& fallback) {
    if (rows.empty()) throw InvalidArgument("nothing to emit");
    auto write = [&](std::ostream& os) {
        if (format == OutputFormat::csv) {
            write_csv(rows, os);
        } else {
            write_json(rows, spec, os);
        }
    };
    if (path.empty() || path == "-") {
        write(fallback);
        return;
    }
    std::ofstream f(path);
    if (!f) throw ConfigError("output.path", "cannot open '" + path + "' for writing");
    write(f);
    if (!f) throw ConfigError("output.path", "write to '" + path + "' failed");
}

void write_density_matrix(const DensityMatrix& rho, std::ostream& out) {
    const auto e = rho.elements();
    json j{{"dim", rho.dim()},
           {"elements", std::vector<double>(e.begin(), e.end())},
           {"trace_deficit", rho.trace_deficit()}};
    out << j.dump() << '\n';
}

DensityMatrix read_density_matrix(std::istream& in) {
    try {
        const json j = json::parse(in);
        const auto dim = j.at("dim").get<std::size_t>();
        const auto& el = j.at("elements");
        if (!el.is_array() || el.size() != dim * dim) {
            throw ConfigError("state.elements", "expected dim*dim row-major entries");
        }
        std::vector<double> values;
        values.reserve(el.size());
        for (const auto& v : el) {
            if (!v.is_number()) throw ConfigError("state.elements", "entries must be real numbers");
            values.push_back(v.get<double>());
        }
        const double deficit = j.contains("trace_deficit") ? j["trace_deficit"].get<double>() : 0.0;
        DensityMatrix rho(dim, std::move(values), deficit);
        try {
            rho.validate();
        } catch (const InvalidArgument& e) {
            throw ConfigError("state", e.what());
        }
        return rho;
    } catch (const json::exception& e) {
        throw ConfigError("state", e.what());
    }
}

}  // namespace kitten::sweep
