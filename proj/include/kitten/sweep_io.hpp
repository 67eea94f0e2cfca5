#pragma once
// CSV/JSON emission of sweep rows and density-matrix dumps.

#include <iosfwd>
#include <string>
#include <vector>

#include "kitten/density_matrix.hpp"
#include "kitten/sweep.hpp"

namespace kitten::sweep {

inline constexpr const char* kCsvHeader = "variable,value,detector,model,w00,witness,a_opt,s_opt,p0,p1,herald_prob";

/// 9 significant digits; failed rows leave their numeric fields empty.
void write_csv(const std::vector<SweepRow>& rows, std::ostream& out);
std::vector<SweepRow> read_csv(std::istream& in);

/// {"meta": {...}, "rows": [...]} with null for missing values and an "error" field.
void write_json(const std::vector<SweepRow>& rows, const SweepSpec& spec, std::ostream& out);
std::vector<SweepRow> read_json(std::istream& in);

enum class OutputFormat { csv, json };
OutputFormat parse_format(std::string_view name);
/// Writes to `path`, or to `fallback` when path is empty or "-".
void emit(const std::vector<SweepRow>& rows, const SweepSpec& spec, OutputFormat format, const std::string& path,
          std::ostream& fallback);

/// {"dim": n, "elements": [row-major], "trace_deficit": d}
void write_density_matrix(const DensityMatrix& rho, std::ostream& out);
DensityMatrix read_density_matrix(std::istream& in);

}  // namespace kitten::sweep
