#pragma once

// Tower configuration files and the CSV/JSON tables written by the tools.

#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "infext/funcspace.hpp"
#include "infext/measures.hpp"
#include "infext/process.hpp"
#include "infext/tower.hpp"

namespace infext {

/// A malformed configuration; the message names the line or the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };
Format parse_format(const std::string& name);

/// Resolved configuration echoed in every output header, sorted by key.
using Config = std::map<std::string, std::string>;

/// Tower file:
///   {"p": 2, "steps": [{"kind": "unramified", "f_factor": 2},
///                      {"kind": "eisenstein", "degree": 2, "poly": [["-2", 0], ["1", 2]]}]}
/// Each poly term is [coefficient, exponent]; a coefficient is a decimal string or an
/// array of decimal strings (coordinates in the previous step's power basis). A step may set
/// "closes_level": false to share a level with the next step. Presets:
///   {"p": 2, "preset": "unramified", "f": [1, 2, 6, 24]}   {"p": 2, "preset": "cyclotomic", "depth": 4}
TowerSpec parse_tower_spec(const std::string& text);
Tower parse_tower(const std::string& text);
Tower load_tower(const std::string& path);
/// Canonical JSON of the explicit steps.
std::string tower_to_json(const Tower& tower);
/// FNV-1a of the canonical JSON, as 16 hex digits.
std::string tower_hash(const Tower& tower);

/// Rows "coset,re,im" keyed by digit labels of the group quotient.
void write_function(std::ostream& out, const CylFunction& f, Format format, const Config& config = {});
/// Reads rows written by write_function (CSV or JSON) onto a space; unlisted cosets are 0.
CylFunction read_function(const SpacePtr& space, const std::string& text);

void write_spectrum(std::ostream& out, const std::vector<SpectrumEntry>& entries,
                    const std::vector<std::pair<int, double>>& min_trend, Format format, const Config& config = {});
void write_measure_report(std::ostream& out, const MeasureReport& rep, Format format, const Config& config = {});
void write_mc_report(std::ostream& out, const MonteCarloReport& rep, Format format, const Config& config = {});
void write_path_log(std::ostream& out, const PathSample& path, const BallQuotient& group);
/// Rows "row,col,re,im" of a dense row-major matrix on a quotient.
void write_matrix(std::ostream& out, const std::vector<Complex>& matrix, const CylinderSpace& space, Format format,
                  const Config& config = {});

/// Generic key/value report for the smaller commands.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};
void write_table(std::ostream& out, const Table& table, Format format, const Config& config = {});

/// Shortest decimal that round-trips.
std::string format_double(double x);
std::string format_rational(const mpq_class& r);

/// {"error": kind, "message": ...} on one line.
std::string failure_record(const std::string& kind, const std::string& message);

}  // namespace infext
