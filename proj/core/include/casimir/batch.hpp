#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "casimir/dielectric.hpp"
#include "casimir/ntlo.hpp"
#include "casimir/scattering.hpp"

namespace casimir::batch {

enum class Quantity { Energy, Force, Gradient, All };
enum class Method { Pfa, Ntlo, PcSeries, Exact };
enum class OutputFormat { Csv, Json };

struct SweepSpec {
    double min = 0.0;
    double max = 0.0;
    int points = 1;
    bool log = true;
};

struct RunConfig {
    Quantity quantity = Quantity::All;
    Method method = Method::Ntlo;
    DielectricModel material1 = DielectricModel::perfect_conductor();
    DielectricModel material2 = DielectricModel::perfect_conductor();
    double radius = 1e-3;
    SweepSpec gap;
    EngineSettings engine;
    TruncationSpec trunc;
    int jobs = 0;
    std::string output_path;  // empty -> stdout
    OutputFormat format = OutputFormat::Csv;

    void validate() const;  // throws std::invalid_argument with field context
};

struct KindValues {
    double leading = 0.0;
    double ntlo = 0.0;
    double sum = 0.0;
    double normalized_leading = 0.0;
    double normalized_sum = 0.0;
    double theta = 0.0;
};

struct ResultRecord {
    double d = 0.0;
    double e = 0.0;
    std::optional<KindValues> energy, force, gradient;
    EngineDiagnostics diag;
    std::string status = "ok";  // "ok" or an error note
};

struct RunOutput {
    std::vector<ResultRecord> records;
    bool any_error = false;
};

/// Evaluates every sweep point, dispatching to a worker pool of config.jobs
/// threads (0 -> machine parallelism). Records come back in input order and
/// failed points are flagged, never dropped.
RunOutput run_sweep(const RunConfig& config);

std::vector<double> sweep_gaps(const SweepSpec& spec);

/// 17-significant-digit serialization used by both CSV and JSON so the two
/// emissions carry identical values and round-trip losslessly.
std::string format_g17(double v);

void write_csv(std::ostream& os, const RunConfig& config, const std::vector<ResultRecord>& records);
void write_json(std::ostream& os, const RunConfig& config, const std::vector<ResultRecord>& records);

/// Parsed tabular result file (CSV with '#' preamble, or the JSON emission).
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // numeric cells; NaN for non-numeric
    std::vector<std::string> preamble;
};

ResultTable read_result_file(const std::string& path);

struct CompareReport {
    std::vector<std::string> columns;
    std::vector<double> max_abs_dev;  // max |ratio - 1| per column
    double overall = 0.0;
    std::vector<std::vector<double>> ratios;  // per row: d, then one ratio per column
};

/// Ratio report A/B over shared numeric columns (or an explicit key list).
/// Throws DataError when the d grids do not match.
CompareReport compare_tables(const ResultTable& a, const ResultTable& b,
                             const std::vector<std::string>& keys = {});

/// "pc", "vacuum", "plasma:9eV", "drude:9eV,0.035eV", "table:/path",
/// frequencies in eV (suffix "eV") or rad/s (bare number).
DielectricModel parse_material(const std::string& spec);

std::string quantity_name(Quantity q);
std::string method_name(Method m);

}  // namespace casimir::batch
