#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psds/event_model.hpp"
#include "psds/matching.hpp"
#include "psds/psdroc.hpp"
#include "psds/rates.hpp"

namespace psds {

enum class ReportKind { Counts, F1, Psds, Roc };
enum class MatchingMode { Intersection, Collar };
enum class ReportFormat { Json, Tsv };

std::string_view to_string(ReportKind kind) noexcept;
std::string_view to_string(MatchingMode mode) noexcept;

struct SweepBlock {
  std::map<std::string, std::vector<OpPoint>, std::less<>> op_points;
  std::map<std::string, std::vector<CurvePoint>, std::less<>> class_curves;
  std::vector<CurvePoint> psd_roc;
  /// Absent for ROC-only reports.
  std::optional<double> psds;

  friend bool operator==(const SweepBlock&, const SweepBlock&) = default;
};

/// Everything a CLI run emits. Optional blocks are present depending on the
/// report kind. Times are seconds, rates are events per params.time_unit.
struct EvaluationReport {
  ReportKind kind = ReportKind::Counts;
  MatchingMode matching = MatchingMode::Intersection;
  EvalParams params;
  std::optional<CollarParams> collar;
  double total_duration_s = 0.0;
  std::vector<std::string> classes;

  std::optional<CountsMatrix> counts;
  std::optional<RatesTable> rates;
  std::optional<F1Report> f1;
  std::optional<SweepBlock> sweep;

  friend bool operator==(const EvaluationReport&,
                         const EvaluationReport&) = default;
};

/// Counts, cross-trigger matrix and rates of one operating point.
EvaluationReport make_counts_report(const CountsMatrix& counts,
                                    const Dataset& dataset,
                                    const EvalParams& params);

/// Counts and F1 of one operating point. With `collar` set the counts are
/// expected to come from collar matching.
EvaluationReport make_f1_report(const CountsMatrix& counts,
                                const Dataset& dataset,
                                const EvalParams& params,
                                std::optional<CollarParams> collar = {});

/// Curves of a sweep; the PSDS value is included when `with_score` is set.
EvaluationReport make_sweep_report(const SweepResult& result,
                                   const Dataset& dataset,
                                   const EvalParams& params, bool with_score);

/// Rounds to 6 significant digits, the precision of every emitted number.
double round_significant(double value) noexcept;

/// JSON: one document, fixed key order. TSV: `# <block>` comment line,
/// header row and data rows per table, blocks separated by blank lines.
std::string emit_report(const EvaluationReport& report, ReportFormat format);

/// Inverse of the JSON emitter. Throws psds::Error(BadRow) on schema errors.
EvaluationReport parse_report_json(std::string_view text);

}  // namespace psds
