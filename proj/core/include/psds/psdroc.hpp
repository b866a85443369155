#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "psds/event_model.hpp"
#include "psds/matching.hpp"

namespace psds {

/// One operating point of one class: effective FP rate and TP ratio.
struct OpPoint {
  double efpr = 0.0;
  double tp_ratio = 0.0;
  std::string op_id;

  friend bool operator==(const OpPoint&, const OpPoint&) = default;
};

struct CurvePoint {
  double efpr = 0.0;
  double tpr = 0.0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Right-continuous staircase: 0 before the first breakpoint, then the value
/// of the last breakpoint at or below e. Breakpoints are strictly increasing
/// in efpr.
class ClassCurve {
 public:
  ClassCurve() = default;
  ClassCurve(std::string label, std::vector<CurvePoint> breakpoints);

  const std::string& label() const noexcept { return label_; }
  const std::vector<CurvePoint>& breakpoints() const noexcept {
    return breakpoints_;
  }

  double at(double efpr) const noexcept;

  friend bool operator==(const ClassCurve&, const ClassCurve&) = default;

 private:
  std::string label_;
  std::vector<CurvePoint> breakpoints_;
};

/// Merged curve on [0, e_max] and its normalized area.
struct PsdRoc {
  std::vector<CurvePoint> points;
  double psds = 0.0;
  EvalParams params;

  /// Staircase value (hold previous, 0 before the first point).
  double at(double efpr) const noexcept;

  friend bool operator==(const PsdRoc&, const PsdRoc&) = default;
};

/// Drops every point for which another point has a strictly higher TP ratio
/// at an equal or lower efpr. Survivors are returned sorted by efpr, then
/// op_id; their TP ratios are non-decreasing in that order.
std::vector<OpPoint> pareto_filter(std::span<const OpPoint> points);

/// Staircase through Pareto-filtered points. Points sharing an efpr keep the
/// highest TP ratio. An empty input gives the all-zero curve.
ClassCurve staircase(std::string label, std::span<const OpPoint> points);

/// Evaluates every class curve on the union of their breakpoints within
/// [0, e_max] plus {0, e_max}, combining the per-class values with
/// effective_tpr(alpha_st). Uses params.alpha_st, params.e_max and
/// params.clamp_etpr.
PsdRoc merge_psd_roc(const std::map<std::string, ClassCurve, std::less<>>& curves,
                     const EvalParams& params);

/// Exact area under a staircase on [0, e_max], divided by e_max. The value
/// before the first point is 0 and the last value is held up to e_max.
double integrate_psds(std::span<const CurvePoint> staircase, double e_max);

/// Everything derived from one operating-point sweep.
struct SweepResult {
  /// Every operating point of every class, in sweep order.
  std::map<std::string, std::vector<OpPoint>, std::less<>> op_points;
  std::map<std::string, ClassCurve, std::less<>> curves;
  PsdRoc roc;
};

using Sweep = std::map<std::string, CountsMatrix>;

/// Rates for every operating point, per-class Pareto filtering and
/// staircases, then the merged curve and PSDS.
SweepResult evaluate_sweep(const Sweep& sweep, const Dataset& dataset,
                           const EvalParams& params);

}  // namespace psds
