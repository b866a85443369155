#include "psds/psdroc.hpp"

#include <algorithm>
#include <utility>

#include "psds/error.hpp"
#include "psds/rates.hpp"

namespace psds {

namespace {

double staircase_value(std::span<const CurvePoint> points, double e) noexcept {
  auto it = std::upper_bound(
      points.begin(), points.end(), e,
      [](double value, const CurvePoint& p) { return value < p.efpr; });
  if (it == points.begin()) return 0.0;
  return std::prev(it)->tpr;
}

}  // namespace

ClassCurve::ClassCurve(std::string label, std::vector<CurvePoint> breakpoints)
    : label_(std::move(label)), breakpoints_(std::move(breakpoints)) {
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i].efpr > breakpoints_[i - 1].efpr)) {
      throw Error(ErrorCode::InvalidParameter,
                  "curve breakpoints must be strictly increasing in efpr");
    }
  }
}

double ClassCurve::at(double efpr) const noexcept {
  return staircase_value(breakpoints_, efpr);
}

double PsdRoc::at(double efpr) const noexcept {
  return staircase_value(points, efpr);
}

std::vector<OpPoint> pareto_filter(std::span<const OpPoint> points) {
  std::vector<OpPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](const OpPoint& a, const OpPoint& b) {
    if (a.efpr != b.efpr) return a.efpr < b.efpr;
    return a.op_id < b.op_id;
  });

  // A point survives iff its TP ratio equals the best TP ratio among all
  // points with efpr at or below its own (its own efpr group included).
  std::vector<OpPoint> kept;
  double best = -1.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].efpr == sorted[i].efpr) {
      best = std::max(best, sorted[j].tp_ratio);
      ++j;
    }
    for (std::size_t k = i; k < j; ++k) {
      if (sorted[k].tp_ratio >= best) kept.push_back(sorted[k]);
    }
    i = j;
  }
  return kept;
}

ClassCurve staircase(std::string label, std::span<const OpPoint> points) {
  std::vector<CurvePoint> sorted;
  sorted.reserve(points.size());
  for (const auto& p : points) sorted.push_back({p.efpr, p.tp_ratio});
  std::sort(sorted.begin(), sorted.end(),
            [](const CurvePoint& a, const CurvePoint& b) { return a.efpr < b.efpr; });

  std::vector<CurvePoint> bps;
  for (const auto& p : sorted) {
    if (!bps.empty() && bps.back().efpr == p.efpr) {
      bps.back().tpr = std::max(bps.back().tpr, p.tpr);
    } else {
      bps.push_back(p);
    }
  }
  return ClassCurve(std::move(label), std::move(bps));
}

PsdRoc merge_psd_roc(const std::map<std::string, ClassCurve, std::less<>>& curves,
                     const EvalParams& params) {
  if (curves.empty()) {
    throw Error(ErrorCode::InvalidParameter, "no class curves to merge");
  }
  if (!(params.e_max > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "e_max must be positive");
  }

  std::vector<double> grid{0.0, params.e_max};
  for (const auto& [_, curve] : curves) {
    for (const auto& b : curve.breakpoints()) {
      if (b.efpr >= 0.0 && b.efpr <= params.e_max) grid.push_back(b.efpr);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  PsdRoc roc;
  roc.params = params;
  roc.points.reserve(grid.size());
  std::vector<double> values(curves.size());
  for (double e : grid) {
    std::size_t k = 0;
    for (const auto& [_, curve] : curves) values[k++] = curve.at(e);
    roc.points.push_back(
        {e, effective_tpr(values, params.alpha_st, params.clamp_etpr)});
  }
  roc.psds = integrate_psds(roc.points, params.e_max);
  return roc;
}

double integrate_psds(std::span<const CurvePoint> staircase, double e_max) {
  if (!(e_max > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "e_max must be positive");
  }
  double area = 0.0;
  for (std::size_t i = 0; i < staircase.size(); ++i) {
    const double lo = std::max(0.0, staircase[i].efpr);
    const double hi =
        i + 1 < staircase.size() ? std::min(e_max, staircase[i + 1].efpr) : e_max;
    if (hi > lo) area += (hi - lo) * staircase[i].tpr;
  }
  return area / e_max;
}

SweepResult evaluate_sweep(const Sweep& sweep, const Dataset& dataset,
                           const EvalParams& params) {
  params.validate();
  SweepResult result;
  for (const auto& label : dataset.classes()) result.op_points[label];

  for (const auto& [op_id, counts] : sweep) {
    const auto rates = compute_rates(counts, dataset, params);
    for (const auto& [label, r] : rates) {
      result.op_points[label].push_back({r.efpr, r.tp_ratio, op_id});
    }
  }
  for (const auto& [label, points] : result.op_points) {
    const auto front = pareto_filter(points);
    result.curves.emplace(label, staircase(label, front));
  }
  result.roc = merge_psd_roc(result.curves, params);
  return result;
}

}  // namespace psds
