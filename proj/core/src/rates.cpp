#include "psds/rates.hpp"

#include <algorithm>
#include <cmath>

#include "psds/error.hpp"

namespace psds {

namespace {

double f1(std::size_t tp, std::size_t fp, std::size_t fn) noexcept {
  const auto denom = 2 * tp + fp + fn;
  if (denom == 0) return 0.0;
  return 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

}  // namespace

RatesTable compute_rates(const CountsMatrix& counts, const Dataset& dataset,
                         const EvalParams& params) {
  const double unit = seconds_per(params.time_unit);
  const double total = dataset.total_duration() / unit;
  const auto& classes = dataset.classes();

  std::map<std::string, double, std::less<>> label_time;
  for (const auto& label : classes) {
    label_time[label] = dataset.ground_truth().label_duration(label) / unit;
  }

  RatesTable table;
  for (const auto& label : classes) {
    const auto& c = counts.at(label);
    if (c.n_gt == 0) {
      throw Error(ErrorCode::EmptyClassGroundTruth,
                  "class '" + label + "' has no ground-truth events");
    }
    ClassRates r;
    r.tp_ratio = static_cast<double>(c.n_tp) / static_cast<double>(c.n_gt);
    r.fp_rate = static_cast<double>(c.n_fp) / total;
    for (const auto& other : classes) {
      if (other == label) continue;
      const double denom = label_time.at(other);
      if (!(denom > 0.0)) {
        throw Error(ErrorCode::ZeroLabelDuration,
                    "class '" + other + "' has zero total label duration");
      }
      r.ct_rates.emplace(other,
                         static_cast<double>(counts.ct(label, other)) / denom);
    }
    r.efpr = effective_fpr(r, params.alpha_ct, classes.size());
    table.emplace(label, std::move(r));
  }
  return table;
}

double effective_fpr(const ClassRates& rates, double alpha_ct,
                     std::size_t n_classes) {
  if (alpha_ct == 0.0) return rates.fp_rate;
  if (n_classes < 2) {
    throw Error(ErrorCode::DegenerateClassCount,
                "cross-trigger weighting needs at least two classes");
  }
  double sum = 0.0;
  for (const auto& [_, rate] : rates.ct_rates) sum += rate;
  return rates.fp_rate +
         alpha_ct * sum / static_cast<double>(n_classes - 1);
}

double effective_tpr(std::span<const double> tp_ratios, double alpha_st,
                     bool clamp) {
  if (tp_ratios.empty()) {
    throw Error(ErrorCode::InvalidParameter,
                "effective TP ratio needs at least one class");
  }
  const auto [lo, hi] = std::minmax_element(tp_ratios.begin(), tp_ratios.end());
  if (*lo == *hi) return clamp ? std::max(0.0, *lo) : *lo;

  const auto n = static_cast<double>(tp_ratios.size());
  double mean = 0.0;
  for (double r : tp_ratios) mean += r;
  mean /= n;
  double var = 0.0;
  for (double r : tp_ratios) var += (r - mean) * (r - mean);
  var /= n;
  const double value = mean - alpha_st * std::sqrt(var);
  return clamp ? std::max(0.0, value) : value;
}

F1Report f1_scores(const CountsMatrix& counts) {
  F1Report report;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double sum = 0.0;
  for (const auto& [label, c] : counts.classes) {
    const auto class_fn = c.n_gt - c.n_tp;
    const double score = f1(c.n_tp, c.n_fp, class_fn);
    report.per_class.emplace(label, score);
    sum += score;
    tp += c.n_tp;
    fp += c.n_fp;
    fn += class_fn;
  }
  if (!counts.classes.empty()) {
    report.macro = sum / static_cast<double>(counts.classes.size());
  }
  report.micro = f1(tp, fp, fn);
  return report;
}

}  // namespace psds
