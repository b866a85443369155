#pragma once

#include <map>
#include <span>
#include <string>

#include "psds/event_model.hpp"
#include "psds/matching.hpp"

namespace psds {

using CrossTriggerRates = std::map<std::string, double, std::less<>>;

/// Rates for one class at one operating point. fp_rate, ct_rates and efpr
/// are events per EvalParams::time_unit.
struct ClassRates {
  double tp_ratio = 0.0;
  double fp_rate = 0.0;
  CrossTriggerRates ct_rates;
  double efpr = 0.0;

  friend bool operator==(const ClassRates&, const ClassRates&) = default;
};

using RatesTable = std::map<std::string, ClassRates, std::less<>>;

/// TP ratio = N_TP / |gt of class|, FP rate = N_FP / total dataset duration,
/// CT rate against another class = N_CT / summed label duration of that
/// class, then the effective FP rate with params.alpha_ct. Every class of
/// the dataset gets a ct_rates entry for each other class (zero included).
///
/// Throws EmptyClassGroundTruth, ZeroLabelDuration or DegenerateClassCount.
RatesTable compute_rates(const CountsMatrix& counts, const Dataset& dataset,
                         const EvalParams& params);

/// fp_rate + alpha_ct / (n_classes - 1) * sum of ct_rates.
/// Throws DegenerateClassCount when n_classes < 2 and alpha_ct > 0.
double effective_fpr(const ClassRates& rates, double alpha_ct,
                     std::size_t n_classes);

/// Mean of the TP ratios minus alpha_st times their population standard
/// deviation. Floored at 0 when `clamp` is set. Requires at least one value.
double effective_tpr(std::span<const double> tp_ratios, double alpha_st,
                     bool clamp = true);

struct F1Report {
  std::map<std::string, double, std::less<>> per_class;
  double macro = 0.0;
  double micro = 0.0;

  friend bool operator==(const F1Report&, const F1Report&) = default;
};

/// F1 = 2 TP / (2 TP + FP + FN) with FN = n_gt - n_tp, 0/0 taken as 0.
/// Macro is the unweighted class mean, micro pools counts first.
F1Report f1_scores(const CountsMatrix& counts);

}  // namespace psds
