#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psds/event_model.hpp"

namespace psds {

using CrossTriggerRow = std::map<std::string, std::size_t, std::less<>>;

/// Counts for one class at one operating point.
///
/// n_tp counts ground truths, n_fp counts detections. `ct` maps another
/// class to the number of this class's false positives that cross-trigger on
/// it; only non-zero entries are stored and the own class never appears.
struct ClassCounts {
  std::size_t n_tp = 0;
  std::size_t n_fp = 0;
  std::size_t n_sys = 0;
  std::size_t n_gt = 0;
  std::size_t n_relevant = 0;
  CrossTriggerRow ct;

  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

/// Per-class counts for every class of the dataset's class universe.
struct CountsMatrix {
  std::map<std::string, ClassCounts, std::less<>> classes;

  const ClassCounts& at(std::string_view label) const;
  /// Cross-trigger count of class `label` against `other`, 0 when absent.
  std::size_t ct(std::string_view label, std::string_view other) const;

  std::size_t total_tp() const;
  std::size_t total_fp() const;
  std::size_t total_ct() const;

  friend bool operator==(const CountsMatrix&, const CountsMatrix&) = default;
};

struct DtcSplit {
  std::vector<Event> relevant;
  std::vector<Event> false_positives;
};

/// Detection tolerance criterion. A detection is relevant when the summed
/// intersection with same-class ground truth, divided by the detection
/// duration, is at least `rho_dtc`. Everything else is a false positive.
/// Input order is preserved in both outputs.
DtcSplit dtc_filter(std::span<const Event> detections,
                    std::span<const Event> ground_truth, double rho_dtc);
DtcSplit dtc_filter(std::span<const Event> detections,
                    const IntervalIndex& ground_truth, double rho_dtc);

/// Ground truth intersection criterion: the ground truths whose summed
/// intersection with the relevant detections, divided by their own
/// duration, is at least `rho_gtc`.
std::vector<Event> gtc_select(std::span<const Event> ground_truth,
                              std::span<const Event> relevant, double rho_gtc);

/// Cross-trigger tolerance criterion. For every false positive and every
/// ground-truth class other than `own_class`, counts one cross-trigger when
/// the covered fraction of the false positive reaches `rho_cttc`. A single
/// false positive may count against several classes.
CrossTriggerRow cttc_count(std::span<const Event> false_positives,
                           std::string_view own_class,
                           const EventSet& ground_truth, double rho_cttc);

/// Runs the three criteria for every class of the dataset. Classes without
/// detections get zero system counts. Throws UnknownClass for detection
/// labels outside the dataset's class universe.
CountsMatrix count_matrix(const EventSet& detections, const Dataset& dataset,
                          const EvalParams& params);

struct CollarCounts {
  std::size_t n_tp = 0;
  std::size_t n_fp = 0;

  friend bool operator==(const CollarCounts&, const CollarCounts&) = default;
};

/// Collar-based matching of one class. A ground truth is a TP when some
/// detection starts within `collar` of its onset and, with check_offset,
/// ends within max(collar, offset_ratio * duration) of its offset.
/// Detections that match no ground truth under the same rule are FPs.
/// Matching is existence-based, not one-to-one.
CollarCounts collar_match(std::span<const Event> detections,
                          std::span<const Event> ground_truth,
                          const CollarParams& collar);

/// collar_match over every class, packed into a CountsMatrix with an empty
/// cross-trigger table.
CountsMatrix collar_count_matrix(const EventSet& detections,
                                 const Dataset& dataset,
                                 const CollarParams& collar);

}  // namespace psds
