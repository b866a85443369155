#include "psds/matching.hpp"

#include <algorithm>
#include <utility>

#include "psds/error.hpp"

namespace psds {

namespace {

bool meets(double covered, double duration, double rho) noexcept {
  return covered / duration >= rho;
}

template <typename ClassIndexFn>
CrossTriggerRow count_cross_triggers(std::span<const Event> false_positives,
                                     std::string_view own_class,
                                     std::span<const std::string> classes,
                                     ClassIndexFn&& index_of, double rho_cttc) {
  CrossTriggerRow row;
  for (const auto& other : classes) {
    if (other == own_class) continue;
    const IntervalIndex& index = index_of(other);
    std::size_t n = 0;
    for (const auto& fp : false_positives) {
      if (meets(index.covered(fp), fp.duration(), rho_cttc)) ++n;
    }
    if (n > 0) row.emplace(other, n);
  }
  return row;
}

}  // namespace

const ClassCounts& CountsMatrix::at(std::string_view label) const {
  auto it = classes.find(label);
  if (it == classes.end()) {
    throw Error(ErrorCode::UnknownClass,
                "no counts for class '" + std::string(label) + "'");
  }
  return it->second;
}

std::size_t CountsMatrix::ct(std::string_view label,
                             std::string_view other) const {
  auto it = classes.find(label);
  if (it == classes.end()) return 0;
  auto jt = it->second.ct.find(other);
  return jt == it->second.ct.end() ? 0 : jt->second;
}

std::size_t CountsMatrix::total_tp() const {
  std::size_t n = 0;
  for (const auto& [_, c] : classes) n += c.n_tp;
  return n;
}

std::size_t CountsMatrix::total_fp() const {
  std::size_t n = 0;
  for (const auto& [_, c] : classes) n += c.n_fp;
  return n;
}

std::size_t CountsMatrix::total_ct() const {
  std::size_t n = 0;
  for (const auto& [_, c] : classes) {
    for (const auto& [__, k] : c.ct) n += k;
  }
  return n;
}

DtcSplit dtc_filter(std::span<const Event> detections,
                    const IntervalIndex& ground_truth, double rho_dtc) {
  DtcSplit split;
  for (const auto& x : detections) {
    if (meets(ground_truth.covered(x), x.duration(), rho_dtc)) {
      split.relevant.push_back(x);
    } else {
      split.false_positives.push_back(x);
    }
  }
  return split;
}

DtcSplit dtc_filter(std::span<const Event> detections,
                    std::span<const Event> ground_truth, double rho_dtc) {
  return dtc_filter(detections, IntervalIndex(ground_truth), rho_dtc);
}

std::vector<Event> gtc_select(std::span<const Event> ground_truth,
                              std::span<const Event> relevant, double rho_gtc) {
  const IntervalIndex index(relevant);
  std::vector<Event> hits;
  for (const auto& y : ground_truth) {
    if (meets(index.covered(y), y.duration(), rho_gtc)) hits.push_back(y);
  }
  return hits;
}

CrossTriggerRow cttc_count(std::span<const Event> false_positives,
                           std::string_view own_class,
                           const EventSet& ground_truth, double rho_cttc) {
  const auto classes = ground_truth.classes();
  std::map<std::string, IntervalIndex, std::less<>> indices;
  for (const auto& label : classes) {
    if (label == own_class) continue;
    const auto events = ground_truth.slice(label);
    indices.emplace(label, IntervalIndex(events));
  }
  return count_cross_triggers(
      false_positives, own_class, classes,
      [&](const std::string& label) -> const IntervalIndex& {
        return indices.at(label);
      },
      rho_cttc);
}

CountsMatrix count_matrix(const EventSet& detections, const Dataset& dataset,
                          const EvalParams& params) {
  for (const auto& label : detections.classes()) {
    if (!dataset.has_class(label)) {
      throw Error(ErrorCode::UnknownClass,
                  "detection label '" + label +
                      "' does not occur in the ground truth");
    }
  }

  CountsMatrix counts;
  const auto& classes = dataset.classes();
  for (const auto& label : classes) {
    const auto dets = detections.slice(label);
    const auto truth = dataset.ground_truth().slice(label);

    auto split = dtc_filter(dets, dataset.class_index(label), params.rho_dtc);
    const auto hits = gtc_select(truth, split.relevant, params.rho_gtc);

    ClassCounts c;
    c.n_sys = dets.size();
    c.n_gt = truth.size();
    c.n_relevant = split.relevant.size();
    c.n_fp = split.false_positives.size();
    c.n_tp = hits.size();
    c.ct = count_cross_triggers(
        split.false_positives, label, classes,
        [&](const std::string& other) -> const IntervalIndex& {
          return dataset.class_index(other);
        },
        params.rho_cttc);
    counts.classes.emplace(label, std::move(c));
  }
  return counts;
}

namespace {

bool collar_hit(const Event& truth, const Event& det,
                const CollarParams& collar) noexcept {
  if (truth.file_id != det.file_id) return false;
  if (!(truth.onset - collar.collar <= det.onset &&
        det.onset <= truth.onset + collar.collar)) {
    return false;
  }
  if (!collar.check_offset) return true;
  const double tol = std::max(collar.collar, collar.offset_ratio * truth.duration());
  return truth.offset - tol <= det.offset && det.offset <= truth.offset + tol;
}

}  // namespace

CollarCounts collar_match(std::span<const Event> detections,
                          std::span<const Event> ground_truth,
                          const CollarParams& collar) {
  std::vector<bool> det_matched(detections.size(), false);
  CollarCounts out;
  for (const auto& y : ground_truth) {
    bool found = false;
    for (std::size_t j = 0; j < detections.size(); ++j) {
      if (collar_hit(y, detections[j], collar)) {
        found = true;
        det_matched[j] = true;
      }
    }
    if (found) ++out.n_tp;
  }
  out.n_fp = static_cast<std::size_t>(
      std::count(det_matched.begin(), det_matched.end(), false));
  return out;
}

CountsMatrix collar_count_matrix(const EventSet& detections,
                                 const Dataset& dataset,
                                 const CollarParams& collar) {
  collar.validate();
  for (const auto& label : detections.classes()) {
    if (!dataset.has_class(label)) {
      throw Error(ErrorCode::UnknownClass,
                  "detection label '" + label +
                      "' does not occur in the ground truth");
    }
  }
  CountsMatrix counts;
  for (const auto& label : dataset.classes()) {
    const auto dets = detections.slice(label);
    const auto truth = dataset.ground_truth().slice(label);
    const auto m = collar_match(dets, truth, collar);
    ClassCounts c;
    c.n_sys = dets.size();
    c.n_gt = truth.size();
    c.n_tp = m.n_tp;
    c.n_fp = m.n_fp;
    c.n_relevant = c.n_sys - c.n_fp;
    counts.classes.emplace(label, std::move(c));
  }
  return counts;
}

}  // namespace psds
