#include "psds/event_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "psds/error.hpp"

namespace psds {

namespace {

std::string describe(const std::string& file_id, double onset, double offset,
                     const std::string& label) {
  std::ostringstream os;
  os << "(" << file_id << ", " << onset << ", " << offset << ", " << label
     << ")";
  return os.str();
}

void check_row(const std::string& file_id, double onset, double offset,
               const std::string& label, std::size_t line,
               const FileDurations& durations, std::string_view source) {
  const auto row = describe(file_id, onset, offset, label);
  if (!std::isfinite(onset) || !std::isfinite(offset)) {
    throw Error(ErrorCode::NonPositiveDuration, "non-finite time in " + row,
                std::string(source), line);
  }
  if (onset < 0.0) {
    throw Error(ErrorCode::NegativeOnset, "negative onset in " + row,
                std::string(source), line);
  }
  if (!(offset > onset)) {
    throw Error(ErrorCode::NonPositiveDuration,
                "offset must be greater than onset in " + row,
                std::string(source), line);
  }
  auto it = durations.find(file_id);
  if (it == durations.end()) {
    throw Error(ErrorCode::UnknownFile, "no duration entry for file of " + row,
                std::string(source), line);
  }
  if (offset > it->second) {
    std::ostringstream os;
    os << row << " ends after the file duration " << it->second << " s";
    throw Error(ErrorCode::EventExceedsFileDuration, os.str(),
                std::string(source), line);
  }
}

const std::vector<std::size_t> kNoIndices;

}  // namespace

EventSet::EventSet(std::vector<Event> events) : events_(std::move(events)) {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    by_class_[events_[i].label].push_back(i);
    by_file_[events_[i].file_id].push_back(i);
  }
}

std::vector<std::string> EventSet::classes() const {
  std::vector<std::string> out;
  out.reserve(by_class_.size());
  for (const auto& [label, _] : by_class_) out.push_back(label);
  return out;
}

std::vector<std::string> EventSet::files() const {
  std::vector<std::string> out;
  out.reserve(by_file_.size());
  for (const auto& [file, _] : by_file_) out.push_back(file);
  return out;
}

std::span<const std::size_t> EventSet::class_indices(
    std::string_view label) const {
  auto it = by_class_.find(label);
  return it == by_class_.end() ? std::span<const std::size_t>(kNoIndices)
                               : std::span<const std::size_t>(it->second);
}

std::span<const std::size_t> EventSet::file_indices(
    std::string_view file_id) const {
  auto it = by_file_.find(file_id);
  return it == by_file_.end() ? std::span<const std::size_t>(kNoIndices)
                              : std::span<const std::size_t>(it->second);
}

std::vector<Event> EventSet::slice(std::string_view label) const {
  std::vector<Event> out;
  for (auto i : class_indices(label)) out.push_back(events_[i]);
  return out;
}

double EventSet::label_duration(std::string_view label) const {
  double total = 0.0;
  for (auto i : class_indices(label)) total += events_[i].duration();
  return total;
}

EventSet make_unchecked_event_set(std::vector<Event> events) {
  return EventSet(std::move(events));
}

EventSet validate(std::span<const EventRow> rows, const FileDurations& durations,
                  std::string_view source) {
  std::vector<Event> events;
  events.reserve(rows.size());
  for (const auto& row : rows) {
    check_row(row.file_id, row.onset, row.offset, row.label, row.line,
              durations, source);
    events.push_back(Event{row.file_id, row.onset, row.offset, row.label});
  }
  return make_unchecked_event_set(std::move(events));
}

EventSet validate(std::span<const Event> events, const FileDurations& durations,
                  std::string_view source) {
  for (const auto& e : events) {
    check_row(e.file_id, e.onset, e.offset, e.label, 0, durations, source);
  }
  return make_unchecked_event_set({events.begin(), events.end()});
}

double seconds_per(TimeUnit unit) noexcept {
  switch (unit) {
    case TimeUnit::Second: return 1.0;
    case TimeUnit::Minute: return 60.0;
    case TimeUnit::Hour: return 3600.0;
  }
  return 1.0;
}

std::string_view to_string(TimeUnit unit) noexcept {
  switch (unit) {
    case TimeUnit::Second: return "second";
    case TimeUnit::Minute: return "minute";
    case TimeUnit::Hour: return "hour";
  }
  return "second";
}

TimeUnit parse_time_unit(std::string_view text) {
  if (text == "second") return TimeUnit::Second;
  if (text == "minute") return TimeUnit::Minute;
  if (text == "hour") return TimeUnit::Hour;
  throw Error(ErrorCode::InvalidParameter,
              "unknown time unit '" + std::string(text) + "'");
}

namespace {

void check_ratio(double value, std::string_view name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    std::ostringstream os;
    os << name << " must lie in [0, 1], got " << value;
    throw Error(ErrorCode::InvalidParameter, os.str());
  }
}

void check_nonnegative(double value, std::string_view name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << name << " must be a finite non-negative number, got " << value;
    throw Error(ErrorCode::InvalidParameter, os.str());
  }
}

}  // namespace

void EvalParams::validate() const {
  check_ratio(rho_dtc, "rho_dtc");
  check_ratio(rho_gtc, "rho_gtc");
  check_ratio(rho_cttc, "rho_cttc");
  check_nonnegative(alpha_ct, "alpha_ct");
  check_nonnegative(alpha_st, "alpha_st");
  check_nonnegative(e_max, "e_max");
  if (!(e_max > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "e_max must be positive");
  }
}

void CollarParams::validate() const {
  check_nonnegative(collar, "collar");
  check_nonnegative(offset_ratio, "offset_ratio");
}

double intersection_duration(const Event& a, const Event& b) noexcept {
  if (a.file_id != b.file_id) return 0.0;
  return std::max(0.0, std::min(a.offset, b.offset) - std::max(a.onset, b.onset));
}

double total_intersection(const Event& x, std::span<const Event> ys) noexcept {
  double total = 0.0;
  for (const auto& y : ys) total += intersection_duration(x, y);
  return total;
}

IntervalIndex::IntervalIndex(std::span<const Event> events)
    : size_(events.size()) {
  std::map<std::string, std::vector<std::pair<double, double>>, std::less<>>
      grouped;
  for (const auto& e : events) grouped[e.file_id].emplace_back(e.onset, e.offset);
  for (auto& [file, spans] : grouped) {
    std::stable_sort(spans.begin(), spans.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    FileIntervals fi;
    fi.onsets.reserve(spans.size());
    fi.offsets.reserve(spans.size());
    fi.max_offset.reserve(spans.size());
    double running = -INFINITY;
    for (const auto& [on, off] : spans) {
      fi.onsets.push_back(on);
      fi.offsets.push_back(off);
      running = std::max(running, off);
      fi.max_offset.push_back(running);
    }
    files_.emplace(file, std::move(fi));
  }
}

double IntervalIndex::covered(const Event& x) const noexcept {
  auto it = files_.find(x.file_id);
  if (it == files_.end()) return 0.0;
  const auto& fi = it->second;
  // Intervals before `first` all end at or before x.onset; intervals from
  // `last` on start at or after x.offset. Neither group can overlap x.
  const auto first = static_cast<std::size_t>(
      std::upper_bound(fi.max_offset.begin(), fi.max_offset.end(), x.onset) -
      fi.max_offset.begin());
  const auto last = static_cast<std::size_t>(
      std::lower_bound(fi.onsets.begin(), fi.onsets.end(), x.offset) -
      fi.onsets.begin());
  double total = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    total += std::max(0.0, std::min(x.offset, fi.offsets[i]) -
                               std::max(x.onset, fi.onsets[i]));
  }
  return total;
}

Dataset::Dataset(std::span<const EventRow> ground_truth, FileDurations durations,
                 std::string_view source)
    : durations_(std::move(durations)) {
  for (const auto& [file, duration] : durations_) {
    if (!std::isfinite(duration) || !(duration > 0.0)) {
      std::ostringstream os;
      os << "file '" << file << "' has non-positive duration " << duration;
      throw Error(ErrorCode::NonPositiveDuration, os.str(), std::string(source));
    }
    total_duration_ += duration;
  }
  if (!(total_duration_ > 0.0)) {
    throw Error(ErrorCode::EmptyDataset, "dataset has no files",
                std::string(source));
  }
  ground_truth_ = validate(ground_truth, durations_, source);
  classes_ = ground_truth_.classes();
  for (const auto& label : classes_) {
    const auto events = ground_truth_.slice(label);
    class_index_.emplace(label, IntervalIndex(events));
  }
}

bool Dataset::has_class(std::string_view label) const {
  return std::binary_search(classes_.begin(), classes_.end(), label);
}

const IntervalIndex& Dataset::class_index(std::string_view label) const {
  static const IntervalIndex kEmpty;
  auto it = class_index_.find(label);
  return it == class_index_.end() ? kEmpty : it->second;
}

EventSet Dataset::validate_detections(std::span<const EventRow> rows,
                                      std::string_view source) const {
  std::vector<Event> events;
  events.reserve(rows.size());
  for (const auto& row : rows) {
    check_row(row.file_id, row.onset, row.offset, row.label, row.line,
              durations_, source);
    if (!has_class(row.label)) {
      throw Error(ErrorCode::UnknownClass,
                  "label '" + row.label +
                      "' does not occur in the ground truth",
                  std::string(source), row.line);
    }
    events.push_back(Event{row.file_id, row.onset, row.offset, row.label});
  }
  return make_unchecked_event_set(std::move(events));
}

}  // namespace psds
