#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace psds {

/// One labelled time interval, either a ground-truth label or a detection.
/// Times are in seconds.
struct Event {
  std::string file_id;
  double onset = 0.0;
  double offset = 0.0;
  std::string label;

  double duration() const noexcept { return offset - onset; }

  friend bool operator==(const Event&, const Event&) = default;
};

/// Unvalidated event row as read from a table. `line` is kept for error
/// reporting and is 0 for rows built in memory.
struct EventRow {
  std::string file_id;
  double onset = 0.0;
  double offset = 0.0;
  std::string label;
  std::size_t line = 0;

  friend bool operator==(const EventRow&, const EventRow&) = default;
};

/// Validated, immutable collection of events with class and file indices.
/// Event order is the order of the input rows.
class EventSet {
 public:
  EventSet() = default;

  const std::vector<Event>& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }

  /// Sorted list of distinct class labels present in the set.
  std::vector<std::string> classes() const;
  /// Sorted list of distinct file ids present in the set.
  std::vector<std::string> files() const;

  /// Positions into events() of every event with this label, in input order.
  std::span<const std::size_t> class_indices(std::string_view label) const;
  std::span<const std::size_t> file_indices(std::string_view file_id) const;

  /// Copy of the events with this label, in input order.
  std::vector<Event> slice(std::string_view label) const;

  /// Sum of durations of the events with this label.
  double label_duration(std::string_view label) const;

  friend bool operator==(const EventSet& a, const EventSet& b) {
    return a.events_ == b.events_;
  }

 private:
  friend EventSet make_unchecked_event_set(std::vector<Event>);

  explicit EventSet(std::vector<Event> events);

  std::vector<Event> events_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_class_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_file_;
};

using FileDurations = std::map<std::string, double, std::less<>>;

/// Checks every row against the event invariants and the file universe in
/// `durations` and builds an EventSet. Throws psds::Error with
/// NonPositiveDuration, NegativeOnset, UnknownFile or
/// EventExceedsFileDuration. `source` names the input for error messages.
EventSet validate(std::span<const EventRow> rows, const FileDurations& durations,
                  std::string_view source = {});

/// Re-validation of events that are already in memory.
EventSet validate(std::span<const Event> events, const FileDurations& durations,
                  std::string_view source = {});

/// Builds an EventSet without checks. Only for callers that already hold
/// validated events (slices of another EventSet).
EventSet make_unchecked_event_set(std::vector<Event> events);

enum class TimeUnit { Second, Minute, Hour };

double seconds_per(TimeUnit unit) noexcept;
std::string_view to_string(TimeUnit unit) noexcept;
/// Accepts "second", "minute" and "hour". Throws InvalidParameter otherwise.
TimeUnit parse_time_unit(std::string_view text);

/// Parameters of the intersection-based evaluation.
///
/// `e_max` is expressed in events per `time_unit`. With `clamp_etpr` the
/// effective TP ratio is floored at zero.
struct EvalParams {
  double rho_dtc = 0.5;
  double rho_gtc = 0.5;
  double rho_cttc = 0.3;
  double alpha_ct = 0.0;
  double alpha_st = 0.0;
  double e_max = 100.0;
  TimeUnit time_unit = TimeUnit::Hour;
  bool clamp_etpr = true;

  /// Throws InvalidParameter when a ratio leaves [0,1], an alpha is negative
  /// or e_max is not positive.
  void validate() const;

  friend bool operator==(const EvalParams&, const EvalParams&) = default;
};

/// Collar-based matching parameters. The offset tolerance for a ground truth
/// y is max(collar, offset_ratio * dur(y)).
struct CollarParams {
  double collar = 0.2;
  double offset_ratio = 0.2;
  bool check_offset = true;

  void validate() const;

  friend bool operator==(const CollarParams&, const CollarParams&) = default;
};

/// Duration of the overlap of two events; zero for different files.
double intersection_duration(const Event& a, const Event& b) noexcept;

/// Sum of intersection_duration(x, y) over ys, in order. Overlapping ys are
/// counted once each.
double total_intersection(const Event& x, std::span<const Event> ys) noexcept;

/// Per-file onset-sorted index over a set of intervals that answers
/// total_intersection queries without scanning unrelated events.
class IntervalIndex {
 public:
  IntervalIndex() = default;
  explicit IntervalIndex(std::span<const Event> events);

  /// Same value as total_intersection(x, events) up to summation order.
  double covered(const Event& x) const noexcept;

  std::size_t size() const noexcept { return size_; }

 private:
  struct FileIntervals {
    std::vector<double> onsets;
    std::vector<double> offsets;
    // running maximum of offsets, non-decreasing
    std::vector<double> max_offset;
  };
  std::map<std::string, FileIntervals, std::less<>> files_;
  std::size_t size_ = 0;
};

/// Reference data: ground-truth events plus the duration of every file.
class Dataset {
 public:
  /// Validates durations (positive, finite) and the ground truth. The class
  /// universe is the set of ground-truth labels.
  Dataset(std::span<const EventRow> ground_truth, FileDurations durations,
          std::string_view source = {});

  const EventSet& ground_truth() const noexcept { return ground_truth_; }
  const FileDurations& file_durations() const noexcept { return durations_; }
  double total_duration() const noexcept { return total_duration_; }
  const std::vector<std::string>& classes() const noexcept { return classes_; }
  bool has_class(std::string_view label) const;

  /// Index over the ground-truth events of one class; empty for labels
  /// outside the class universe.
  const IntervalIndex& class_index(std::string_view label) const;

  /// Validates detections against this dataset's files and classes.
  /// Labels outside the ground-truth class universe raise UnknownClass.
  EventSet validate_detections(std::span<const EventRow> rows,
                               std::string_view source = {}) const;

 private:
  EventSet ground_truth_;
  FileDurations durations_;
  double total_duration_ = 0.0;
  std::vector<std::string> classes_;
  std::map<std::string, IntervalIndex, std::less<>> class_index_;
};

}  // namespace psds
