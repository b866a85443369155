#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "psds/event_model.hpp"
#include "psds/psdroc.hpp"

namespace psds {

/// Rows of a `filename onset offset event_label` table, in file order.
struct EventTable {
  std::vector<EventRow> rows;
};

struct DurationRow {
  std::string file_id;
  double duration = 0.0;
  std::size_t line = 0;
};

struct DurationsTable {
  std::vector<DurationRow> rows;

  FileDurations to_map() const;
};

/// Strict tab-separated event table parser. The first line must be exactly
/// `filename\tonset\toffset\tevent_label`. LF and CRLF line endings are
/// accepted, as is a leading UTF-8 byte order mark. Empty lines are skipped.
/// Rows need four fields, finite decimal times and offset >= onset.
///
/// Throws MalformedHeader (line 1) or BadRow (line n).
EventTable parse_event_table(std::istream& in, std::string_view source = {});

/// Header `filename\tduration`; unique file names and positive durations.
DurationsTable parse_durations_table(std::istream& in,
                                     std::string_view source = {});

EventTable read_event_table(const std::filesystem::path& path);
DurationsTable read_durations_table(const std::filesystem::path& path);

/// Loads and validates ground truth plus durations.
Dataset load_dataset(const std::filesystem::path& ground_truth,
                     const std::filesystem::path& durations);

/// Reads and validates one detection file against the dataset.
EventSet load_detections(const std::filesystem::path& path,
                         const Dataset& dataset);

/// Operating-point files of a sweep directory: regular `*.tsv` files, sorted
/// lexicographically by file name.
std::vector<std::filesystem::path> list_operating_points(
    const std::filesystem::path& dir);

/// One CountsMatrix per operating-point file, keyed by file stem. Files are
/// evaluated concurrently; the first failing file in name order aborts the
/// sweep. Throws NoOperatingPoints for an empty directory.
Sweep sweep_operating_points(const std::filesystem::path& dir,
                             const Dataset& dataset, const EvalParams& params);

}  // namespace psds
