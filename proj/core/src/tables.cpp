#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <string>
#include <vector>

#include "psds/error.hpp"
#include "psds/io.hpp"

namespace psds {

namespace {

constexpr std::string_view kEventHeader = "filename\tonset\toffset\tevent_label";
constexpr std::string_view kDurationHeader = "filename\tduration";
constexpr std::string_view kBom = "\xEF\xBB\xBF";

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool parse_decimal(std::string_view text, double& value) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last && std::isfinite(value);
}

// Reads lines with CR stripped. Calls on_line(line_no, text) for every
// non-empty line after the header and checks the header first.
template <typename OnLine>
void for_each_row(std::istream& in, std::string_view header,
                  std::string_view source, OnLine&& on_line) {
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!seen_header) {
      std::string_view text(line);
      if (text.starts_with(kBom)) text.remove_prefix(kBom.size());
      if (text != header) {
        throw Error(ErrorCode::MalformedHeader,
                    "expected header '" + std::string(header) + "'",
                    std::string(source), line_no);
      }
      seen_header = true;
      continue;
    }
    if (line.empty()) continue;
    on_line(line_no, std::string_view(line));
  }
  if (in.bad()) {
    throw Error(ErrorCode::Io, "read failure", std::string(source), line_no);
  }
  if (!seen_header) {
    throw Error(ErrorCode::MalformedHeader, "missing header line",
                std::string(source), 1);
  }
}

[[noreturn]] void bad_row(std::string_view source, std::size_t line,
                          std::string reason) {
  throw Error(ErrorCode::BadRow, std::move(reason), std::string(source), line);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open file", path.string());
  }
  return in;
}

}  // namespace

FileDurations DurationsTable::to_map() const {
  FileDurations out;
  for (const auto& row : rows) out.emplace(row.file_id, row.duration);
  return out;
}

EventTable parse_event_table(std::istream& in, std::string_view source) {
  EventTable table;
  for_each_row(in, kEventHeader, source, [&](std::size_t n, std::string_view text) {
    const auto fields = split_tabs(text);
    if (fields.size() != 4) {
      bad_row(source, n,
              "expected 4 tab-separated fields, got " +
                  std::to_string(fields.size()));
    }
    EventRow row;
    row.line = n;
    row.file_id = std::string(fields[0]);
    row.label = std::string(fields[3]);
    if (row.file_id.empty()) bad_row(source, n, "empty filename");
    if (row.label.empty()) bad_row(source, n, "empty event_label");
    if (!parse_decimal(fields[1], row.onset)) {
      bad_row(source, n, "onset '" + std::string(fields[1]) + "' is not a finite decimal");
    }
    if (!parse_decimal(fields[2], row.offset)) {
      bad_row(source, n, "offset '" + std::string(fields[2]) + "' is not a finite decimal");
    }
    if (row.offset < row.onset) bad_row(source, n, "offset precedes onset");
    table.rows.push_back(std::move(row));
  });
  return table;
}

DurationsTable parse_durations_table(std::istream& in, std::string_view source) {
  DurationsTable table;
  std::set<std::string, std::less<>> seen;
  for_each_row(in, kDurationHeader, source, [&](std::size_t n, std::string_view text) {
    const auto fields = split_tabs(text);
    if (fields.size() != 2) {
      bad_row(source, n,
              "expected 2 tab-separated fields, got " +
                  std::to_string(fields.size()));
    }
    DurationRow row;
    row.line = n;
    row.file_id = std::string(fields[0]);
    if (row.file_id.empty()) bad_row(source, n, "empty filename");
    if (!parse_decimal(fields[1], row.duration) || !(row.duration > 0.0)) {
      bad_row(source, n, "duration '" + std::string(fields[1]) + "' is not a positive decimal");
    }
    if (!seen.insert(row.file_id).second) {
      bad_row(source, n, "duplicate filename '" + row.file_id + "'");
    }
    table.rows.push_back(std::move(row));
  });
  return table;
}

EventTable read_event_table(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_event_table(in, path.string());
}

DurationsTable read_durations_table(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_durations_table(in, path.string());
}

Dataset load_dataset(const std::filesystem::path& ground_truth,
                     const std::filesystem::path& durations) {
  const auto dur = read_durations_table(durations);
  const auto gt = read_event_table(ground_truth);
  return Dataset(gt.rows, dur.to_map(), ground_truth.string());
}

EventSet load_detections(const std::filesystem::path& path,
                         const Dataset& dataset) {
  const auto table = read_event_table(path);
  return dataset.validate_detections(table.rows, path.string());
}

}  // namespace psds
