#include <algorithm>
#include <future>
#include <thread>

#include "psds/error.hpp"
#include "psds/io.hpp"

namespace psds {

std::vector<std::filesystem::path> list_operating_points(
    const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::Io, "not a directory", dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto& p = entry.path();
    if (p.extension() != ".tsv") continue;
    if (p.filename().string().starts_with('.')) continue;
    files.push_back(p);
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
    return a.filename().string() < b.filename().string();
  });
  return files;
}

Sweep sweep_operating_points(const std::filesystem::path& dir,
                             const Dataset& dataset, const EvalParams& params) {
  params.validate();
  const auto files = list_operating_points(dir);
  if (files.empty()) {
    throw Error(ErrorCode::NoOperatingPoints,
                "no *.tsv operating-point files found", dir.string());
  }

  const std::size_t workers =
      std::max<std::size_t>(1, std::thread::hardware_concurrency());
  std::vector<std::future<CountsMatrix>> pending;
  pending.reserve(files.size());
  Sweep sweep;
  // Batches of `workers` files; results are consumed in name order so the
  // reported error is always the first bad file.
  for (std::size_t start = 0; start < files.size(); start += workers) {
    const auto stop = std::min(files.size(), start + workers);
    pending.clear();
    for (std::size_t i = start; i < stop; ++i) {
      pending.push_back(std::async(std::launch::async, [&, i] {
        const auto dets = load_detections(files[i], dataset);
        return count_matrix(dets, dataset, params);
      }));
    }
    for (std::size_t i = start; i < stop; ++i) {
      sweep.emplace(files[i].stem().string(), pending[i - start].get());
    }
  }
  return sweep;
}

}  // namespace psds
