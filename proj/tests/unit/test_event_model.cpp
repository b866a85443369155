#include "doctest.h"

#include <random>

#include "generators.hpp"
#include "oracle.hpp"
#include "psds/error.hpp"
#include "psds/event_model.hpp"

using namespace psds;

namespace {

Event ev(double on, double off, std::string file = "f1", std::string label = "dog") {
  return Event{std::move(file), on, off, std::move(label)};
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected psds::Error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("intersection_duration examples") {
  CHECK(intersection_duration(ev(0, 2), ev(1, 3)) == 1.0);
  CHECK(intersection_duration(ev(0, 2), ev(2, 5)) == 0.0);
  CHECK(intersection_duration(ev(0, 2, "f1"), ev(0, 2, "f2")) == 0.0);
  CHECK(intersection_duration(ev(0, 10), ev(3, 4)) == 1.0);
}

TEST_CASE("total_intersection examples") {
  const std::vector<Event> split{ev(0, 4), ev(5, 10)};
  CHECK(total_intersection(ev(0, 10), split) == 9.0);
  CHECK(total_intersection(ev(0, 10), {}) == 0.0);
  // overlapping labels are summed, not merged
  const std::vector<Event> overlapping{ev(2, 6), ev(4, 8)};
  CHECK(total_intersection(ev(0, 10), overlapping) == 8.0);
}

TEST_CASE("intersection properties on random events") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto [a0, a1] = testing::random_span(rng, 30.0, 10.0);
    const auto [b0, b1] = testing::random_span(rng, 30.0, 10.0);
    const auto a = ev(a0, a1, i % 5 == 0 ? "f2" : "f1");
    const auto b = ev(b0, b1);
    const double ab = intersection_duration(a, b);
    CHECK(ab == intersection_duration(b, a));
    CHECK(ab >= 0.0);
    CHECK(ab <= std::min(a.duration(), b.duration()));
  }
}

TEST_CASE("total_intersection is additive over partitions") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    std::vector<Event> ys;
    for (int k = 0; k < 12; ++k) {
      const auto [on, off] = testing::random_span(rng, 40.0, 6.0);
      ys.push_back(ev(on, off, k % 3 == 0 ? "f2" : "f1"));
    }
    const auto [x0, x1] = testing::random_span(rng, 40.0, 20.0);
    const auto x = ev(x0, x1);
    const auto cut = static_cast<std::ptrdiff_t>(rng() % ys.size());
    const std::vector<Event> left(ys.begin(), ys.begin() + cut);
    const std::vector<Event> right(ys.begin() + cut, ys.end());
    CHECK(total_intersection(x, ys) ==
          total_intersection(x, left) + total_intersection(x, right));
  }
}

TEST_CASE("IntervalIndex agrees with the naive sum") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    std::vector<Event> ys;
    const int n = testing::uniform_int(rng, 0, 25);
    for (int k = 0; k < n; ++k) {
      const auto [on, off] = testing::random_span(rng, 60.0, 12.0);
      ys.push_back(ev(on, off, k % 2 ? "f1" : "f2"));
    }
    const IntervalIndex index(ys);
    CHECK(index.size() == ys.size());
    for (int q = 0; q < 20; ++q) {
      const auto [on, off] = testing::random_span(rng, 60.0, 30.0);
      const auto x = ev(on, off, q % 3 ? "f1" : "f2");
      CHECK(index.covered(x) == testing::naive_coverage(x, ys, "dog"));
    }
  }
}

TEST_CASE("validate accepts good rows and builds indices") {
  const FileDurations durations{{"f1", 10.0}, {"f2", 5.0}};
  const std::vector<EventRow> rows{{"f1", 1.0, 3.0, "dog", 2},
                                   {"f2", 0.0, 5.0, "cat", 3},
                                   {"f1", 4.0, 6.0, "dog", 4}};
  const auto set = validate(rows, durations);
  CHECK(set.size() == 3);
  CHECK(set.classes() == std::vector<std::string>{"cat", "dog"});
  CHECK(set.files() == std::vector<std::string>{"f1", "f2"});
  CHECK(set.class_indices("dog").size() == 2);
  CHECK(set.file_indices("f2").size() == 1);
  CHECK(set.class_indices("bird").empty());
  CHECK(set.label_duration("dog") == 4.0);
  CHECK(set.slice("dog") == std::vector<Event>{ev(1, 3), ev(4, 6)});
}

TEST_CASE("validate is idempotent") {
  const FileDurations durations{{"f1", 10.0}};
  const std::vector<EventRow> rows{{"f1", 1.0, 3.0, "dog", 0},
                                   {"f1", 2.0, 9.0, "cat", 0}};
  const auto once = validate(rows, durations);
  const auto twice = validate(once.events(), durations);
  CHECK(once == twice);
  CHECK(twice.classes() == once.classes());
}

TEST_CASE("validate rejects bad rows") {
  const FileDurations durations{{"f1", 10.0}};
  auto run = [&](EventRow row) {
    return code_of([&] { validate(std::vector<EventRow>{row}, durations); });
  };
  CHECK(run({"f1", 3.0, 3.0, "dog", 1}) == ErrorCode::NonPositiveDuration);
  CHECK(run({"f1", 4.0, 3.0, "dog", 1}) == ErrorCode::NonPositiveDuration);
  CHECK(run({"f1", -1.0, 3.0, "dog", 1}) == ErrorCode::NegativeOnset);
  CHECK(run({"f9", 0.0, 1.0, "dog", 1}) == ErrorCode::UnknownFile);
  CHECK(run({"f1", 5.0, 10.5, "dog", 1}) == ErrorCode::EventExceedsFileDuration);
  CHECK_NOTHROW(validate(std::vector<EventRow>{{"f1", 5.0, 10.0, "dog", 1}}, durations));
}

TEST_CASE("validation errors name source and line") {
  const FileDurations durations{{"f1", 10.0}};
  const std::vector<EventRow> rows{{"f1", 0, 1, "dog", 2}, {"f9", 0, 1, "dog", 3}};
  try {
    validate(rows, durations, "dets.tsv");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownFile);
    CHECK(e.source() == "dets.tsv");
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).starts_with("dets.tsv:3: UnknownFile"));
  }
}

TEST_CASE("Dataset totals and class universe") {
  const std::vector<EventRow> gt{{"a", 0, 2, "dog", 0}, {"b", 1, 4, "cat", 0}};
  const Dataset ds(gt, {{"a", 10.0}, {"b", 20.0}, {"c", 30.0}});
  CHECK(ds.total_duration() == 60.0);
  CHECK(ds.classes() == std::vector<std::string>{"cat", "dog"});
  CHECK(ds.has_class("dog"));
  CHECK_FALSE(ds.has_class("bird"));
  CHECK(ds.class_index("dog").size() == 1);
  CHECK(ds.class_index("bird").size() == 0);
}

TEST_CASE("Dataset rejects bad durations and unknown detection labels") {
  const std::vector<EventRow> gt{{"a", 0, 2, "dog", 0}};
  CHECK(code_of([&] { Dataset(gt, {}); }) == ErrorCode::EmptyDataset);
  CHECK(code_of([&] { Dataset(gt, {{"a", 0.0}}); }) == ErrorCode::NonPositiveDuration);
  CHECK(code_of([&] { Dataset(gt, {{"b", 5.0}}); }) == ErrorCode::UnknownFile);

  const Dataset ds(gt, {{"a", 10.0}});
  const std::vector<EventRow> dets{{"a", 0, 1, "bird", 4}};
  CHECK(code_of([&] { ds.validate_detections(dets); }) == ErrorCode::UnknownClass);
  const std::vector<EventRow> ok{{"a", 0, 1, "dog", 4}};
  CHECK(ds.validate_detections(ok).size() == 1);
}

TEST_CASE("EvalParams validation") {
  EvalParams p;
  CHECK_NOTHROW(p.validate());
  p.rho_dtc = 1.5;
  CHECK(code_of([&] { p.validate(); }) == ErrorCode::InvalidParameter);
  p = {};
  p.alpha_st = -1.0;
  CHECK(code_of([&] { p.validate(); }) == ErrorCode::InvalidParameter);
  p = {};
  p.e_max = 0.0;
  CHECK(code_of([&] { p.validate(); }) == ErrorCode::InvalidParameter);

  CHECK(parse_time_unit("minute") == TimeUnit::Minute);
  CHECK(seconds_per(TimeUnit::Hour) == 3600.0);
  CHECK(code_of([] { parse_time_unit("day"); }) == ErrorCode::InvalidParameter);
}
