#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <atomic>
#include <exception>
#include <mutex>
#include <algorithm>
#include <vector>

#include <json.hpp>

namespace tsclust::experiments {

using nlohmann::json;

struct Rung {
  double parameter;                  // n or m
  std::vector<double> trial_values;  // one per trial, in trial order
  double summary;                    // median (or frequency) over trials
  json extra = json::object();
};

struct Curve {
  std::string name;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<double> y;
};

struct SlopeFit {
  bool defined = false;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square residual of the fit
  std::size_t points = 0;
};

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

struct ExperimentReport {
  std::string name;
  json config;
  std::uint64_t seed = 0;
  std::vector<Rung> rungs;
  std::optional<SlopeFit> fit;
  std::vector<Check> checks;
  std::vector<Curve> curves;
  json summary = json::object();
  std::vector<std::string> flags;
  bool pass = false;
  double wall_clock_seconds = 0.0;

  void add_check(std::string check_name, bool ok, std::string detail = {});
  const Check* find_check(const std::string& check_name) const;
  // pass = every check passed (and at least one check exists).
  void finalize();
  // Wall-clock time is omitted unless asked for, so documents stay byte-stable.
  json to_json(bool include_timing = false) const;
  // Long-format plot data: curve,x,y
  std::string curves_csv() const;
};

// Least squares of log(y) on log(x); needs at least min_points finite pairs.
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y,
                    std::size_t min_points = 5);

// Number of adjacent steps that go the wrong way.
std::size_t count_increases(const std::vector<double>& values);
std::size_t count_decreases(const std::vector<double>& values);

double median(std::vector<double> values);
double quantile(std::vector<double> values, double q);

// Runs fn(i) for i in [0, count) on worker threads and returns results in
// index order. Each trial must own its RNG stream.
template <class Fn>
auto run_trials(std::size_t count, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<std::optional<Result>> slots(count);
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) slots[i].emplace(fn(i));
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            slots[i].emplace(fn(i));
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace tsclust::experiments
