#pragma once

#include <chrono>
#include <cstdio>
#include <string>

#include "tsclust/config.hpp"
#include "tsclust/experiments.hpp"

namespace tsclust::experiments::detail {

using nlohmann::json;

inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline void require_ladder(const std::vector<std::size_t>& ladder, const std::string& what) {
  require(!ladder.empty(), ErrorCode::InvalidArgument, what + ": ladder is empty");
  require(is_geometric(ladder), ErrorCode::InvalidArgument, what + ": ladder must be geometric");
}

// Adds the slope-band check, or an insufficient-data flag when the fit is undefined.
void slope_check(ExperimentReport& report, const SlopeFit& fit, double exponent, double band_lo,
                 double band_hi);

}  // namespace tsclust::experiments::detail
