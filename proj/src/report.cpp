#include "tsclust/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "tsclust/error.hpp"

namespace tsclust::experiments {

void ExperimentReport::add_check(std::string check_name, bool ok, std::string detail) {
  checks.push_back({std::move(check_name), ok, std::move(detail)});
}

const Check* ExperimentReport::find_check(const std::string& check_name) const {
  for (const auto& c : checks) {
    if (c.name == check_name) return &c;
  }
  return nullptr;
}

void ExperimentReport::finalize() {
  pass = !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

json ExperimentReport::to_json(bool include_timing) const {
  json doc;
  doc["experiment"] = name;
  doc["seed"] = seed;
  doc["config"] = config;
  json rung_docs = json::array();
  for (const auto& r : rungs) {
    json rd;
    rd["parameter"] = r.parameter;
    rd["summary"] = r.summary;
    rd["trial_values"] = r.trial_values;
    if (!r.extra.empty()) rd["extra"] = r.extra;
    rung_docs.push_back(std::move(rd));
  }
  doc["rungs"] = std::move(rung_docs);
  if (fit) {
    json f;
    f["defined"] = fit->defined;
    f["points"] = fit->points;
    if (fit->defined) {
      f["slope"] = fit->slope;
      f["intercept"] = fit->intercept;
      f["rms_residual"] = fit->residual;
    }
    doc["fit"] = std::move(f);
  }
  json check_docs = json::array();
  for (const auto& c : checks) {
    check_docs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  doc["checks"] = std::move(check_docs);
  json curve_docs = json::array();
  for (const auto& c : curves) {
    curve_docs.push_back(
        {{"name", c.name}, {"x_label", c.x_label}, {"y_label", c.y_label}, {"x", c.x}, {"y", c.y}});
  }
  doc["curves"] = std::move(curve_docs);
  doc["summary"] = summary;
  doc["flags"] = flags;
  doc["pass"] = pass;
  if (include_timing) doc["wall_clock_seconds"] = wall_clock_seconds;
  return doc;
}

std::string ExperimentReport::curves_csv() const {
  std::ostringstream out;
  out << "curve,x,y\n";
  char buf[64];
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      out << c.name << ',';
      std::snprintf(buf, sizeof buf, "%.17g", c.x[i]);
      out << buf << ',';
      std::snprintf(buf, sizeof buf, "%.17g", c.y[i]);
      out << buf << '\n';
    }
  }
  return out.str();
}

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y,
                    std::size_t min_points) {
  require(x.size() == y.size(), ErrorCode::InvalidArgument, "fit_loglog: length mismatch");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  SlopeFit fit;
  fit.points = lx.size();
  if (lx.size() < std::max<std::size_t>(min_points, 2)) return fit;
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.defined = true;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

std::size_t count_increases(const std::vector<double>& values) {
  std::size_t c = 0;
  for (std::size_t i = 1; i < values.size(); ++i) c += values[i] > values[i - 1] ? 1 : 0;
  return c;
}

std::size_t count_decreases(const std::vector<double>& values) {
  std::size_t c = 0;
  for (std::size_t i = 1; i < values.size(); ++i) c += values[i] < values[i - 1] ? 1 : 0;
  return c;
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

double quantile(std::vector<double> values, double q) {
  require(!values.empty(), ErrorCode::InvalidArgument, "quantile: no values");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

}  // namespace tsclust::experiments
