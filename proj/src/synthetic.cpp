#include "tsclust/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tsclust/error.hpp"
#include "tsclust/random.hpp"

namespace tsclust::synthetic {

std::string_view to_string(BumpShape shape) {
  switch (shape) {
    case BumpShape::Triangular: return "triangular";
    case BumpShape::Quadratic: return "quadratic";
    case BumpShape::Uniform: return "uniform";
  }
  return "unknown";
}

BumpShape parse_bump_shape(std::string_view name) {
  if (name == "triangular") return BumpShape::Triangular;
  if (name == "quadratic") return BumpShape::Quadratic;
  if (name == "uniform") return BumpShape::Uniform;
  fail(ErrorCode::InvalidArgument, "unknown bump shape '" + std::string(name) + "'");
}

double CoordinateBump::density(double x) const {
  const double z = (x - center) / half_width;
  if (z < -1.0 || z > 1.0) return 0.0;
  switch (shape) {
    case BumpShape::Triangular: return (1.0 - std::fabs(z)) / half_width;
    case BumpShape::Quadratic: return 0.75 * (1.0 - z * z) / half_width;
    case BumpShape::Uniform: return 0.5 / half_width;
  }
  return 0.0;
}

double CoordinateBump::peak() const {
  switch (shape) {
    case BumpShape::Triangular: return 1.0 / half_width;
    case BumpShape::Quadratic: return 0.75 / half_width;
    case BumpShape::Uniform: return 0.5 / half_width;
  }
  return 0.0;
}

double CoordinateBump::lipschitz() const {
  switch (shape) {
    case BumpShape::Triangular: return 1.0 / (half_width * half_width);
    case BumpShape::Quadratic: return 1.5 / (half_width * half_width);
    case BumpShape::Uniform: return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

double CoordinateBump::inverse_cdf(double u) const {
  double z = 0.0;
  switch (shape) {
    case BumpShape::Triangular:
      z = u < 0.5 ? std::sqrt(2.0 * u) - 1.0 : 1.0 - std::sqrt(2.0 * (1.0 - u));
      break;
    case BumpShape::Quadratic:
      // F(z) = (2 + 3z - z^3)/4; z = 2 sin(theta) turns it into (1 + sin 3theta)/2.
      z = 2.0 * std::sin(std::asin(2.0 * u - 1.0) / 3.0);
      break;
    case BumpShape::Uniform:
      z = 2.0 * u - 1.0;
      break;
  }
  return center + half_width * std::clamp(z, -1.0, 1.0);
}

double MixtureComponent::density(std::span<const double> x) const {
  double p = 1.0;
  for (std::size_t j = 0; j < bumps.size(); ++j) {
    p *= bumps[j].density(x[j]);
    if (p == 0.0) return 0.0;
  }
  return p;
}

double MixtureComponent::peak() const {
  double p = 1.0;
  for (const auto& b : bumps) p *= b.peak();
  return p;
}

double MixtureComponent::lipschitz() const {
  // |grad p| <= sqrt(sum_j (L_j prod_{k != j} M_k)^2)
  double sq = 0.0;
  for (std::size_t j = 0; j < bumps.size(); ++j) {
    double term = bumps[j].lipschitz();
    for (std::size_t k = 0; k < bumps.size(); ++k) {
      if (k != j) term *= bumps[k].peak();
    }
    sq += term * term;
  }
  return std::sqrt(sq);
}

bool MixtureComponent::in_support(std::span<const double> x) const {
  for (std::size_t j = 0; j < bumps.size(); ++j) {
    if (std::fabs(x[j] - bumps[j].center) > bumps[j].half_width) return false;
  }
  return true;
}

bool MixtureComponent::in_inner_core(std::span<const double> x) const {
  for (std::size_t j = 0; j < bumps.size(); ++j) {
    if (std::fabs(x[j] - bumps[j].center) > 0.5 * bumps[j].half_width) return false;
  }
  return true;
}

double MixtureComponent::inner_core_min_density() const {
  double p = 1.0;
  for (const auto& b : bumps) p *= b.density(b.center + 0.5 * b.half_width);
  return p;
}

namespace {

double box_distance(const MixtureComponent& a, const MixtureComponent& b) {
  double sq = 0.0;
  for (std::size_t j = 0; j < a.bumps.size(); ++j) {
    const double a_lo = a.bumps[j].center - a.bumps[j].half_width;
    const double a_hi = a.bumps[j].center + a.bumps[j].half_width;
    const double b_lo = b.bumps[j].center - b.bumps[j].half_width;
    const double b_hi = b.bumps[j].center + b.bumps[j].half_width;
    const double gap = std::max({0.0, b_lo - a_hi, a_lo - b_hi});
    sq += gap * gap;
  }
  return std::sqrt(sq);
}

}  // namespace

MixtureSpec::MixtureSpec(std::size_t dim, std::vector<MixtureComponent> components)
    : dim_(dim), components_(std::move(components)) {
  require(dim_ >= 1, ErrorCode::InvalidArgument, "MixtureSpec: dimension must be >= 1");
  require(!components_.empty(), ErrorCode::InvalidArgument, "MixtureSpec: no components");
  double total = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& c = components_[i];
    const std::string tag = "MixtureSpec component " + std::to_string(i);
    require(c.weight >= 0.0, ErrorCode::InvalidArgument, tag + ": negative weight");
    require(c.bumps.size() == dim_, ErrorCode::InvalidArgument,
            tag + ": needs one bump per coordinate");
    for (const auto& b : c.bumps) {
      require(b.half_width > 0.0, ErrorCode::InvalidArgument, tag + ": half_width must be > 0");
      require(b.center - b.half_width >= 0.0 && b.center + b.half_width <= 1.0,
              ErrorCode::InvalidArgument, tag + ": support box leaves [0, 1]");
    }
    total += c.weight;
  }
  require(std::fabs(total - 1.0) <= 1e-9, ErrorCode::InvalidArgument,
          "MixtureSpec: weights must sum to 1");

  margin_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < components_.size(); ++i) {
    for (std::size_t j = i + 1; j < components_.size(); ++j) {
      margin_ = std::min(margin_, box_distance(components_[i], components_[j]));
    }
  }
  require(margin_ > 0.0, ErrorCode::InvalidArgument,
          "MixtureSpec: support boxes must be pairwise disjoint");

  double min_core = std::numeric_limits<double>::infinity();
  for (const auto& c : components_) {
    lipschitz_ += c.weight * c.lipschitz();
    peak_ = std::max(peak_, c.weight * c.peak());
    if (c.weight > 0.0) min_core = std::min(min_core, c.weight * c.inner_core_min_density());
  }
  lambda_star_ = 0.5 * min_core;
}

double true_density(const MixtureSpec& spec, std::span<const double> x) {
  require(x.size() == spec.dim(), ErrorCode::InvalidArgument, "true_density: dimension mismatch");
  for (double v : x) {
    if (v < 0.0 || v > 1.0) return 0.0;
  }
  // Supports are disjoint, so at most one term is nonzero.
  for (const auto& c : spec.components()) {
    if (c.weight > 0.0 && c.in_support(x)) return c.weight * c.density(x);
  }
  return 0.0;
}

FlatSample sample_flat(const MixtureSpec& spec, std::size_t n, std::uint64_t seed) {
  require(n >= 1, ErrorCode::InvalidArgument, "sample_flat: n must be >= 1");
  Rng rng(seed);
  std::vector<double> weights;
  for (const auto& c : spec.components()) weights.push_back(c.weight);
  std::vector<double> data;
  data.reserve(n * spec.dim());
  std::vector<int> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = rng.categorical(weights);
    labels.push_back(static_cast<int>(c));
    for (const auto& b : spec.component(c).bumps) data.push_back(b.inverse_cdf(rng.uniform()));
  }
  return {PointSet(spec.dim(), std::move(data)), std::move(labels)};
}

double ComponentTemplate::value(double t) const {
  double v = offset + slope * t;
  if (amplitude != 0.0) v += amplitude * std::sin(2.0 * std::numbers::pi * (frequency * t + phase));
  if (t >= jump_at) v += jump_size;
  return v;
}

double ComponentTemplate::lipschitz() const {
  return std::fabs(slope) + 2.0 * std::numbers::pi * std::fabs(amplitude * frequency);
}

FunctionFamilySpec::FunctionFamilySpec(std::size_t s, std::vector<FunctionTemplate> templates,
                                       double noise_bound, double offset_jitter,
                                       double scale_jitter)
    : s_(s),
      templates_(std::move(templates)),
      noise_bound_(noise_bound),
      offset_jitter_(offset_jitter),
      scale_jitter_(scale_jitter) {
  require(s_ >= 1, ErrorCode::InvalidArgument, "FunctionFamilySpec: s must be >= 1");
  require(!templates_.empty(), ErrorCode::InvalidArgument, "FunctionFamilySpec: no templates");
  require(noise_bound_ >= 0.0 && std::isfinite(noise_bound_), ErrorCode::InvalidArgument,
          "FunctionFamilySpec: noise_bound must be finite and >= 0");
  require(offset_jitter_ >= 0.0 && scale_jitter_ >= 0.0 && scale_jitter_ < 1.0,
          ErrorCode::InvalidArgument, "FunctionFamilySpec: invalid jitter");
  double total = 0.0;
  constexpr int kProbe = 4096;
  for (std::size_t i = 0; i < templates_.size(); ++i) {
    const auto& tpl = templates_[i];
    const std::string tag = "FunctionFamilySpec template " + std::to_string(i);
    require(tpl.weight >= 0.0, ErrorCode::InvalidArgument, tag + ": negative weight");
    require(tpl.components.size() == s_, ErrorCode::InvalidArgument,
            tag + ": needs s components");
    total += tpl.weight;
    for (const auto& c : tpl.components) {
      // Worst-case range of any jittered instance on a dense probe grid, with
      // a Lipschitz allowance for the gaps between probes.
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      double variable = 0.0;
      for (int k = 1; k <= kProbe; ++k) {
        const double t = static_cast<double>(k) / kProbe;
        const double v = c.value(t);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        variable = std::max(variable, std::fabs(v - c.offset));
      }
      const double slack = c.lipschitz() * (1.0 + scale_jitter_) / kProbe;
      require(lo - offset_jitter_ - scale_jitter_ * variable - slack >= 0.0 &&
                  hi + offset_jitter_ + scale_jitter_ * variable + slack <= 1.0,
              ErrorCode::InvalidArgument, tag + ": jittered template can leave [0, 1]");
    }
  }
  require(std::fabs(total - 1.0) <= 1e-9, ErrorCode::InvalidArgument,
          "FunctionFamilySpec: template weights must sum to 1");
}

double FunctionFamilySpec::lipschitz() const {
  double l = 0.0;
  for (const auto& tpl : templates_) {
    for (const auto& c : tpl.components) l = std::max(l, c.lipschitz());
  }
  return l * (1.0 + scale_jitter_);
}

bool FunctionFamilySpec::has_jumps() const {
  for (const auto& tpl : templates_) {
    for (const auto& c : tpl.components) {
      if (c.has_jump()) return true;
    }
  }
  return false;
}

void FunctionFamilySpec::check_grid(std::size_t d) const {
  for (const auto& tpl : templates_) {
    for (const auto& c : tpl.components) {
      if (!c.has_jump()) continue;
      const double scaled = c.jump_at * static_cast<double>(d);
      require(std::fabs(scaled - std::round(scaled)) > 1e-9, ErrorCode::InvalidArgument,
              "FunctionFamilySpec: jump at " + std::to_string(c.jump_at) +
                  " coincides with a grid point for d = " + std::to_string(d));
    }
  }
}

std::vector<double> SeriesInstance::value(double t) const {
  std::vector<double> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.value(t));
  return out;
}

std::string series_id(std::size_t i) {
  std::string digits = std::to_string(i);
  if (digits.size() < 5) digits.insert(0, 5 - digits.size(), '0');
  return "series_" + digits;
}

RawSample sample_raw_series(const FunctionFamilySpec& spec, std::size_t n, std::size_t m,
                            std::size_t d, std::uint64_t seed) {
  require(n >= 1 && m >= 1 && d >= 1, ErrorCode::InvalidArgument,
          "sample_raw_series: n, m and d must be >= 1");
  require(m > d, ErrorCode::PreconditionViolation, "sample_raw_series: requires m > d");
  spec.check_grid(d);
  // Paths come from their own stream so they do not depend on m.
  Rng rng(seed, 0);
  std::vector<double> weights;
  for (const auto& tpl : spec.templates()) weights.push_back(tpl.weight);

  RawSample out;
  out.series.reserve(n);
  out.truth.reserve(n);
  out.paths.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t label = rng.categorical(weights);
    SeriesInstance inst{spec.templates()[label].components};
    for (auto& c : inst.components) {
      c.offset += spec.offset_jitter() > 0.0
                      ? rng.uniform(-spec.offset_jitter(), spec.offset_jitter())
                      : 0.0;
      const double scale =
          spec.scale_jitter() > 0.0 ? 1.0 + rng.uniform(-spec.scale_jitter(), spec.scale_jitter())
                                    : 1.0;
      c.slope *= scale;
      c.amplitude *= scale;
      c.jump_size *= scale;
    }
    Rng noise(seed, 1, i);
    std::vector<double> values(m * spec.s());
    for (std::size_t j = 0; j < m; ++j) {
      const double t = static_cast<double>(j + 1) / static_cast<double>(m);
      for (std::size_t k = 0; k < spec.s(); ++k) {
        double v = inst.components[k].value(t);
        if (spec.noise_bound() > 0.0) v += noise.uniform(-spec.noise_bound(), spec.noise_bound());
        values[j * spec.s() + k] = v;
      }
    }
    std::vector<double> grid(d * spec.s());
    for (std::size_t j = 0; j < d; ++j) {
      const double t = GridSeries::slot_time(j, d);
      for (std::size_t k = 0; k < spec.s(); ++k) {
        grid[j * spec.s() + k] = std::clamp(inst.components[k].value(t), 0.0, 1.0);
      }
    }
    const std::string id = series_id(i);
    out.series.push_back(RawSeries::uniform(id, spec.s(), std::move(values)));
    out.truth.emplace_back(id, spec.s(), d, std::move(grid));
    out.labels.push_back(static_cast<int>(label));
    out.paths.push_back(std::move(inst));
  }
  return out;
}

}  // namespace tsclust::synthetic
