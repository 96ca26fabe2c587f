#include "tsclust/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tsclust/error.hpp"

namespace tsclust {

PointSet::PointSet(std::size_t dim, std::vector<double> data) : dim_(dim), data_(std::move(data)) {
  require(dim_ >= 1, ErrorCode::InvalidArgument, "PointSet: dimension must be >= 1");
  require(data_.size() % dim_ == 0, ErrorCode::InvalidArgument,
          "PointSet: data length is not a multiple of the dimension");
}

PointSet PointSet::from_flat_points(std::span<const FlatPoint> points) {
  require(!points.empty(), ErrorCode::InvalidArgument, "PointSet: no points");
  const std::size_t dim = points.front().dim();
  std::vector<double> data;
  data.reserve(dim * points.size());
  for (const auto& p : points) {
    require(p.dim() == dim, ErrorCode::InvalidArgument, "PointSet: mixed point dimensions");
    data.insert(data.end(), p.coords().begin(), p.coords().end());
  }
  return PointSet(dim, std::move(data));
}

void PointSet::push_back(std::span<const double> p) {
  if (dim_ == 0) dim_ = p.size();
  require(p.size() == dim_ && dim_ >= 1, ErrorCode::InvalidArgument,
          "PointSet::push_back: dimension mismatch");
  data_.insert(data_.end(), p.begin(), p.end());
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
  std::vector<double> data;
  data.reserve(indices.size() * dim_);
  for (auto i : indices) {
    const auto p = point(i);
    data.insert(data.end(), p.begin(), p.end());
  }
  PointSet out;
  out.dim_ = dim_;
  out.data_ = std::move(data);
  return out;
}

KdTree::KdTree(const PointSet& points, std::size_t leaf_size) : dim_(points.dim()) {
  const std::size_t n = points.size();
  if (n == 0) return;
  require(leaf_size >= 1, ErrorCode::InvalidArgument, "KdTree: leaf size must be >= 1");
  index_.resize(n);
  std::iota(index_.begin(), index_.end(), std::size_t{0});
  coords_.assign(points.data().begin(), points.data().end());
  nodes_.reserve(2 * (n / leaf_size + 1));
  build(0, n, leaf_size);
  // Reorder coordinates into tree order for locality.
  std::vector<double> ordered(n * dim_);
  for (std::size_t s = 0; s < n; ++s) {
    const auto p = points.point(index_[s]);
    std::copy(p.begin(), p.end(), ordered.begin() + static_cast<std::ptrdiff_t>(s * dim_));
  }
  coords_ = std::move(ordered);
}

std::size_t KdTree::build(std::size_t begin, std::size_t end, std::size_t leaf_size) {
  const std::size_t id = nodes_.size();
  nodes_.push_back(Node{begin, end});
  boxes_.resize((id + 1) * 2 * dim_);
  double* lo = boxes_.data() + id * 2 * dim_;
  double* hi = lo + dim_;
  auto coord = [&](std::size_t slot, std::size_t k) { return coords_[index_[slot] * dim_ + k]; };
  for (std::size_t k = 0; k < dim_; ++k) {
    lo[k] = coord(begin, k);
    hi[k] = coord(begin, k);
  }
  for (std::size_t s = begin + 1; s < end; ++s) {
    for (std::size_t k = 0; k < dim_; ++k) {
      lo[k] = std::min(lo[k], coord(s, k));
      hi[k] = std::max(hi[k], coord(s, k));
    }
  }
  if (end - begin <= leaf_size) return id;

  std::size_t axis = 0;
  double widest = -1.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    if (hi[k] - lo[k] > widest) {
      widest = hi[k] - lo[k];
      axis = k;
    }
  }
  if (widest <= 0.0) return id;  // all points coincide

  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(index_.begin() + static_cast<std::ptrdiff_t>(begin),
                   index_.begin() + static_cast<std::ptrdiff_t>(mid),
                   index_.begin() + static_cast<std::ptrdiff_t>(end),
                   [&](std::size_t a, std::size_t b) {
                     return coords_[a * dim_ + axis] < coords_[b * dim_ + axis];
                   });
  const std::size_t left = build(begin, mid, leaf_size);
  const std::size_t right = build(mid, end, leaf_size);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

double KdTree::box_lower(std::size_t node, std::span<const double> q) const {
  const double* lo = boxes_.data() + node * 2 * dim_;
  const double* hi = lo + dim_;
  double sum = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    double gap = 0.0;
    if (q[k] < lo[k]) {
      gap = lo[k] - q[k];
    } else if (q[k] > hi[k]) {
      gap = q[k] - hi[k];
    }
    sum += gap * gap;
  }
  return sum;
}

double KdTree::box_upper(std::size_t node, std::span<const double> q) const {
  const double* lo = boxes_.data() + node * 2 * dim_;
  const double* hi = lo + dim_;
  double sum = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const double gap = std::max(std::fabs(lo[k] - q[k]), std::fabs(hi[k] - q[k]));
    sum += gap * gap;
  }
  return sum;
}

std::size_t KdTree::count_node(std::size_t node, std::span<const double> q, double radius) const {
  if (box_lower(node, q) > radius * radius) return 0;
  const Node& nd = nodes_[node];
  if (in_closed_ball(box_upper(node, q), radius)) return nd.end - nd.begin;
  if (nd.left == 0) {
    std::size_t c = 0;
    for (std::size_t s = nd.begin; s < nd.end; ++s) {
      if (in_closed_ball(squared_distance(stored(s), q), radius)) ++c;
    }
    return c;
  }
  return count_node(nd.left, q, radius) + count_node(nd.right, q, radius);
}

std::size_t KdTree::count_within(std::span<const double> query, double radius) const {
  require(query.size() == dim_ || nodes_.empty(), ErrorCode::InvalidArgument,
          "KdTree: query dimension mismatch");
  if (nodes_.empty()) return 0;
  return count_node(0, query, radius);
}

std::vector<std::size_t> KdTree::within(std::span<const double> query, double radius) const {
  require(query.size() == dim_ || nodes_.empty(), ErrorCode::InvalidArgument,
          "KdTree: query dimension mismatch");
  std::vector<std::size_t> out;
  for_each_within(query, radius, [&](std::size_t i) {
    out.push_back(i);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tsclust
