#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tsclust/series.hpp"

namespace tsclust {

// Dense row-major set of n points of equal dimension.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t dim, std::vector<double> data);
  static PointSet from_flat_points(std::span<const FlatPoint> points);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
  bool empty() const { return size() == 0; }
  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * dim_, dim_);
  }
  std::span<const double> data() const { return data_; }
  void push_back(std::span<const double> p);
  PointSet subset(std::span<const std::size_t> indices) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

// Every distance predicate in the library goes through these two functions so
// the index and brute-force scans agree bit-for-bit, ties included.
inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

inline bool in_closed_ball(double squared_dist, double radius) {
  return squared_dist <= radius * radius;
}

// Exact radius queries over a fixed point set. Bounding-box pruning is
// conservative: a node is skipped only when its computed lower bound already
// exceeds the radius, and counted wholesale only when its computed upper bound
// does not, so results equal a full scan under the same predicate.
class KdTree {
 public:
  explicit KdTree(const PointSet& points, std::size_t leaf_size = 16);

  std::size_t size() const { return index_.size(); }
  std::size_t dim() const { return dim_; }

  std::size_t count_within(std::span<const double> query, double radius) const;

  // Calls visit(i) for each point within radius; stops early if visit returns false.
  template <class Visit>
  void for_each_within(std::span<const double> query, double radius, Visit&& visit) const {
    if (nodes_.empty()) return;
    visit_node(0, query, radius, visit);
  }

  std::vector<std::size_t> within(std::span<const double> query, double radius) const;

 private:
  struct Node {
    std::size_t begin;
    std::size_t end;
    std::size_t left = 0;   // 0 marks a leaf
    std::size_t right = 0;
  };

  std::size_t build(std::size_t begin, std::size_t end, std::size_t leaf_size);
  double box_lower(std::size_t node, std::span<const double> q) const;
  double box_upper(std::size_t node, std::span<const double> q) const;
  std::span<const double> stored(std::size_t slot) const {
    return std::span<const double>(coords_).subspan(slot * dim_, dim_);
  }
  std::size_t count_node(std::size_t node, std::span<const double> q, double radius) const;

  template <class Visit>
  bool visit_node(std::size_t node, std::span<const double> q, double radius, Visit& visit) const {
    if (box_lower(node, q) > radius * radius) return true;
    const Node& nd = nodes_[node];
    if (nd.left == 0) {
      for (std::size_t s = nd.begin; s < nd.end; ++s) {
        if (in_closed_ball(squared_distance(stored(s), q), radius)) {
          if (!visit(index_[s])) return false;
        }
      }
      return true;
    }
    return visit_node(nd.left, q, radius, visit) && visit_node(nd.right, q, radius, visit);
  }

  std::size_t dim_ = 0;
  std::vector<double> coords_;      // points in tree order
  std::vector<std::size_t> index_;  // tree slot -> original index
  std::vector<Node> nodes_;
  std::vector<double> boxes_;       // per node: dim lows then dim highs
};

}  // namespace tsclust
