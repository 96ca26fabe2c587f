#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tsclust/spatial_index.hpp"

namespace tsclust::clustering {

inline constexpr int kNoise = -1;

struct Labeling {
  std::vector<int> assignments;  // cluster id or kNoise, per input point
  std::size_t k = 0;
  double delta = 0.0;
  double link_radius = 0.0;
  int cluster_count = 0;

  std::vector<std::size_t> members(int cluster) const;
  std::vector<std::size_t> core() const;
};

// Indices i with |{j : |x_i - x_j| <= delta}| >= k, the point itself included.
std::vector<std::size_t> core_points(const PointSet& points, std::size_t k, double delta);

// Components of the core points linked when within link_radius (default
// 2 delta). Non-core points are noise. Cluster ids follow smallest member index.
Labeling dbscan_cluster(const PointSet& points, std::size_t k, double delta,
                        std::optional<double> link_radius = std::nullopt);

// Components of the union of closed delta-balls around the given centres.
// Components are sorted by smallest member index; members ascend.
std::vector<std::vector<std::size_t>> ball_union_components(const PointSet& centres, double delta);

struct ClusterTree {
  std::vector<Labeling> levels;            // ks strictly descending
  std::vector<std::vector<int>> parents;   // parents[l][c]: cluster at level l+1, or -1 at the last level
};

ClusterTree cluster_tree(const PointSet& points, double delta, std::span<const std::size_t> ks,
                         std::optional<double> link_radius = std::nullopt);

struct ClusterRef {
  std::size_t level;
  int cluster;

  bool operator==(const ClusterRef&) const = default;
};

// The cluster at the largest k whose members include every given index.
std::optional<ClusterRef> smallest_containing_cluster(const ClusterTree& tree,
                                                      std::span<const std::size_t> indices);

std::vector<std::size_t> cluster_members(const ClusterTree& tree, const ClusterRef& ref);

bool hartigan_disjoint(const ClusterTree& tree, std::span<const std::size_t> a,
                       std::span<const std::size_t> a_prime);

// O(n^2) reference: full distance matrix and a plain union-find.
Labeling components_bruteforce(const PointSet& points, std::size_t k, double delta,
                               std::optional<double> link_radius = std::nullopt);
inline constexpr std::size_t kBruteforceLimit = 5000;

// Equal noise sets and equal cluster partitions, ignoring id names.
bool same_partition(std::span<const int> a, std::span<const int> b);

struct HierarchyViolations {
  std::size_t core_nesting = 0;     // core point at larger k missing at smaller k
  std::size_t cluster_nesting = 0;  // cluster not inside exactly one cluster below it
  std::size_t parent_links = 0;     // recorded parent disagrees with membership

  std::size_t total() const { return core_nesting + cluster_nesting + parent_links; }
};

HierarchyViolations check_hierarchy(const ClusterTree& tree);

}  // namespace tsclust::clustering
