#include "tsclust/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "tsclust/error.hpp"

namespace tsclust::clustering {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

void check_params(std::size_t k, double delta, double link_radius) {
  require(k >= 1, ErrorCode::InvalidArgument, "clustering: k must be >= 1");
  require(delta > 0.0 && std::isfinite(delta), ErrorCode::InvalidArgument,
          "clustering: delta must be positive");
  require(link_radius > 0.0 && std::isfinite(link_radius), ErrorCode::InvalidArgument,
          "clustering: link_radius must be positive");
}

// Assign ids in order of each component's smallest member.
template <class Root>
Labeling snapshot(std::size_t n, const std::vector<char>& is_core, Root root) {
  Labeling out;
  out.assignments.assign(n, kNoise);
  std::vector<int> id_of_root(n, kNoise);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_core[i]) continue;
    const std::size_t r = root(i);
    if (id_of_root[r] == kNoise) id_of_root[r] = next++;
    out.assignments[i] = id_of_root[r];
  }
  out.cluster_count = next;
  return out;
}

std::vector<std::size_t> neighbor_counts(const PointSet& points, const KdTree& tree, double delta) {
  std::vector<std::size_t> counts(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    counts[i] = tree.count_within(points.point(i), delta);
  }
  return counts;
}

// Builds every level in one pass: points enter the union-find in order of
// decreasing neighbor count, so each link is examined once, when its later
// endpoint becomes core.
std::vector<Labeling> incremental_levels(const PointSet& points, double delta, double link,
                                         std::span<const std::size_t> ks) {
  const std::size_t n = points.size();
  std::vector<Labeling> levels;
  if (n == 0) {
    for (auto k : ks) {
      Labeling l;
      l.k = k;
      l.delta = delta;
      l.link_radius = link;
      levels.push_back(std::move(l));
    }
    return levels;
  }
  const KdTree tree(points);
  const auto counts = neighbor_counts(points, tree, delta);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });

  DisjointSets sets(n);
  std::vector<char> is_core(n, 0);
  std::size_t next = 0;
  for (auto k : ks) {
    const std::size_t batch_begin = next;
    while (next < n && counts[order[next]] >= k) is_core[order[next++]] = 1;
    for (std::size_t p = batch_begin; p < next; ++p) {
      const std::size_t i = order[p];
      tree.for_each_within(points.point(i), link, [&](std::size_t j) {
        if (is_core[j] && j != i) sets.unite(i, j);
        return true;
      });
    }
    Labeling l = snapshot(n, is_core, [&](std::size_t i) { return sets.find(i); });
    l.k = k;
    l.delta = delta;
    l.link_radius = link;
    levels.push_back(std::move(l));
  }
  return levels;
}

}  // namespace

std::vector<std::size_t> Labeling::members(int cluster) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] == cluster) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Labeling::core() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] != kNoise) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> core_points(const PointSet& points, std::size_t k, double delta) {
  check_params(k, delta, delta);
  std::vector<std::size_t> out;
  if (points.empty()) return out;
  const KdTree tree(points);
  const auto counts = neighbor_counts(points, tree, delta);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] >= k) out.push_back(i);
  }
  return out;
}

Labeling dbscan_cluster(const PointSet& points, std::size_t k, double delta,
                        std::optional<double> link_radius) {
  const double link = link_radius.value_or(2.0 * delta);
  check_params(k, delta, link);
  const std::size_t ks[] = {k};
  return std::move(incremental_levels(points, delta, link, ks).front());
}

std::vector<std::vector<std::size_t>> ball_union_components(const PointSet& centres,
                                                            double delta) {
  require(delta > 0.0, ErrorCode::InvalidArgument, "ball_union_components: delta must be positive");
  const std::size_t n = centres.size();
  // Closed balls of radius delta meet iff their centres are within 2 delta.
  std::vector<std::vector<std::size_t>> adjacent(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (in_closed_ball(squared_distance(centres.point(i), centres.point(j)), 2.0 * delta)) {
        adjacent[i].push_back(j);
        adjacent[j].push_back(i);
      }
    }
  }
  std::vector<char> seen(n, 0);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> comp{start};
    seen[start] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (auto j : adjacent[comp[head]]) {
        if (!seen[j]) {
          seen[j] = 1;
          comp.push_back(j);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

ClusterTree cluster_tree(const PointSet& points, double delta, std::span<const std::size_t> ks,
                         std::optional<double> link_radius) {
  require(!ks.empty(), ErrorCode::InvalidArgument, "cluster_tree: no k values");
  for (std::size_t i = 1; i < ks.size(); ++i) {
    require(ks[i] < ks[i - 1], ErrorCode::InvalidArgument,
            "cluster_tree: k values must be strictly descending");
  }
  const double link = link_radius.value_or(2.0 * delta);
  check_params(ks.back(), delta, link);

  ClusterTree tree;
  tree.levels = incremental_levels(points, delta, link, ks);
  tree.parents.resize(tree.levels.size());
  for (std::size_t l = 0; l < tree.levels.size(); ++l) {
    const auto& level = tree.levels[l];
    tree.parents[l].assign(static_cast<std::size_t>(level.cluster_count), -1);
    if (l + 1 == tree.levels.size()) continue;
    const auto& below = tree.levels[l + 1];
    for (std::size_t i = 0; i < level.assignments.size(); ++i) {
      const int c = level.assignments[i];
      if (c != kNoise && tree.parents[l][static_cast<std::size_t>(c)] == -1) {
        tree.parents[l][static_cast<std::size_t>(c)] = below.assignments[i];
      }
    }
  }
  return tree;
}

std::optional<ClusterRef> smallest_containing_cluster(const ClusterTree& tree,
                                                      std::span<const std::size_t> indices) {
  require(!indices.empty(), ErrorCode::InvalidArgument,
          "smallest_containing_cluster: empty index set");
  for (std::size_t l = 0; l < tree.levels.size(); ++l) {
    const auto& a = tree.levels[l].assignments;
    for (auto i : indices) {
      require(i < a.size(), ErrorCode::InvalidArgument,
              "smallest_containing_cluster: index out of range");
    }
    const int c = a[indices.front()];
    if (c == kNoise) continue;
    const bool all = std::all_of(indices.begin(), indices.end(),
                                 [&](std::size_t i) { return a[i] == c; });
    if (all) return ClusterRef{l, c};
  }
  return std::nullopt;
}

std::vector<std::size_t> cluster_members(const ClusterTree& tree, const ClusterRef& ref) {
  return tree.levels.at(ref.level).members(ref.cluster);
}

bool hartigan_disjoint(const ClusterTree& tree, std::span<const std::size_t> a,
                       std::span<const std::size_t> a_prime) {
  require(!a.empty() && !a_prime.empty(), ErrorCode::InvalidArgument,
          "hartigan_disjoint: index sets must be nonempty");
  const auto ra = smallest_containing_cluster(tree, a);
  const auto rb = smallest_containing_cluster(tree, a_prime);
  if (!ra || !rb) return false;
  const auto ma = cluster_members(tree, *ra);
  const auto mb = cluster_members(tree, *rb);
  std::vector<std::size_t> common;
  std::set_intersection(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(common));
  return common.empty();
}

Labeling components_bruteforce(const PointSet& points, std::size_t k, double delta,
                               std::optional<double> link_radius) {
  const double link = link_radius.value_or(2.0 * delta);
  check_params(k, delta, link);
  const std::size_t n = points.size();
  require(n <= kBruteforceLimit, ErrorCode::Refused,
          "components_bruteforce: n = " + std::to_string(n) + " exceeds the limit of " +
              std::to_string(kBruteforceLimit));
  std::vector<double> dist2(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dist2[i * n + j] = squared_distance(points.point(i), points.point(j));
    }
  }
  std::vector<char> is_core(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j) c += in_closed_ball(dist2[i * n + j], delta) ? 1 : 0;
    is_core[i] = c >= k;
  }
  // Union-find without rank or path compression.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_core[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (is_core[j] && in_closed_ball(dist2[i * n + j], link)) {
        const std::size_t ri = root(i);
        const std::size_t rj = root(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
    }
  }
  Labeling out = snapshot(n, is_core, root);
  out.k = k;
  out.delta = delta;
  out.link_radius = link;
  return out;
}

bool same_partition(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> forward;
  std::map<int, int> backward;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] == kNoise) != (b[i] == kNoise)) return false;
    if (a[i] == kNoise) continue;
    const auto [fit, f_new] = forward.emplace(a[i], b[i]);
    const auto [bit, b_new] = backward.emplace(b[i], a[i]);
    if (fit->second != b[i] || bit->second != a[i]) return false;
  }
  return true;
}

HierarchyViolations check_hierarchy(const ClusterTree& tree) {
  HierarchyViolations v;
  for (std::size_t hi = 0; hi < tree.levels.size(); ++hi) {
    const auto& upper = tree.levels[hi];
    for (std::size_t lo = hi + 1; lo < tree.levels.size(); ++lo) {
      const auto& lower = tree.levels[lo];
      // Each cluster of the upper level must land in exactly one lower cluster.
      std::vector<int> image(static_cast<std::size_t>(upper.cluster_count), -2);
      for (std::size_t i = 0; i < upper.assignments.size(); ++i) {
        const int c = upper.assignments[i];
        if (c == kNoise) continue;
        const int below = lower.assignments[i];
        if (below == kNoise) {
          ++v.core_nesting;
          continue;
        }
        int& slot = image[static_cast<std::size_t>(c)];
        if (slot == -2) {
          slot = below;
        } else if (slot != below) {
          ++v.cluster_nesting;
        }
      }
      if (lo == hi + 1) {
        for (std::size_t c = 0; c < image.size(); ++c) {
          if (image[c] != -2 && tree.parents[hi][c] != image[c]) ++v.parent_links;
        }
      }
    }
  }
  return v;
}

}  // namespace tsclust::clustering
