#include "geohac/single_linkage_mst.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace geohac {

namespace {

bool edge_less(const MstEdge& a, const MstEdge& b) noexcept {
  if (a.weight != b.weight) return a.weight < b.weight;
  if (a.u != b.u) return a.u < b.u;
  return a.v < b.v;
}

// Union by size with path halving. The root chosen for a union is
// irrelevant to callers; cluster ids are tracked per root separately.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  /// Returns the surviving root.
  std::uint32_t unite(std::uint32_t ra, std::uint32_t rb) noexcept {
    if (size_[ra] < size_[rb] || (size_[ra] == size_[rb] && rb < ra))
      std::swap(ra, rb);
    parent_[rb] = ra;
    size_[ra] += size_[rb];
    return ra;
  }
  std::uint32_t size(std::uint32_t root) const noexcept { return size_[root]; }

 private:
  memory::tracked_vector<std::uint32_t> parent_;
  memory::tracked_vector<std::uint32_t> size_;
};

}  // namespace

MstEdgeList minimum_spanning_tree(const SparseDistanceGraph& sub) {
  MstEdgeList candidates;
  candidates.reserve(sub.edge_count());
  for (std::size_t i = 0; i < sub.n; ++i) {
    const auto cols = sub.neighbors(i);
    const auto ws = sub.neighbor_weights(i);
    for (std::size_t t = 0; t < cols.size(); ++t) {
      if (cols[t] > i) {
        candidates.push_back({static_cast<std::uint32_t>(i), cols[t], ws[t]});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), edge_less);

  MstEdgeList tree;
  if (sub.n == 0) return tree;
  tree.reserve(sub.n - 1);
  UnionFind uf(sub.n);
  for (const MstEdge& e : candidates) {
    const std::uint32_t ru = uf.find(e.u);
    const std::uint32_t rv = uf.find(e.v);
    if (ru == rv) continue;
    uf.unite(ru, rv);
    tree.push_back(e);
    if (tree.size() + 1 == sub.n) break;
  }
  if (tree.size() + 1 != sub.n) {
    throw std::logic_error("minimum_spanning_tree: graph with " +
                           std::to_string(sub.n) + " nodes is not connected");
  }
  return tree;
}

LinkageMatrix mst_to_linkage(const MstEdgeList& edges, std::size_t count) {
  if (count == 0 || edges.size() + 1 != count) {
    throw std::logic_error("mst_to_linkage: " + std::to_string(edges.size()) +
                           " edges cannot span " + std::to_string(count) +
                           " nodes");
  }
  MstEdgeList order(edges.begin(), edges.end());
  if (!std::is_sorted(order.begin(), order.end(), edge_less)) {
    std::sort(order.begin(), order.end(), edge_less);
  }

  LinkageMatrix z;
  z.base_count = count;
  z.records.reserve(count - 1);
  UnionFind uf(count);
  memory::tracked_vector<std::uint32_t> cluster_of_root(count);
  std::iota(cluster_of_root.begin(), cluster_of_root.end(), 0u);

  for (const MstEdge& e : order) {
    if (e.u >= count || e.v >= count) {
      throw std::logic_error("mst_to_linkage: edge endpoint out of range");
    }
    const std::uint32_t ru = uf.find(e.u);
    const std::uint32_t rv = uf.find(e.v);
    if (ru == rv) throw std::logic_error("mst_to_linkage: edges contain a cycle");
    const std::uint32_t cu = cluster_of_root[ru];
    const std::uint32_t cv = cluster_of_root[rv];
    const std::uint32_t merged_size = uf.size(ru) + uf.size(rv);
    const std::uint32_t root = uf.unite(ru, rv);
    z.records.push_back({std::min(cu, cv), std::max(cu, cv), e.weight, merged_size});
    cluster_of_root[root] =
        static_cast<std::uint32_t>(count + z.records.size() - 1);
  }
  return z;
}

}  // namespace geohac
