#pragma once

// Single linkage straight from the sparse graph: the dendrogram is the
// minimum spanning tree, so a component is clustered in O(m log m) time and
// O(n + m) memory without ever forming a dense sub-matrix.

#include <cstdint>

#include "geohac/distance_graph.hpp"
#include "geohac/linkage.hpp"

namespace geohac {

struct MstEdge {
  std::uint32_t u;  // u < v
  std::uint32_t v;
  double weight;

  bool operator==(const MstEdge&) const = default;
};

using MstEdgeList = memory::tracked_vector<MstEdge>;

/// Kruskal over edges ordered by (weight, u, v). Returns the tree edges in
/// that order. Throws std::logic_error if `sub` is not connected.
MstEdgeList minimum_spanning_tree(const SparseDistanceGraph& sub);

/// Union-find pass over the tree edges in (weight, u, v) order.
/// Throws std::logic_error unless the edges span all `count` nodes.
LinkageMatrix mst_to_linkage(const MstEdgeList& edges, std::size_t count);

}  // namespace geohac
