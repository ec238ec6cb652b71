#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "geohac/geo_metric.hpp"
#include "geohac/memory.hpp"
#include "geohac/spatial_index.hpp"

namespace geohac {

/// Symmetric CSR adjacency holding the exact distance of every pair within
/// h_max. Rows are sorted by column; there are no self-loops.
struct SparseDistanceGraph {
  std::size_t n = 0;
  double h_max = 0.0;
  memory::tracked_vector<std::uint64_t> row_offsets;  // n + 1
  memory::tracked_vector<PointId> col_indices;        // 2m
  memory::tracked_vector<double> weights;             // 2m, km

  std::size_t edge_count() const noexcept { return col_indices.size() / 2; }
  /// 2m / n
  double mean_degree() const noexcept;

  std::span<const PointId> neighbors(std::size_t i) const noexcept {
    return {col_indices.data() + row_offsets[i],
            col_indices.data() + row_offsets[i + 1]};
  }
  std::span<const double> neighbor_weights(std::size_t i) const noexcept {
    return {weights.data() + row_offsets[i], weights.data() + row_offsets[i + 1]};
  }

  /// Array entries held (offsets + indices + weights).
  std::size_t storage_entries() const noexcept {
    return row_offsets.size() + col_indices.size() + weights.size();
  }
  std::size_t storage_bytes() const noexcept;

  /// Upper-triangle edges (i < j) sorted by (i, j).
  std::vector<PointPair> edges() const;
};

struct ComponentPartition {
  std::vector<std::uint32_t> component_id;        // per node
  std::vector<std::vector<PointId>> members;      // per component, sorted

  std::size_t count() const noexcept { return members.size(); }
  std::size_t largest() const noexcept;
};

/// Condensed upper-triangle distances, row-major: entry (i, j), i < j, lives
/// at condensed_index(n, i, j).
using CondensedDistances = memory::tracked_vector<double>;

inline std::size_t condensed_index(std::size_t n, std::size_t i,
                                   std::size_t j) noexcept {
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

SparseDistanceGraph build_distance_graph(
    const PointSet& ps, double h_max,
    std::size_t leaf_size = SpatialIndex::kDefaultLeafSize);

/// CSR graph from an upper-triangle pair list (i < j, sorted or not).
SparseDistanceGraph graph_from_pairs(std::size_t n, double h_max,
                                     std::span<const PointPair> pairs);

/// Components numbered by their smallest member id.
ComponentPartition connected_components(const SparseDistanceGraph& g);

/// All pairwise distances inside one component. Pairs that are graph edges
/// take the stored weight; the rest are recomputed from coordinates.
/// Throws std::invalid_argument when the component has fewer than 2 members.
CondensedDistances extract_component_condensed(const SparseDistanceGraph& g,
                                               const PointSet& ps,
                                               std::span<const PointId> members);

/// Induced subgraph with nodes relabelled by rank within `members`.
SparseDistanceGraph extract_component_subgraph(const SparseDistanceGraph& g,
                                               std::span<const PointId> members);

/// Full condensed matrix of a point set (dense baseline).
CondensedDistances dense_condensed(const PointSet& ps);

/// Text edge list `i\tj\td_km`, one line per i < j, sorted by (i, j).
void write_edge_list(std::ostream& os, const SparseDistanceGraph& g);

}  // namespace geohac
