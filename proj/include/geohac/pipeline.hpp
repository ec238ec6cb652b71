#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "geohac/dendrogram.hpp"
#include "geohac/distance_graph.hpp"
#include "geohac/geo_metric.hpp"
#include "geohac/linkage.hpp"

namespace geohac {

struct ClusterOptions {
  /// Process components on a worker pool. Output is identical either way.
  bool parallel = false;
  /// Worker count for parallel mode; 0 uses the hardware concurrency.
  unsigned threads = 0;
  /// Keep the partition and per-component dendrograms for later re-cuts.
  bool retain_linkage = false;
  /// Component processing order (a permutation of 0..K-1); empty means
  /// ascending component id.
  std::vector<std::uint32_t> component_order;
  std::size_t leaf_size = SpatialIndex::kDefaultLeafSize;
};

struct PhaseTimes {
  double graph_s = 0.0;  // index, range queries, CSR assembly, components
  double hac_s = 0.0;    // per-component HAC, cuts, label assembly
  double total_s() const noexcept { return graph_s + hac_s; }
};

struct ClusteringResult {
  std::vector<CutLabels> cuts;
  std::size_t n = 0;
  double h_max = 0.0;
  Linkage method = Linkage::Single;
  std::size_t components = 0;
  std::size_t edges = 0;
  double mean_degree = 0.0;
  std::size_t largest_component = 0;
  PhaseTimes times;
  std::size_t graph_bytes = 0;
  std::size_t graph_entries = 0;
  /// Peak bytes held by HAC working storage (allocation accountant).
  std::size_t hac_peak_bytes = 0;
  std::size_t hac_largest_allocation = 0;

  // Filled only with ClusterOptions::retain_linkage.
  ComponentPartition partition;
  std::vector<LinkageMatrix> linkages;
};

/// Exact HAC through the sparse distance graph: components of the h_max
/// graph are clustered independently (single linkage via the MST of the
/// component's subgraph, other methods via its condensed matrix) and cut at
/// every requested height. Throws std::invalid_argument for an empty set,
/// h_max <= 0, or any height outside [0, h_max].
ClusteringResult sparse_geo_hclust(const PointSet& ps, double h_max,
                                   Linkage method,
                                   std::span<const double> heights,
                                   const ClusterOptions& options = {});

/// Labels at a new height from retained dendrograms, without re-running HAC.
CutLabels recut(const ClusteringResult& result, double h);

class InfeasibleDenseError : public std::runtime_error {
 public:
  InfeasibleDenseError(std::size_t n, std::size_t limit, std::size_t bytes);
  std::size_t required_bytes() const noexcept { return bytes_; }

 private:
  std::size_t bytes_;
};

inline constexpr std::size_t kDefaultDenseLimit = 50'000;

/// Bytes of the full condensed matrix for n points.
std::size_t dense_matrix_bytes(std::size_t n) noexcept;

/// Baseline: full condensed matrix, one global NN-chain run, cuts at every
/// height. Throws InfeasibleDenseError when n exceeds `max_points`.
std::vector<CutLabels> dense_hclust_oracle(const PointSet& ps, Linkage method,
                                           std::span<const double> heights,
                                           std::size_t max_points = kDefaultDenseLimit);

struct ExactnessRow {
  Linkage method;
  double h;
  double ari;
  std::size_t sparse_clusters;
  std::size_t dense_clusters;
  bool labels_equal;  // canonical label vectors identical
  bool pass;          // ari == 1 and counts equal
};

struct ExactnessReport {
  std::vector<ExactnessRow> rows;
  bool passed() const noexcept;
};

ExactnessReport verify_exactness(const PointSet& ps, double h_max,
                                 std::span<const Linkage> methods,
                                 std::span<const double> heights,
                                 std::size_t max_points = kDefaultDenseLimit,
                                 const ClusterOptions& options = {});

}  // namespace geohac
