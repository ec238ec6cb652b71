#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "geohac/distance_graph.hpp"
#include "geohac/linkage.hpp"

namespace geohac {

using Labels = std::vector<std::uint32_t>;

/// Global cluster labels at one cut height.
struct CutLabels {
  double h = 0.0;
  Labels labels;

  bool operator==(const CutLabels&) const = default;
};

/// Relabel so ids appear in first-occurrence order 0, 1, 2, ...
Labels canonicalize(std::span<const std::uint32_t> labels);

/// Local labels after applying every merge with height <= h.
/// Throws std::invalid_argument if h < 0 or h > z.valid_up_to.
Labels cut_tree(const LinkageMatrix& z, double h);

/// Local labels for one component at each cut height.
using ComponentCuts = std::vector<Labels>;

/// Per-component labels shifted by a running offset (advanced by the
/// component size), then canonicalised. `cuts[k][t]` are the local labels of
/// component k at heights[t]; `order` is the processing order of the
/// components (empty means ascending ids).
std::vector<CutLabels> assemble_global_labels(
    std::span<const ComponentCuts> cuts, const ComponentPartition& comp,
    std::span<const double> heights, std::span<const std::uint32_t> order = {});

double adjusted_rand_index(std::span<const std::uint32_t> a,
                           std::span<const std::uint32_t> b);

std::size_t count_clusters(std::span<const std::uint32_t> labels);

}  // namespace geohac
