#include "geohac/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <string>
#include <thread>

#include "geohac/dense_linkage.hpp"
#include "geohac/memory.hpp"
#include "geohac/single_linkage_mst.hpp"

namespace geohac {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_heights(std::span<const double> heights, double h_max) {
  for (double h : heights) {
    if (!(h >= 0.0) || h > h_max) {
      throw std::invalid_argument("cut height " + std::to_string(h) +
                                  " km outside [0, h_max = " +
                                  std::to_string(h_max) + " km]");
    }
  }
}

LinkageMatrix component_linkage(const SparseDistanceGraph& g, const PointSet& ps,
                                std::span<const PointId> members, Linkage method) {
  if (members.size() == 1) {
    LinkageMatrix z;
    z.base_count = 1;
    return z;
  }
  if (method == Linkage::Single) {
    MstEdgeList tree;
    {
      const SparseDistanceGraph sub = extract_component_subgraph(g, members);
      tree = minimum_spanning_tree(sub);
    }
    return mst_to_linkage(tree, members.size());
  }
  return nn_chain_linkage(extract_component_condensed(g, ps, members),
                          members.size(), method);
}

}  // namespace

ClusteringResult sparse_geo_hclust(const PointSet& ps, double h_max,
                                   Linkage method,
                                   std::span<const double> heights,
                                   const ClusterOptions& options) {
  if (ps.empty()) {
    throw std::invalid_argument("sparse_geo_hclust: empty point set");
  }
  if (!(h_max > 0.0) || !std::isfinite(h_max)) {
    throw std::invalid_argument("sparse_geo_hclust: h_max must be positive");
  }
  check_heights(heights, h_max);

  ClusteringResult res;
  res.n = ps.size();
  res.h_max = h_max;
  res.method = method;

  auto t0 = Clock::now();
  const SparseDistanceGraph g = build_distance_graph(ps, h_max, options.leaf_size);
  ComponentPartition comp = connected_components(g);
  res.times.graph_s = seconds_since(t0);
  res.components = comp.count();
  res.edges = g.edge_count();
  res.mean_degree = g.mean_degree();
  res.largest_component = comp.largest();
  res.graph_bytes = g.storage_bytes();
  res.graph_entries = g.storage_entries();

  const std::size_t k_count = comp.count();
  std::vector<std::uint32_t> order = options.component_order;
  if (order.empty()) {
    order.resize(k_count);
    for (std::size_t k = 0; k < k_count; ++k) order[k] = static_cast<std::uint32_t>(k);
  } else if (order.size() != k_count) {
    throw std::invalid_argument("sparse_geo_hclust: component order has " +
                                std::to_string(order.size()) + " entries for " +
                                std::to_string(k_count) + " components");
  }

  t0 = Clock::now();
  memory::PeakScope scope;
  std::vector<ComponentCuts> cuts(k_count);
  if (options.retain_linkage) res.linkages.resize(k_count);

  const auto run_one = [&](std::uint32_t k) {
    if (k >= k_count) {
      throw std::invalid_argument("sparse_geo_hclust: bad component order");
    }
    const auto& members = comp.members[k];
    LinkageMatrix z = component_linkage(g, ps, members, method);
    z.valid_up_to = h_max;
    ComponentCuts& out = cuts[k];
    out.reserve(heights.size());
    for (double h : heights) out.push_back(cut_tree(z, h));
    if (options.retain_linkage) res.linkages[k] = std::move(z);
  };

  unsigned workers = 1;
  if (options.parallel) {
    workers = options.threads != 0 ? options.threads
                                   : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(k_count, 1)));
  }
  if (workers <= 1) {
    for (std::uint32_t k : order) run_one(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t = next.fetch_add(1); t < order.size(); t = next.fetch_add(1))
            run_one(order[t]);
        } catch (...) {
          errors[w] = std::current_exception();
          next.store(order.size());
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  res.cuts = assemble_global_labels(cuts, comp, heights, order);
  res.hac_peak_bytes = scope.peak();
  res.hac_largest_allocation = scope.largest();
  res.times.hac_s = seconds_since(t0);
  if (options.retain_linkage) res.partition = std::move(comp);
  return res;
}

CutLabels recut(const ClusteringResult& result, double h) {
  if (result.linkages.size() != result.partition.count() || result.linkages.empty()) {
    throw std::invalid_argument("recut: result was produced without retain_linkage");
  }
  check_heights(std::span<const double>(&h, 1), result.h_max);
  std::vector<ComponentCuts> cuts(result.linkages.size());
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    cuts[k].push_back(cut_tree(result.linkages[k], h));
  }
  return assemble_global_labels(cuts, result.partition, std::span<const double>(&h, 1))
      .front();
}

std::size_t dense_matrix_bytes(std::size_t n) noexcept {
  return n < 2 ? 0 : n * (n - 1) / 2 * sizeof(double);
}

InfeasibleDenseError::InfeasibleDenseError(std::size_t n, std::size_t limit,
                                           std::size_t bytes)
    : std::runtime_error("dense baseline refused: n = " + std::to_string(n) +
                         " exceeds the limit of " + std::to_string(limit) +
                         " points; the condensed matrix alone needs " +
                         std::to_string(memory::to_mib(bytes)) + " MiB"),
      bytes_(bytes) {}

std::vector<CutLabels> dense_hclust_oracle(const PointSet& ps, Linkage method,
                                           std::span<const double> heights,
                                           std::size_t max_points) {
  if (ps.empty()) {
    throw std::invalid_argument("dense_hclust_oracle: empty point set");
  }
  if (ps.size() > max_points) {
    throw InfeasibleDenseError(ps.size(), max_points, dense_matrix_bytes(ps.size()));
  }
  for (double h : heights) {
    if (!(h >= 0.0)) throw std::invalid_argument("dense_hclust_oracle: negative height");
  }
  std::vector<CutLabels> out;
  out.reserve(heights.size());
  if (ps.size() == 1) {
    for (double h : heights) out.push_back({h, Labels{0}});
    return out;
  }
  const LinkageMatrix z = nn_chain_linkage(dense_condensed(ps), ps.size(), method);
  for (double h : heights) out.push_back({h, cut_tree(z, h)});
  return out;
}

bool ExactnessReport::passed() const noexcept {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return !rows.empty();
}

ExactnessReport verify_exactness(const PointSet& ps, double h_max,
                                 std::span<const Linkage> methods,
                                 std::span<const double> heights,
                                 std::size_t max_points,
                                 const ClusterOptions& options) {
  if (ps.size() > max_points) {
    throw InfeasibleDenseError(ps.size(), max_points, dense_matrix_bytes(ps.size()));
  }
  ExactnessReport report;
  for (Linkage method : methods) {
    const ClusteringResult sparse = sparse_geo_hclust(ps, h_max, method, heights, options);
    const std::vector<CutLabels> dense = dense_hclust_oracle(ps, method, heights, max_points);
    for (std::size_t t = 0; t < heights.size(); ++t) {
      ExactnessRow row;
      row.method = method;
      row.h = heights[t];
      row.ari = adjusted_rand_index(sparse.cuts[t].labels, dense[t].labels);
      row.sparse_clusters = count_clusters(sparse.cuts[t].labels);
      row.dense_clusters = count_clusters(dense[t].labels);
      row.labels_equal = sparse.cuts[t].labels == dense[t].labels;
      row.pass = row.ari == 1.0 && row.sparse_clusters == row.dense_clusters;
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace geohac
