#include "geohac/dendrogram.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace geohac {

Labels canonicalize(std::span<const std::uint32_t> labels) {
  std::unordered_map<std::uint32_t, std::uint32_t> remap;
  remap.reserve(labels.size());
  Labels out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto [it, inserted] =
        remap.try_emplace(labels[i], static_cast<std::uint32_t>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

Labels cut_tree(const LinkageMatrix& z, double h) {
  if (!(h >= 0.0) || h > z.valid_up_to) {
    throw std::invalid_argument("cut_tree: height " + std::to_string(h) +
                                " outside [0, " + std::to_string(z.valid_up_to) +
                                "]");
  }
  const std::size_t n = z.base_count;
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  std::vector<std::uint32_t> rep(n + z.records.size());
  std::iota(rep.begin(), rep.begin() + n, 0u);
  const auto find = [&parent](std::uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (std::size_t t = 0; t < z.records.size(); ++t) {
    const Merge& r = z.records[t];
    if (r.height > h) break;
    const std::uint32_t a = find(rep[r.left]);
    const std::uint32_t b = find(rep[r.right]);
    parent[b] = a;
    rep[n + t] = a;
  }
  Labels raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = find(static_cast<std::uint32_t>(i));
  return canonicalize(raw);
}

std::vector<CutLabels> assemble_global_labels(
    std::span<const ComponentCuts> cuts, const ComponentPartition& comp,
    std::span<const double> heights, std::span<const std::uint32_t> order) {
  const std::size_t k_count = comp.count();
  if (cuts.size() != k_count) {
    throw std::invalid_argument("assemble_global_labels: labels for " +
                                std::to_string(cuts.size()) + " components, expected " +
                                std::to_string(k_count));
  }
  std::vector<std::uint32_t> sequence(order.begin(), order.end());
  if (sequence.empty()) {
    sequence.resize(k_count);
    std::iota(sequence.begin(), sequence.end(), 0u);
  }
  if (sequence.size() != k_count) {
    throw std::invalid_argument("assemble_global_labels: order is not a permutation");
  }

  const std::size_t n = comp.component_id.size();
  std::vector<CutLabels> out(heights.size());
  for (std::size_t t = 0; t < heights.size(); ++t) {
    out[t].h = heights[t];
    out[t].labels.assign(n, 0);
  }
  std::vector<bool> seen(k_count, false);
  std::uint64_t g = 0;
  for (std::uint32_t k : sequence) {
    if (k >= k_count || seen[k]) {
      throw std::invalid_argument("assemble_global_labels: order is not a permutation");
    }
    seen[k] = true;
    const auto& members = comp.members[k];
    if (cuts[k].size() != heights.size()) {
      throw std::invalid_argument("assemble_global_labels: component " +
                                  std::to_string(k) + " is missing cut labels");
    }
    for (std::size_t t = 0; t < heights.size(); ++t) {
      const Labels& local = cuts[k][t];
      if (local.size() != members.size()) {
        throw std::invalid_argument("assemble_global_labels: component " +
                                    std::to_string(k) + " label count mismatch");
      }
      for (std::size_t a = 0; a < members.size(); ++a) {
        out[t].labels[members[a]] = static_cast<std::uint32_t>(g + local[a]);
      }
    }
    g += members.size();
  }
  for (auto& c : out) c.labels = canonicalize(c.labels);
  return out;
}

double adjusted_rand_index(std::span<const std::uint32_t> a,
                           std::span<const std::uint32_t> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("adjusted_rand_index: label vectors differ in length (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  const std::size_t n = a.size();
  if (n < 2) return 1.0;
  const Labels ca = canonicalize(a);
  const Labels cb = canonicalize(b);

  std::unordered_map<std::uint64_t, std::uint64_t> joint;
  std::vector<std::uint64_t> row, col;
  for (std::size_t i = 0; i < n; ++i) {
    if (ca[i] >= row.size()) row.resize(ca[i] + 1, 0);
    if (cb[i] >= col.size()) col.resize(cb[i] + 1, 0);
    ++row[ca[i]];
    ++col[cb[i]];
    ++joint[(static_cast<std::uint64_t>(ca[i]) << 32) | cb[i]];
  }
  const auto pairs = [](std::uint64_t m) {
    return static_cast<long double>(m) * static_cast<long double>(m - (m > 0)) / 2;
  };
  long double index = 0, sum_a = 0, sum_b = 0;
  for (const auto& [key, m] : joint) index += pairs(m);
  for (auto m : row) sum_a += pairs(m);
  for (auto m : col) sum_b += pairs(m);
  const long double total = pairs(n);
  const long double expected = sum_a * sum_b / total;
  const long double max_index = (sum_a + sum_b) / 2;
  // Equal only when both partitions are trivial and identical.
  if (max_index == expected) return 1.0;
  return static_cast<double>((index - expected) / (max_index - expected));
}

std::size_t count_clusters(std::span<const std::uint32_t> labels) {
  std::vector<std::uint32_t> v(labels.begin(), labels.end());
  std::sort(v.begin(), v.end());
  return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

}  // namespace geohac
