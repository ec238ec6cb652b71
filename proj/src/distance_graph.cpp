#include "geohac/distance_graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "geohac/kernels.hpp"

namespace geohac {

namespace {

/// Maps a global id to its rank inside a sorted member list.
class LocalIds {
 public:
  explicit LocalIds(std::span<const PointId> members)
      : members_(members),
        contiguous_(!members.empty() &&
                    members.back() - members.front() + 1 == members.size()) {}

  std::uint32_t operator()(PointId global) const noexcept {
    if (contiguous_) return global - members_.front();
    return static_cast<std::uint32_t>(
        std::lower_bound(members_.begin(), members_.end(), global) -
        members_.begin());
  }

 private:
  std::span<const PointId> members_;
  bool contiguous_;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

void check_members(std::span<const PointId> members, std::size_t n) {
  for (std::size_t t = 0; t < members.size(); ++t) {
    if (members[t] >= n || (t > 0 && members[t] <= members[t - 1])) {
      throw std::invalid_argument(
          "component member list must be sorted, unique and in range");
    }
  }
}

}  // namespace

double SparseDistanceGraph::mean_degree() const noexcept {
  return n == 0 ? 0.0
                : static_cast<double>(col_indices.size()) / static_cast<double>(n);
}

std::size_t SparseDistanceGraph::storage_bytes() const noexcept {
  return row_offsets.size() * sizeof(std::uint64_t) +
         col_indices.size() * sizeof(PointId) + weights.size() * sizeof(double);
}

std::vector<PointPair> SparseDistanceGraph::edges() const {
  std::vector<PointPair> out;
  out.reserve(edge_count());
  for (std::size_t i = 0; i < n; ++i) {
    const auto cols = neighbors(i);
    const auto ws = neighbor_weights(i);
    for (std::size_t t = 0; t < cols.size(); ++t) {
      if (cols[t] > i) out.push_back({static_cast<PointId>(i), cols[t], ws[t]});
    }
  }
  return out;
}

std::size_t ComponentPartition::largest() const noexcept {
  std::size_t best = 0;
  for (const auto& m : members) best = std::max(best, m.size());
  return best;
}

SparseDistanceGraph graph_from_pairs(std::size_t n, double h_max,
                                     std::span<const PointPair> pairs) {
  std::vector<PointPair> sorted;
  std::span<const PointPair> view = pairs;
  const auto by_ids = [](const PointPair& a, const PointPair& b) {
    return a.i < b.i || (a.i == b.i && a.j < b.j);
  };
  if (!std::is_sorted(pairs.begin(), pairs.end(), by_ids)) {
    sorted.assign(pairs.begin(), pairs.end());
    std::sort(sorted.begin(), sorted.end(), by_ids);
    view = sorted;
  }

  SparseDistanceGraph g;
  g.n = n;
  g.h_max = h_max;
  g.row_offsets.assign(n + 1, 0);
  for (std::size_t t = 0; t < view.size(); ++t) {
    const PointPair& p = view[t];
    if (p.i >= p.j || p.j >= n) {
      throw std::invalid_argument("graph_from_pairs: pair (" +
                                  std::to_string(p.i) + ", " +
                                  std::to_string(p.j) + ") is not i < j < n");
    }
    if (t > 0 && view[t - 1].i == p.i && view[t - 1].j == p.j) {
      throw std::invalid_argument("graph_from_pairs: duplicate pair");
    }
    if (!(p.distance >= 0.0) || p.distance > h_max) {
      throw std::invalid_argument("graph_from_pairs: weight outside [0, h_max]");
    }
    ++g.row_offsets[p.i + 1];
    ++g.row_offsets[p.j + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.row_offsets[i + 1] += g.row_offsets[i];

  g.col_indices.resize(2 * view.size());
  g.weights.resize(2 * view.size());
  std::vector<std::uint64_t> cursor(g.row_offsets.begin(), g.row_offsets.end() - 1);
  // Sorted by (i, j): each row receives its lower neighbours (as the j side)
  // before its upper neighbours, both in ascending order.
  for (const PointPair& p : view) {
    g.col_indices[cursor[p.i]] = p.j;
    g.weights[cursor[p.i]++] = p.distance;
    g.col_indices[cursor[p.j]] = p.i;
    g.weights[cursor[p.j]++] = p.distance;
  }
  return g;
}

SparseDistanceGraph build_distance_graph(const PointSet& ps, double h_max,
                                         std::size_t leaf_size) {
  if (!(h_max > 0.0)) {
    throw std::invalid_argument("build_distance_graph: h_max must be positive");
  }
  const SpatialIndex idx = SpatialIndex::build(ps, leaf_size);
  const std::vector<PointPair> pairs = idx.query_pairs(h_max);
  return graph_from_pairs(ps.size(), h_max, pairs);
}

ComponentPartition connected_components(const SparseDistanceGraph& g) {
  DisjointSets sets(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    for (PointId j : g.neighbors(i)) {
      if (j > i) sets.unite(static_cast<std::uint32_t>(i), j);
    }
  }
  ComponentPartition part;
  part.component_id.resize(g.n);
  std::vector<std::uint32_t> id_of_root(g.n, UINT32_MAX);
  for (std::size_t i = 0; i < g.n; ++i) {
    const std::uint32_t root = sets.find(static_cast<std::uint32_t>(i));
    if (id_of_root[root] == UINT32_MAX) {
      id_of_root[root] = static_cast<std::uint32_t>(part.members.size());
      part.members.emplace_back();
    }
    part.component_id[i] = id_of_root[root];
    part.members[id_of_root[root]].push_back(static_cast<PointId>(i));
  }
  return part;
}

CondensedDistances extract_component_condensed(const SparseDistanceGraph& g,
                                               const PointSet& ps,
                                               std::span<const PointId> members) {
  const std::size_t c = members.size();
  if (c < 2) {
    throw std::invalid_argument(
        "extract_component_condensed: component needs at least 2 members, got " +
        std::to_string(c));
  }
  check_members(members, g.n);
  CondensedDistances d(c * (c - 1) / 2);

  if (ps.metric() == Metric::Euclidean) {
    memory::tracked_vector<double> xs(c), ys(c);
    for (std::size_t a = 0; a < c; ++a) {
      xs[a] = ps.xs()[members[a]];
      ys[a] = ps.ys()[members[a]];
    }
    const auto& k = kernels::active();
    for (std::size_t a = 0; a + 1 < c; ++a) {
      k.planar_distances(xs[a], ys[a], xs.data() + a + 1, ys.data() + a + 1,
                         c - a - 1, d.data() + condensed_index(c, a, a + 1));
    }
  } else {
    std::size_t t = 0;
    for (std::size_t a = 0; a + 1 < c; ++a)
      for (std::size_t b = a + 1; b < c; ++b)
        d[t++] = ps.distance(members[a], members[b]);
  }

  // Graph edges carry the stored weights.
  const LocalIds local(members);
  for (std::size_t a = 0; a < c; ++a) {
    const auto cols = g.neighbors(members[a]);
    const auto ws = g.neighbor_weights(members[a]);
    for (std::size_t t = 0; t < cols.size(); ++t) {
      if (cols[t] <= members[a]) continue;
      d[condensed_index(c, a, local(cols[t]))] = ws[t];
    }
  }
  return d;
}

SparseDistanceGraph extract_component_subgraph(const SparseDistanceGraph& g,
                                               std::span<const PointId> members) {
  check_members(members, g.n);
  const LocalIds local(members);
  SparseDistanceGraph sub;
  sub.n = members.size();
  sub.h_max = g.h_max;
  sub.row_offsets.resize(sub.n + 1);
  sub.row_offsets[0] = 0;
  std::size_t total = 0;
  for (std::size_t a = 0; a < sub.n; ++a) {
    total += g.neighbors(members[a]).size();
    sub.row_offsets[a + 1] = total;
  }
  sub.col_indices.resize(total);
  sub.weights.resize(total);
  std::size_t t = 0;
  for (std::size_t a = 0; a < sub.n; ++a) {
    const auto cols = g.neighbors(members[a]);
    const auto ws = g.neighbor_weights(members[a]);
    for (std::size_t e = 0; e < cols.size(); ++e, ++t) {
      sub.col_indices[t] = local(cols[e]);
      sub.weights[t] = ws[e];
    }
  }
  return sub;
}

CondensedDistances dense_condensed(const PointSet& ps) {
  const std::size_t n = ps.size();
  CondensedDistances d(n < 2 ? 0 : n * (n - 1) / 2);
  if (n < 2) return d;
  if (ps.metric() == Metric::Euclidean) {
    const auto& k = kernels::active();
    for (std::size_t a = 0; a + 1 < n; ++a) {
      k.planar_distances(ps.xs()[a], ps.ys()[a], ps.xs().data() + a + 1,
                         ps.ys().data() + a + 1, n - a - 1,
                         d.data() + condensed_index(n, a, a + 1));
    }
  } else {
    std::size_t t = 0;
    for (std::size_t a = 0; a + 1 < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) d[t++] = ps.distance(a, b);
  }
  return d;
}

void write_edge_list(std::ostream& os, const SparseDistanceGraph& g) {
  char buf[64];
  for (std::size_t i = 0; i < g.n; ++i) {
    const auto cols = g.neighbors(i);
    const auto ws = g.neighbor_weights(i);
    for (std::size_t t = 0; t < cols.size(); ++t) {
      if (cols[t] <= i) continue;
      const auto res = std::to_chars(buf, buf + sizeof buf, ws[t]);
      os << i << '\t' << cols[t] << '\t' << std::string_view(buf, res.ptr - buf)
         << '\n';
    }
  }
}

}  // namespace geohac
