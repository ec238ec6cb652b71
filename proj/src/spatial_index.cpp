#include "geohac/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "geohac/kernels.hpp"

namespace geohac {

namespace {

// Relative slack on squared pruning bounds; survivors are re-tested exactly.
constexpr double kRelSlack = 1e-9;
// Absolute slack on squared chord lengths, covering cancellation in the
// unit-sphere embedding for nearly coincident points.
constexpr double kChordAbsSlack = 1e-14;

}  // namespace

SpatialIndex SpatialIndex::build(const PointSet& ps, std::size_t leaf_size) {
  if (ps.empty()) {
    throw std::invalid_argument("SpatialIndex: cannot index an empty point set");
  }
  if (leaf_size == 0) {
    throw std::invalid_argument("SpatialIndex: leaf size must be positive");
  }
  if (ps.size() > std::numeric_limits<std::uint32_t>::max() / 2) {
    throw std::invalid_argument("SpatialIndex: too many points");
  }

  SpatialIndex idx;
  idx.metric_ = ps.metric();
  idx.radius_km_ = ps.radius_km();
  idx.leaf_size_ = leaf_size;
  const std::size_t n = ps.size();

  if (ps.metric() == Metric::Euclidean) {
    idx.dim_ = 2;
    idx.coord_[0].assign(ps.xs().begin(), ps.xs().end());
    idx.coord_[1].assign(ps.ys().begin(), ps.ys().end());
  } else {
    idx.dim_ = 3;
    for (auto& c : idx.coord_) c.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const UnitVector u = geo_to_unit_sphere(ps.geo_at(i));
      idx.coord_[0][i] = u.x;
      idx.coord_[1][i] = u.y;
      idx.coord_[2][i] = u.z;
    }
  }

  idx.order_.resize(n);
  for (std::size_t i = 0; i < n; ++i) idx.order_[i] = static_cast<PointId>(i);
  idx.nodes_.reserve(2 * (n / leaf_size + 1));
  idx.build_node(0, static_cast<std::uint32_t>(n));

  // Permute coordinates into tree order so leaves are contiguous.
  for (int d = 0; d < idx.dim_; ++d) {
    std::vector<double> sorted(n);
    for (std::size_t s = 0; s < n; ++s) sorted[s] = idx.coord_[d][idx.order_[s]];
    idx.coord_[d] = std::move(sorted);
  }
  if (ps.metric() == Metric::Haversine) {
    idx.lat_.resize(n);
    idx.lon_.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
      idx.lat_[s] = ps.lats()[idx.order_[s]];
      idx.lon_[s] = ps.lons()[idx.order_[s]];
    }
  }
  idx.slot_of_.resize(n);
  for (std::size_t s = 0; s < n; ++s) idx.slot_of_[idx.order_[s]] = static_cast<std::uint32_t>(s);
  return idx;
}

std::int32_t SpatialIndex::build_node(std::uint32_t begin, std::uint32_t end) {
  const auto self = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(Node{begin, end, -1, -1, {}, {}});

  double lo[3], hi[3];
  for (int d = 0; d < dim_; ++d) {
    lo[d] = std::numeric_limits<double>::infinity();
    hi[d] = -std::numeric_limits<double>::infinity();
    for (std::uint32_t s = begin; s < end; ++s) {
      const double v = coord_[d][order_[s]];
      lo[d] = std::min(lo[d], v);
      hi[d] = std::max(hi[d], v);
    }
    nodes_[self].lo[d] = lo[d];
    nodes_[self].hi[d] = hi[d];
  }

  if (end - begin <= leaf_size_) return self;

  int split = 0;
  for (int d = 1; d < dim_; ++d)
    if (hi[d] - lo[d] > hi[split] - lo[split]) split = d;
  if (!(hi[split] > lo[split])) return self;  // all coincident

  const std::uint32_t mid = begin + (end - begin) / 2;
  const auto& c = coord_[split];
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end, [&c](PointId a, PointId b) {
                     return c[a] < c[b] || (c[a] == c[b] && a < b);
                   });
  const std::int32_t left = build_node(begin, mid);
  const std::int32_t right = build_node(mid, end);
  nodes_[self].left = left;
  nodes_[self].right = right;
  return self;
}

std::size_t SpatialIndex::leaf_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const Node& nd) { return nd.left < 0; }));
}

void SpatialIndex::check_query(PointId center, double h_max) const {
  if (center >= size()) {
    throw std::invalid_argument("range_query: point id " +
                                std::to_string(center) + " out of range [0, " +
                                std::to_string(size()) + ")");
  }
  if (!(h_max > 0.0)) {
    throw std::invalid_argument("range_query: h_max must be positive");
  }
}

void SpatialIndex::range_query(PointId center, double h_max,
                               std::vector<Neighbor>& out) const {
  check_query(center, h_max);
  const kernels::KernelTable& k = kernels::active();
  const std::uint32_t cs = slot_of_[center];
  const double q[3] = {coord_[0][cs], coord_[1][cs],
                       dim_ == 3 ? coord_[2][cs] : 0.0};

  double bound_sq;
  if (metric_ == Metric::Euclidean) {
    bound_sq = h_max * h_max * (1.0 + kRelSlack);
  } else if (h_max >= std::numbers::pi * radius_km_) {
    bound_sq = std::numeric_limits<double>::infinity();
  } else {
    const double chord = radius_to_chord(h_max, radius_km_);
    bound_sq = chord * chord * (1.0 + kRelSlack) + kChordAbsSlack;
  }
  const GeoPoint center_geo =
      metric_ == Metric::Haversine ? GeoPoint{lat_[cs], lon_[cs]} : GeoPoint{};

  thread_local std::vector<double> scratch;
  std::int32_t stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& nd = nodes_[stack[--top]];
    double gap = 0.0;
    for (int d = 0; d < dim_; ++d) {
      double delta = 0.0;
      if (q[d] < nd.lo[d]) delta = nd.lo[d] - q[d];
      else if (q[d] > nd.hi[d]) delta = q[d] - nd.hi[d];
      gap += delta * delta;
    }
    if (gap > bound_sq) continue;
    if (nd.left >= 0) {
      stack[top++] = nd.right;
      stack[top++] = nd.left;
      continue;
    }
    const std::size_t count = nd.end - nd.begin;
    scratch.resize(count);
    if (metric_ == Metric::Euclidean) {
      k.planar_distances(q[0], q[1], coord_[0].data() + nd.begin,
                         coord_[1].data() + nd.begin, count, scratch.data());
      for (std::size_t t = 0; t < count; ++t) {
        const std::uint32_t s = nd.begin + static_cast<std::uint32_t>(t);
        if (s != cs && scratch[t] <= h_max) out.push_back({order_[s], scratch[t]});
      }
    } else {
      k.chord_sq(q[0], q[1], q[2], coord_[0].data() + nd.begin,
                 coord_[1].data() + nd.begin, coord_[2].data() + nd.begin,
                 count, scratch.data());
      for (std::size_t t = 0; t < count; ++t) {
        const std::uint32_t s = nd.begin + static_cast<std::uint32_t>(t);
        if (s == cs || scratch[t] > bound_sq) continue;
        const double d =
            haversine_distance(center_geo, GeoPoint{lat_[s], lon_[s]}, radius_km_);
        if (d <= h_max) out.push_back({order_[s], d});
      }
    }
  }
}

std::vector<PointId> SpatialIndex::range_query(PointId center,
                                               double h_max) const {
  std::vector<Neighbor> hits;
  range_query(center, h_max, hits);
  std::vector<PointId> ids;
  ids.reserve(hits.size());
  for (const auto& h : hits) ids.push_back(h.id);
  return ids;
}

std::vector<PointPair> SpatialIndex::query_pairs(double h_max) const {
  if (!(h_max > 0.0)) {
    throw std::invalid_argument("query_pairs: h_max must be positive");
  }
  std::vector<PointPair> pairs;
  std::vector<Neighbor> hits;
  const auto n = static_cast<PointId>(size());
  for (PointId i = 0; i < n; ++i) {
    hits.clear();
    range_query(i, h_max, hits);
    std::erase_if(hits, [i](const Neighbor& nb) { return nb.id <= i; });
    std::sort(hits.begin(), hits.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
    for (const auto& nb : hits) pairs.push_back({i, nb.id, nb.distance});
  }
  return pairs;
}

}  // namespace geohac
