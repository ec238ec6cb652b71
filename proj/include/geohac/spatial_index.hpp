#pragma once

#include <cstddef>
#include <vector>

#include "geohac/geo_metric.hpp"

namespace geohac {

struct Neighbor {
  PointId id;
  double distance;
};

struct PointPair {
  PointId i;
  PointId j;
  double distance;

  bool operator==(const PointPair&) const = default;
};

/// Immutable k-d tree answering exact fixed-radius queries.
///
/// Planar sets are indexed in 2-D. Geodesic sets are embedded on the unit
/// sphere and indexed in 3-D; a chord bound (with a small slack) prunes
/// candidates and every survivor is confirmed with the haversine distance, so
/// results agree exactly with a brute-force haversine scan. Reported
/// distances always come from the set's own distance function.
class SpatialIndex {
 public:
  static constexpr std::size_t kDefaultLeafSize = 16;

  /// Throws std::invalid_argument on an empty set or zero leaf size.
  static SpatialIndex build(const PointSet& ps,
                            std::size_t leaf_size = kDefaultLeafSize);

  std::size_t size() const noexcept { return order_.size(); }
  Metric metric() const noexcept { return metric_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t leaf_count() const noexcept;

  /// Ids j != center with d(center, j) <= h_max, in unspecified order.
  std::vector<PointId> range_query(PointId center, double h_max) const;

  /// Appends (j, d(center, j)) for every j != center within h_max.
  void range_query(PointId center, double h_max,
                   std::vector<Neighbor>& out) const;

  /// Every unordered pair within h_max once, as (i < j, d), sorted by (i, j).
  std::vector<PointPair> query_pairs(double h_max) const;

 private:
  struct Node {
    std::uint32_t begin;
    std::uint32_t end;
    std::int32_t left;
    std::int32_t right;
    double lo[3];
    double hi[3];
  };

  std::int32_t build_node(std::uint32_t begin, std::uint32_t end);
  void check_query(PointId center, double h_max) const;

  Metric metric_ = Metric::Euclidean;
  double radius_km_ = kEarthRadiusKm;
  int dim_ = 2;
  std::size_t leaf_size_ = kDefaultLeafSize;
  std::vector<Node> nodes_;
  std::vector<PointId> order_;    // tree slot -> point id
  std::vector<std::uint32_t> slot_of_;  // point id -> tree slot
  std::vector<double> coord_[3];  // tree-ordered x, y (and z on the sphere)
  std::vector<double> lat_, lon_; // tree-ordered, geodesic sets only
};

}  // namespace geohac
