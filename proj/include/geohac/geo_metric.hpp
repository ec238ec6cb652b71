#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace geohac {

/// IUGG mean Earth radius in kilometres.
inline constexpr double kEarthRadiusKm = 6371.0088;

using PointId = std::uint32_t;

struct GeoPoint {
  double lat;  // degrees
  double lon;  // degrees
};

struct PlanarPoint {
  double x;  // km
  double y;  // km
};

struct UnitVector {
  double x, y, z;
};

enum class Metric { Euclidean, Haversine };

const char* metric_name(Metric m) noexcept;

bool is_valid(GeoPoint p) noexcept;
bool is_valid(PlanarPoint p) noexcept;

double euclidean_distance(PlanarPoint a, PlanarPoint b) noexcept;

/// Great-circle distance in km using the asin(sqrt(hav)) form. Arguments are
/// put in a canonical order first so that d(a,b) and d(b,a) agree bit for bit.
double haversine_distance(GeoPoint a, GeoPoint b,
                          double radius_km = kEarthRadiusKm) noexcept;

UnitVector geo_to_unit_sphere(GeoPoint p) noexcept;

/// Chord length on the unit sphere subtending an arc of `h_km`.
/// Throws std::domain_error unless 0 <= h_km <= pi * radius_km.
double radius_to_chord(double h_km, double radius_km = kEarthRadiusKm);

/// Homogeneous set of planar (km) or geographic (degree) points, stored
/// column-wise. For planar sets the two columns are x and y; for geodesic
/// sets they are lat and lon.
class PointSet {
 public:
  PointSet() = default;

  static PointSet planar(std::span<const PlanarPoint> pts);
  static PointSet geodesic(std::span<const GeoPoint> pts,
                           double radius_km = kEarthRadiusKm);
  static PointSet planar(std::vector<double> xs, std::vector<double> ys);

  Metric metric() const noexcept { return metric_; }
  std::size_t size() const noexcept { return a_.size(); }
  bool empty() const noexcept { return a_.empty(); }
  double radius_km() const noexcept { return radius_km_; }

  std::span<const double> xs() const noexcept { return a_; }
  std::span<const double> ys() const noexcept { return b_; }
  std::span<const double> lats() const noexcept { return a_; }
  std::span<const double> lons() const noexcept { return b_; }

  PlanarPoint planar_at(std::size_t i) const noexcept { return {a_[i], b_[i]}; }
  GeoPoint geo_at(std::size_t i) const noexcept { return {a_[i], b_[i]}; }

  /// Exact distance between points i and j in km under the set's metric.
  double distance(std::size_t i, std::size_t j) const noexcept;

  /// New set holding the given points in the given order.
  PointSet subset(std::span<const PointId> ids) const;

 private:
  Metric metric_ = Metric::Euclidean;
  double radius_km_ = kEarthRadiusKm;
  std::vector<double> a_;
  std::vector<double> b_;
};

}  // namespace geohac
