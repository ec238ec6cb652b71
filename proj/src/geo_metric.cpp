#include "geohac/geo_metric.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace geohac {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

const char* metric_name(Metric m) noexcept {
  return m == Metric::Haversine ? "haversine" : "euclidean";
}

bool is_valid(GeoPoint p) noexcept {
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 &&
         p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0;
}

bool is_valid(PlanarPoint p) noexcept {
  return std::isfinite(p.x) && std::isfinite(p.y);
}

double euclidean_distance(PlanarPoint a, PlanarPoint b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

double haversine_distance(GeoPoint a, GeoPoint b, double radius_km) noexcept {
  if (b.lat < a.lat || (b.lat == a.lat && b.lon < a.lon)) std::swap(a, b);
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double s_phi = std::sin((phi2 - phi1) * 0.5);
  const double s_lam = std::sin((b.lon - a.lon) * kDegToRad * 0.5);
  double h = s_phi * s_phi + std::cos(phi1) * std::cos(phi2) * s_lam * s_lam;
  if (h > 1.0) h = 1.0;
  return 2.0 * radius_km * std::asin(std::sqrt(h));
}

UnitVector geo_to_unit_sphere(GeoPoint p) noexcept {
  const double lat = p.lat * kDegToRad;
  const double lon = p.lon * kDegToRad;
  const double c = std::cos(lat);
  return {c * std::cos(lon), c * std::sin(lon), std::sin(lat)};
}

double radius_to_chord(double h_km, double radius_km) {
  const double max_arc = std::numbers::pi * radius_km;
  if (!(h_km >= 0.0) || h_km > max_arc) {
    throw std::domain_error("radius_to_chord: radius " + std::to_string(h_km) +
                            " km outside [0, " + std::to_string(max_arc) + "]");
  }
  if (h_km == max_arc) return 2.0;
  return 2.0 * std::sin(h_km / (2.0 * radius_km));
}

PointSet PointSet::planar(std::span<const PlanarPoint> pts) {
  std::vector<double> xs, ys;
  xs.reserve(pts.size());
  ys.reserve(pts.size());
  for (const auto& p : pts) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  return planar(std::move(xs), std::move(ys));
}

PointSet PointSet::planar(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("PointSet: coordinate columns differ in length");
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!is_valid(PlanarPoint{xs[i], ys[i]})) {
      throw std::invalid_argument("PointSet: point " + std::to_string(i) +
                                  " has non-finite coordinates");
    }
  }
  PointSet ps;
  ps.metric_ = Metric::Euclidean;
  ps.a_ = std::move(xs);
  ps.b_ = std::move(ys);
  return ps;
}

PointSet PointSet::geodesic(std::span<const GeoPoint> pts, double radius_km) {
  if (!(radius_km > 0.0) || !std::isfinite(radius_km)) {
    throw std::invalid_argument("PointSet: sphere radius must be positive");
  }
  PointSet ps;
  ps.metric_ = Metric::Haversine;
  ps.radius_km_ = radius_km;
  ps.a_.reserve(pts.size());
  ps.b_.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!is_valid(pts[i])) {
      throw std::invalid_argument(
          "PointSet: point " + std::to_string(i) + " (lat " +
          std::to_string(pts[i].lat) + ", lon " + std::to_string(pts[i].lon) +
          ") outside lat [-90, 90] / lon [-180, 180]");
    }
    ps.a_.push_back(pts[i].lat);
    ps.b_.push_back(pts[i].lon);
  }
  return ps;
}

double PointSet::distance(std::size_t i, std::size_t j) const noexcept {
  if (metric_ == Metric::Haversine) {
    return haversine_distance(geo_at(i), geo_at(j), radius_km_);
  }
  // Same operand order as the row kernels: the smaller id is the query.
  if (j < i) std::swap(i, j);
  return euclidean_distance(planar_at(i), planar_at(j));
}

PointSet PointSet::subset(std::span<const PointId> ids) const {
  PointSet ps;
  ps.metric_ = metric_;
  ps.radius_km_ = radius_km_;
  ps.a_.reserve(ids.size());
  ps.b_.reserve(ids.size());
  for (PointId id : ids) {
    if (id >= size()) throw std::out_of_range("PointSet::subset: bad id");
    ps.a_.push_back(a_[id]);
    ps.b_.push_back(b_[id]);
  }
  return ps;
}

}  // namespace geohac
