#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "geohac/dendrogram.hpp"
#include "geohac/geo_metric.hpp"

namespace geohac {

/// File could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File contents do not match the expected format. The message names the
/// source and the offending line or feature.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InputFormat { Auto, Csv, GeoJson };

std::optional<InputFormat> parse_input_format(std::string_view name) noexcept;

/// Comma-separated text with a header of exactly two columns, `lat,lon`
/// (geodesic, degrees) or `x,y` (planar, km), in either order. Blank lines
/// are skipped. Point ids follow row order.
PointSet read_points_csv(std::istream& in, std::string_view source = "<input>");

/// GeoJSON FeatureCollection whose features are all Points; coordinates are
/// [lon, lat] in degrees. Point ids follow feature order.
PointSet read_points_geojson(std::istream& in, std::string_view source = "<input>");

/// Auto picks GeoJSON for .geojson/.json extensions and CSV otherwise.
PointSet load_points(const std::filesystem::path& path,
                     InputFormat format = InputFormat::Auto);

/// Writes the header matching the metric, then one row per point with
/// shortest round-trip numbers.
void write_points(std::ostream& os, const PointSet& ps);

/// Header `point_id,h=<h1>,h=<h2>,...`, then `id,label1,label2,...` per point.
/// All cuts must have the same length.
void write_labels(std::ostream& os, std::span<const CutLabels> cuts);
void write_labels(const std::filesystem::path& path, std::span<const CutLabels> cuts);

std::vector<CutLabels> read_labels(std::istream& in, std::string_view source = "<input>");

/// Shortest decimal that round-trips, e.g. 0.5 -> "0.5", 20 -> "20".
std::string format_number(double v);

/// Kilometres, with an optional `km` or `m` suffix ("500m" -> 0.5).
/// Throws std::invalid_argument naming the text on failure.
double parse_distance_km(std::string_view text);

}  // namespace geohac
