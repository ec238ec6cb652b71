#include "geohac/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace geohac {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = line.find(',');
    out.push_back(trim(line.substr(0, pos)));
    if (pos == std::string_view::npos) return out;
    line.remove_prefix(pos + 1);
  }
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return v;
}

std::string location(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

}  // namespace

std::optional<InputFormat> parse_input_format(std::string_view name) noexcept {
  if (name == "auto") return InputFormat::Auto;
  if (name == "csv") return InputFormat::Csv;
  if (name == "geojson") return InputFormat::GeoJson;
  return std::nullopt;
}

PointSet read_points_csv(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  Metric metric = Metric::Euclidean;
  int first_col = 0;  // column holding lat (or x)
  std::vector<double> a, b;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    const auto fields = split_commas(text);
    if (!have_header) {
      if (fields.size() != 2) {
        throw FormatError(location(source, line_no) +
                          ": header must have two columns (lat,lon or x,y), found " +
                          std::to_string(fields.size()));
      }
      const auto is = [&](std::string_view p, std::string_view q) {
        return (fields[0] == p && fields[1] == q) || (fields[0] == q && fields[1] == p);
      };
      if (is("lat", "lon")) {
        metric = Metric::Haversine;
        first_col = fields[0] == "lat" ? 0 : 1;
      } else if (is("x", "y")) {
        metric = Metric::Euclidean;
        first_col = fields[0] == "x" ? 0 : 1;
      } else {
        throw FormatError(location(source, line_no) + ": unknown header columns '" +
                          std::string(fields[0]) + "," + std::string(fields[1]) +
                          "' (expected lat,lon or x,y)");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != 2) {
      throw FormatError(location(source, line_no) + ": expected 2 fields, found " +
                        std::to_string(fields.size()));
    }
    const auto u = to_double(fields[first_col]);
    const auto v = to_double(fields[1 - first_col]);
    if (!u || !v || !std::isfinite(*u) || !std::isfinite(*v)) {
      throw FormatError(location(source, line_no) + ": cannot parse '" +
                        std::string(text) + "' as two finite numbers");
    }
    if (metric == Metric::Haversine) {
      if (*u < -90.0 || *u > 90.0) {
        throw FormatError(location(source, line_no) + ": latitude " +
                          format_number(*u) + " outside [-90, 90]");
      }
      if (*v < -180.0 || *v > 180.0) {
        throw FormatError(location(source, line_no) + ": longitude " +
                          format_number(*v) + " outside [-180, 180]");
      }
    }
    a.push_back(*u);
    b.push_back(*v);
  }
  if (in.bad()) throw IoError(std::string(source) + ": read error");
  if (!have_header) throw FormatError(std::string(source) + ": missing header line");
  if (a.empty()) throw FormatError(std::string(source) + ": no points");

  if (metric == Metric::Euclidean) return PointSet::planar(std::move(a), std::move(b));
  std::vector<GeoPoint> pts(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) pts[i] = {a[i], b[i]};
  return PointSet::geodesic(pts);
}

PointSet read_points_geojson(std::istream& in, std::string_view source) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string(source) + ": invalid JSON: " + e.what());
  }
  const std::string src(source);
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection") {
    throw FormatError(src + ": top level must be a FeatureCollection");
  }
  const auto feats = doc.find("features");
  if (feats == doc.end() || !feats->is_array()) {
    throw FormatError(src + ": FeatureCollection has no 'features' array");
  }
  std::vector<GeoPoint> pts;
  pts.reserve(feats->size());
  for (std::size_t i = 0; i < feats->size(); ++i) {
    const json& f = (*feats)[i];
    const std::string where = src + ": feature " + std::to_string(i);
    if (!f.is_object() || f.value("type", "") != "Feature") {
      throw FormatError(where + ": not a Feature");
    }
    const auto geom = f.find("geometry");
    if (geom == f.end() || !geom->is_object() || geom->value("type", "") != "Point") {
      throw FormatError(where + ": geometry is not a Point");
    }
    const auto coords = geom->find("coordinates");
    if (coords == geom->end() || !coords->is_array() || coords->size() < 2 ||
        !(*coords)[0].is_number() || !(*coords)[1].is_number()) {
      throw FormatError(where + ": coordinates must be [lon, lat]");
    }
    const GeoPoint p{(*coords)[1].get<double>(), (*coords)[0].get<double>()};
    if (!is_valid(p)) {
      throw FormatError(where + ": (lat " + format_number(p.lat) + ", lon " +
                        format_number(p.lon) + ") out of range");
    }
    pts.push_back(p);
  }
  if (pts.empty()) throw FormatError(src + ": no points");
  return PointSet::geodesic(pts);
}

PointSet load_points(const std::filesystem::path& path, InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file '" + path.string() + "'");
  if (format == InputFormat::Auto) {
    const std::string ext = path.extension().string();
    format = (ext == ".geojson" || ext == ".json") ? InputFormat::GeoJson
                                                   : InputFormat::Csv;
  }
  return format == InputFormat::GeoJson ? read_points_geojson(in, path.string())
                                        : read_points_csv(in, path.string());
}

void write_points(std::ostream& os, const PointSet& ps) {
  os << (ps.metric() == Metric::Haversine ? "lat,lon\n" : "x,y\n");
  const auto a = ps.xs();
  const auto b = ps.ys();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    os << format_number(a[i]) << ',' << format_number(b[i]) << '\n';
  }
}

void write_labels(std::ostream& os, std::span<const CutLabels> cuts) {
  if (cuts.empty()) throw std::invalid_argument("write_labels: no cuts");
  const std::size_t n = cuts.front().labels.size();
  for (const auto& c : cuts) {
    if (c.labels.size() != n) {
      throw std::invalid_argument("write_labels: cuts have different lengths");
    }
  }
  os << "point_id";
  for (const auto& c : cuts) os << ",h=" << format_number(c.h);
  os << '\n';
  std::string row;
  for (std::size_t i = 0; i < n; ++i) {
    row = std::to_string(i);
    for (const auto& c : cuts) {
      row += ',';
      row += std::to_string(c.labels[i]);
    }
    row += '\n';
    os << row;
  }
}

void write_labels(const std::filesystem::path& path, std::span<const CutLabels> cuts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file '" + path.string() + "'");
  write_labels(out, cuts);
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::vector<CutLabels> read_labels(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<CutLabels> cuts;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    const auto fields = split_commas(text);
    if (!have_header) {
      if (fields.size() < 2 || fields[0] != "point_id") {
        throw FormatError(location(source, line_no) +
                          ": header must be point_id,h=<height>,...");
      }
      for (std::size_t t = 1; t < fields.size(); ++t) {
        const auto f = fields[t];
        const auto h = f.substr(0, 2) == "h=" ? to_double(f.substr(2)) : std::nullopt;
        if (!h) {
          throw FormatError(location(source, line_no) + ": bad height column '" +
                            std::string(f) + "'");
        }
        cuts.push_back({*h, {}});
      }
      have_header = true;
      continue;
    }
    if (fields.size() != cuts.size() + 1) {
      throw FormatError(location(source, line_no) + ": expected " +
                        std::to_string(cuts.size() + 1) + " fields");
    }
    std::uint64_t id = 0;
    const auto parse_u = [](std::string_view s, auto& v) {
      const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
      return r.ec == std::errc() && r.ptr == s.data() + s.size() && !s.empty();
    };
    if (!parse_u(fields[0], id) || id != cuts.front().labels.size()) {
      throw FormatError(location(source, line_no) + ": point ids must be 0, 1, 2, ...");
    }
    for (std::size_t t = 0; t < cuts.size(); ++t) {
      std::uint32_t label = 0;
      if (!parse_u(fields[t + 1], label)) {
        throw FormatError(location(source, line_no) + ": bad label '" +
                          std::string(fields[t + 1]) + "'");
      }
      cuts[t].labels.push_back(label);
    }
  }
  if (!have_header) throw FormatError(std::string(source) + ": missing header line");
  return cuts;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_distance_km(std::string_view text) {
  std::string_view s = trim(text);
  double scale = 1.0;
  if (s.size() > 2 && s.substr(s.size() - 2) == "km") {
    s.remove_suffix(2);
  } else if (s.size() > 1 && s.back() == 'm') {
    s.remove_suffix(1);
    scale = 1e-3;
  }
  const auto v = to_double(trim(s));
  if (!v || !std::isfinite(*v)) {
    throw std::invalid_argument("cannot parse distance '" + std::string(text) + "'");
  }
  return *v * scale;
}

}  // namespace geohac
