#include "geohac/c_api.h"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include "geohac/pipeline.hpp"

namespace {

thread_local std::string g_last_error;

int fail(int code, std::string msg) {
  g_last_error = std::move(msg);
  return code;
}

geohac::PointSet make_points(std::size_t n, const double* coords, int metric) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (coords == nullptr) throw std::invalid_argument("coords is NULL");
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = coords[2 * i];
    b[i] = coords[2 * i + 1];
  }
  switch (metric) {
    case GEOHAC_METRIC_EUCLIDEAN:
      return geohac::PointSet::planar(std::move(a), std::move(b));
    case GEOHAC_METRIC_HAVERSINE: {
      std::vector<geohac::GeoPoint> pts(n);
      for (std::size_t i = 0; i < n; ++i) pts[i] = {a[i], b[i]};
      return geohac::PointSet::geodesic(pts);
    }
    default:
      throw std::invalid_argument("unknown metric code " + std::to_string(metric));
  }
}

template <class F>
int guarded(F&& body) {
  try {
    g_last_error.clear();
    return static_cast<int>(body());
  } catch (const std::invalid_argument& e) {
    return fail(GEOHAC_EINVAL, e.what());
  } catch (const std::exception& e) {
    return fail(GEOHAC_EINTERNAL, e.what());
  } catch (...) {
    return fail(GEOHAC_EINTERNAL, "unknown error");
  }
}

}  // namespace

extern "C" int geohac_fit(size_t n, const double* coords, int metric, double h_max,
                          double threshold, int linkage, uint32_t* labels_out,
                          size_t* n_components, size_t* n_clusters) {
  return guarded([&]() -> int {
    if (linkage < GEOHAC_LINKAGE_SINGLE || linkage > GEOHAC_LINKAGE_WARD) {
      return fail(GEOHAC_EINVAL, "unknown linkage code " + std::to_string(linkage));
    }
    if (labels_out == nullptr) return fail(GEOHAC_EINVAL, "labels_out is NULL");
    const geohac::PointSet ps = make_points(n, coords, metric);
    const double heights[] = {threshold};
    const auto res = geohac::sparse_geo_hclust(
        ps, h_max, geohac::kAllLinkages[linkage], heights);
    const auto& labels = res.cuts.front().labels;
    std::copy(labels.begin(), labels.end(), labels_out);
    if (n_components) *n_components = res.components;
    if (n_clusters) *n_clusters = geohac::count_clusters(labels);
    return static_cast<int>(GEOHAC_OK);
  });
}

extern "C" int geohac_connectivity(size_t n, const double* coords, int metric,
                                   double h_max, uint64_t* row_offsets,
                                   uint32_t* col_indices, size_t capacity,
                                   size_t* nnz) {
  return guarded([&]() -> int {
    if (nnz == nullptr) return fail(GEOHAC_EINVAL, "nnz is NULL");
    const geohac::PointSet ps = make_points(n, coords, metric);
    const auto g = geohac::build_distance_graph(ps, h_max);
    *nnz = g.col_indices.size();
    if (col_indices == nullptr || capacity < g.col_indices.size()) {
      return fail(GEOHAC_ESIZE, "column buffer holds " + std::to_string(capacity) +
                                    " entries, " + std::to_string(*nnz) + " needed");
    }
    if (row_offsets == nullptr) return fail(GEOHAC_EINVAL, "row_offsets is NULL");
    std::copy(g.row_offsets.begin(), g.row_offsets.end(), row_offsets);
    std::copy(g.col_indices.begin(), g.col_indices.end(), col_indices);
    return static_cast<int>(GEOHAC_OK);
  });
}

extern "C" const char* geohac_last_error(void) { return g_last_error.c_str(); }
