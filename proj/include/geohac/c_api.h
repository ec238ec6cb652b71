/* Flat C entry points for foreign-function callers. */
#ifndef GEOHAC_C_API_H
#define GEOHAC_C_API_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  GEOHAC_OK = 0,
  GEOHAC_EINVAL = 1,    /* bad argument; see geohac_last_error() */
  GEOHAC_ESIZE = 2,     /* output buffer too small; required size reported */
  GEOHAC_EINTERNAL = 3
};

enum { GEOHAC_METRIC_EUCLIDEAN = 0, GEOHAC_METRIC_HAVERSINE = 1 };

enum {
  GEOHAC_LINKAGE_SINGLE = 0,
  GEOHAC_LINKAGE_COMPLETE = 1,
  GEOHAC_LINKAGE_AVERAGE = 2,
  GEOHAC_LINKAGE_WARD = 3
};

/* coords: n rows of 2 doubles, (x, y) in km or (lat, lon) in degrees.
 * labels_out: n entries, canonical labels at height `threshold`.
 * n_components and n_clusters may be NULL. */
int geohac_fit(size_t n, const double* coords, int metric, double h_max,
               double threshold, int linkage, uint32_t* labels_out,
               size_t* n_components, size_t* n_clusters);

/* Binary adjacency of the distance graph in row-offset/column-index form.
 * row_offsets has n + 1 entries. *nnz receives the number of stored entries
 * (twice the edge count); if col_indices is NULL or capacity < *nnz, nothing
 * else is written and GEOHAC_ESIZE is returned. */
int geohac_connectivity(size_t n, const double* coords, int metric, double h_max,
                        uint64_t* row_offsets, uint32_t* col_indices,
                        size_t capacity, size_t* nnz);

/* Message for the last failing call on this thread, "" if none. */
const char* geohac_last_error(void);

#ifdef __cplusplus
}
#endif

#endif
