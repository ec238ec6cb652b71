#include <cmath>

#include "geohac/kernels.hpp"

namespace geohac::kernels::scalar {

void planar_distances(double qx, double qy, const double* xs, const double* ys,
                      std::size_t n, double* out) {
  for (std::size_t j = 0; j < n; ++j) {
    const double dx = qx - xs[j];
    const double dy = qy - ys[j];
    out[j] = std::sqrt(dx * dx + dy * dy);
  }
}

void chord_sq(double qx, double qy, double qz, const double* xs,
              const double* ys, const double* zs, std::size_t n, double* out) {
  for (std::size_t j = 0; j < n; ++j) {
    const double dx = qx - xs[j];
    const double dy = qy - ys[j];
    const double dz = qz - zs[j];
    out[j] = dx * dx + dy * dy + dz * dz;
  }
}

std::size_t argmin(const double* v, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (v[j] < v[best]) best = j;
  }
  return best;
}

void lance_williams_row(Linkage method, const double* row_a, double* row_b,
                        const double* sizes, std::size_t n, double n_a,
                        double n_b, double d_ab) {
  for (std::size_t j = 0; j < n; ++j) {
    row_b[j] = lance_williams_step(method, row_a[j], row_b[j], n_a, n_b,
                                   sizes[j], d_ab);
  }
}

}  // namespace geohac::kernels::scalar
