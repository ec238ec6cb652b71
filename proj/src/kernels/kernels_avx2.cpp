// Compiled with -mavx2 only; never called unless the CPU reports AVX2.
// No FMA: every lane must round exactly like the scalar reference.

#include <immintrin.h>

#include <cmath>

#include "geohac/kernels.hpp"

namespace geohac::kernels::avx2 {

void planar_distances(double qx, double qy, const double* xs, const double* ys,
                      std::size_t n, double* out) {
  const __m256d vqx = _mm256_set1_pd(qx);
  const __m256d vqy = _mm256_set1_pd(qy);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dx = _mm256_sub_pd(vqx, _mm256_loadu_pd(xs + j));
    const __m256d dy = _mm256_sub_pd(vqy, _mm256_loadu_pd(ys + j));
    const __m256d s =
        _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    _mm256_storeu_pd(out + j, _mm256_sqrt_pd(s));
  }
  scalar::planar_distances(qx, qy, xs + j, ys + j, n - j, out + j);
}

void chord_sq(double qx, double qy, double qz, const double* xs,
              const double* ys, const double* zs, std::size_t n, double* out) {
  const __m256d vqx = _mm256_set1_pd(qx);
  const __m256d vqy = _mm256_set1_pd(qy);
  const __m256d vqz = _mm256_set1_pd(qz);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dx = _mm256_sub_pd(vqx, _mm256_loadu_pd(xs + j));
    const __m256d dy = _mm256_sub_pd(vqy, _mm256_loadu_pd(ys + j));
    const __m256d dz = _mm256_sub_pd(vqz, _mm256_loadu_pd(zs + j));
    __m256d s = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    s = _mm256_add_pd(s, _mm256_mul_pd(dz, dz));
    _mm256_storeu_pd(out + j, s);
  }
  scalar::chord_sq(qx, qy, qz, xs + j, ys + j, zs + j, n - j, out + j);
}

std::size_t argmin(const double* v, std::size_t n) {
  if (n < 8) return scalar::argmin(v, n);
  // Pass 1: minimum value. Pass 2: first lane holding it.
  __m256d vmin = _mm256_loadu_pd(v);
  std::size_t j = 4;
  for (; j + 4 <= n; j += 4) vmin = _mm256_min_pd(vmin, _mm256_loadu_pd(v + j));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vmin);
  double m = lanes[0];
  for (int k = 1; k < 4; ++k)
    if (lanes[k] < m) m = lanes[k];
  for (; j < n; ++j)
    if (v[j] < m) m = v[j];

  const __m256d target = _mm256_set1_pd(m);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const int mask = _mm256_movemask_pd(
        _mm256_cmp_pd(_mm256_loadu_pd(v + i), target, _CMP_EQ_OQ));
    if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(mask));
  }
  for (; i < n; ++i)
    if (v[i] == m) return i;
  return 0;
}

void lance_williams_row(Linkage method, const double* row_a, double* row_b,
                        const double* sizes, std::size_t n, double n_a,
                        double n_b, double d_ab) {
  std::size_t j = 0;
  switch (method) {
    case Linkage::Single:
      for (; j + 4 <= n; j += 4) {
        const __m256d a = _mm256_loadu_pd(row_a + j);
        const __m256d b = _mm256_loadu_pd(row_b + j);
        _mm256_storeu_pd(row_b + j, _mm256_min_pd(b, a));
      }
      break;
    case Linkage::Complete:
      for (; j + 4 <= n; j += 4) {
        const __m256d a = _mm256_loadu_pd(row_a + j);
        const __m256d b = _mm256_loadu_pd(row_b + j);
        _mm256_storeu_pd(row_b + j, _mm256_max_pd(b, a));
      }
      break;
    case Linkage::Average: {
      const __m256d va = _mm256_set1_pd(n_a);
      const __m256d vb = _mm256_set1_pd(n_b);
      const __m256d denom = _mm256_set1_pd(n_a + n_b);
      for (; j + 4 <= n; j += 4) {
        const __m256d a = _mm256_loadu_pd(row_a + j);
        const __m256d b = _mm256_loadu_pd(row_b + j);
        const __m256d num =
            _mm256_add_pd(_mm256_mul_pd(va, a), _mm256_mul_pd(vb, b));
        _mm256_storeu_pd(row_b + j, _mm256_div_pd(num, denom));
      }
      break;
    }
    case Linkage::Ward: {
      const __m256d va = _mm256_set1_pd(n_a);
      const __m256d vb = _mm256_set1_pd(n_b);
      const __m256d vab = _mm256_set1_pd(n_a + n_b);
      const __m256d vd = _mm256_set1_pd(d_ab);
      for (; j + 4 <= n; j += 4) {
        const __m256d a = _mm256_loadu_pd(row_a + j);
        const __m256d b = _mm256_loadu_pd(row_b + j);
        const __m256d ni = _mm256_loadu_pd(sizes + j);
        __m256d num = _mm256_add_pd(_mm256_mul_pd(_mm256_add_pd(va, ni), a),
                                    _mm256_mul_pd(_mm256_add_pd(vb, ni), b));
        num = _mm256_sub_pd(num, _mm256_mul_pd(ni, vd));
        _mm256_storeu_pd(row_b + j,
                         _mm256_div_pd(num, _mm256_add_pd(vab, ni)));
      }
      break;
    }
  }
  scalar::lance_williams_row(method, row_a + j, row_b + j, sizes + j, n - j,
                             n_a, n_b, d_ab);
}

}  // namespace geohac::kernels::avx2

namespace geohac::kernels {

extern const KernelTable kAvx2Table;
const KernelTable kAvx2Table{Isa::Avx2, avx2::planar_distances, avx2::chord_sq,
                             avx2::argmin, avx2::lance_williams_row};

}  // namespace geohac::kernels
