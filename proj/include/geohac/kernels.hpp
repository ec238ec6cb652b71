#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and
// optional vector versions; the vector versions perform the same IEEE
// operations in the same order, so their results are bit-identical to the
// scalar reference. The active table is chosen once at startup from the
// host CPU and can be overridden for testing.

#include <cstddef>
#include <optional>
#include <string_view>

#include "geohac/linkage.hpp"

namespace geohac::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;

  /// out[j] = sqrt((qx - xs[j])^2 + (qy - ys[j])^2)
  void (*planar_distances)(double qx, double qy, const double* xs,
                           const double* ys, std::size_t n, double* out);

  /// out[j] = squared 3-D distance from q to (xs[j], ys[j], zs[j]).
  void (*chord_sq)(double qx, double qy, double qz, const double* xs,
                   const double* ys, const double* zs, std::size_t n,
                   double* out);

  /// Index of the first minimum of v[0..n). n must be > 0.
  std::size_t (*argmin)(const double* v, std::size_t n);

  /// Lance-Williams update of a whole row of dissimilarities after merging
  /// clusters a and b: out[j] = f(row_a[j], out[j]). `sizes` holds the
  /// cluster size of each j. Ward operates on squared dissimilarities.
  void (*lance_williams_row)(Linkage method, const double* row_a,
                             double* row_b, const double* sizes,
                             std::size_t n, double n_a, double n_b,
                             double d_ab);
};

const KernelTable& scalar_table() noexcept;
/// Null when the ISA was not compiled in or the CPU lacks it.
const KernelTable* table_for(Isa isa) noexcept;

const KernelTable& active() noexcept;
Isa active_isa() noexcept;

/// Select the table used by active(); returns false if unsupported.
bool select(Isa isa) noexcept;
/// Restore the startup choice (best supported ISA).
void select_best() noexcept;

const char* isa_name(Isa isa) noexcept;
std::optional<Isa> parse_isa(std::string_view name) noexcept;

/// Element-wise Lance-Williams step shared by the scalar row kernel and the
/// strided parts of the NN-chain update. Ward values are squared.
inline double lance_williams_step(Linkage method, double d_ai, double d_bi,
                                  double n_a, double n_b, double n_i,
                                  double d_ab) noexcept {
  switch (method) {
    case Linkage::Single:
      return d_bi < d_ai ? d_bi : d_ai;
    case Linkage::Complete:
      return d_bi > d_ai ? d_bi : d_ai;
    case Linkage::Average:
      return (n_a * d_ai + n_b * d_bi) / (n_a + n_b);
    case Linkage::Ward:
      return ((n_a + n_i) * d_ai + (n_b + n_i) * d_bi - n_i * d_ab) /
             (n_a + n_b + n_i);
  }
  return d_ai;
}

namespace scalar {
void planar_distances(double qx, double qy, const double* xs, const double* ys,
                      std::size_t n, double* out);
void chord_sq(double qx, double qy, double qz, const double* xs,
              const double* ys, const double* zs, std::size_t n, double* out);
std::size_t argmin(const double* v, std::size_t n);
void lance_williams_row(Linkage method, const double* row_a, double* row_b,
                        const double* sizes, std::size_t n, double n_a,
                        double n_b, double d_ab);
}  // namespace scalar

}  // namespace geohac::kernels
