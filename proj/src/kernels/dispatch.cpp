#include <atomic>

#include "geohac/kernels.hpp"

namespace geohac::kernels {

#if GEOHAC_HAVE_AVX2
extern const KernelTable kAvx2Table;
#endif

namespace {

const KernelTable kScalarTable{Isa::Scalar, scalar::planar_distances,
                               scalar::chord_sq, scalar::argmin,
                               scalar::lance_williams_row};

bool cpu_has_avx2() noexcept {
#if GEOHAC_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* best_table() noexcept {
  if (const KernelTable* t = table_for(Isa::Avx2)) return t;
  return &kScalarTable;
}

std::atomic<const KernelTable*>& active_slot() noexcept {
  static std::atomic<const KernelTable*> slot{best_table()};
  return slot;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalarTable; }

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return &kScalarTable;
    case Isa::Avx2:
#if GEOHAC_HAVE_AVX2
      if (cpu_has_avx2()) return &kAvx2Table;
#endif
      return nullptr;
  }
  return nullptr;
}

const KernelTable& active() noexcept {
  return *active_slot().load(std::memory_order_acquire);
}

Isa active_isa() noexcept { return active().isa; }

bool select(Isa isa) noexcept {
  const KernelTable* t = table_for(isa);
  if (t == nullptr) return false;
  active_slot().store(t, std::memory_order_release);
  return true;
}

void select_best() noexcept {
  active_slot().store(best_table(), std::memory_order_release);
}

const char* isa_name(Isa isa) noexcept {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

std::optional<Isa> parse_isa(std::string_view name) noexcept {
  if (name == "scalar") return Isa::Scalar;
  if (name == "avx2") return Isa::Avx2;
  return std::nullopt;
}

}  // namespace geohac::kernels
