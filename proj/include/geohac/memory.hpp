#pragma once

// Allocation accounting for the clustering phase. Containers that hold HAC
// working storage use CountingAllocator so that peak usage and the largest
// single request can be observed without an external heap tracer. Numbers
// are approximate (container overhead is not counted) and meant for
// comparing runs against each other.

#include <cstddef>
#include <memory>
#include <new>
#include <vector>

namespace geohac::memory {

void record_allocate(std::size_t bytes) noexcept;
void record_deallocate(std::size_t bytes) noexcept;

std::size_t current_bytes() noexcept;
std::size_t peak_bytes() noexcept;
std::size_t largest_allocation() noexcept;

/// Measures peak and largest-request sizes over its lifetime, relative to the
/// bytes already live when it was opened. Scopes do not nest meaningfully.
class PeakScope {
 public:
  PeakScope() noexcept;
  PeakScope(const PeakScope&) = delete;
  PeakScope& operator=(const PeakScope&) = delete;

  std::size_t peak() const noexcept;
  std::size_t largest() const noexcept;

 private:
  std::size_t baseline_;
};

template <class T>
struct CountingAllocator {
  using value_type = T;

  CountingAllocator() noexcept = default;
  template <class U>
  CountingAllocator(const CountingAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    T* p = std::allocator<T>{}.allocate(n);
    record_allocate(n * sizeof(T));
    return p;
  }
  void deallocate(T* p, std::size_t n) noexcept {
    record_deallocate(n * sizeof(T));
    std::allocator<T>{}.deallocate(p, n);
  }

  template <class U>
  bool operator==(const CountingAllocator<U>&) const noexcept {
    return true;
  }
};

template <class T>
using tracked_vector = std::vector<T, CountingAllocator<T>>;

inline double to_mib(std::size_t bytes) noexcept {
  return static_cast<double>(bytes) / (1024.0 * 1024.0);
}

}  // namespace geohac::memory
