#include "geohac/memory.hpp"

#include <atomic>

namespace geohac::memory {

namespace {

std::atomic<std::size_t> g_current{0};
std::atomic<std::size_t> g_peak{0};
std::atomic<std::size_t> g_largest{0};

void raise_to(std::atomic<std::size_t>& slot, std::size_t value) noexcept {
  std::size_t prev = slot.load(std::memory_order_relaxed);
  while (prev < value &&
         !slot.compare_exchange_weak(prev, value, std::memory_order_relaxed)) {
  }
}

}  // namespace

void record_allocate(std::size_t bytes) noexcept {
  const std::size_t now =
      g_current.fetch_add(bytes, std::memory_order_relaxed) + bytes;
  raise_to(g_peak, now);
  raise_to(g_largest, bytes);
}

void record_deallocate(std::size_t bytes) noexcept {
  g_current.fetch_sub(bytes, std::memory_order_relaxed);
}

std::size_t current_bytes() noexcept {
  return g_current.load(std::memory_order_relaxed);
}
std::size_t peak_bytes() noexcept {
  return g_peak.load(std::memory_order_relaxed);
}
std::size_t largest_allocation() noexcept {
  return g_largest.load(std::memory_order_relaxed);
}

PeakScope::PeakScope() noexcept : baseline_(current_bytes()) {
  g_peak.store(baseline_, std::memory_order_relaxed);
  g_largest.store(0, std::memory_order_relaxed);
}

std::size_t PeakScope::peak() const noexcept {
  const std::size_t p = peak_bytes();
  return p > baseline_ ? p - baseline_ : 0;
}

std::size_t PeakScope::largest() const noexcept { return largest_allocation(); }

}  // namespace geohac::memory
