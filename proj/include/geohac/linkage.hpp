#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string_view>

#include "geohac/memory.hpp"

namespace geohac {

enum class Linkage { Single, Complete, Average, Ward };

inline constexpr Linkage kAllLinkages[] = {Linkage::Single, Linkage::Complete,
                                           Linkage::Average, Linkage::Ward};

const char* linkage_name(Linkage method) noexcept;
std::optional<Linkage> parse_linkage(std::string_view name) noexcept;

/// One agglomeration step. Ids below the base count are input points; id
/// base + t is the cluster created by record t.
struct Merge {
  std::uint32_t left;
  std::uint32_t right;
  double height;
  std::uint32_t size;

  bool operator==(const Merge&) const = default;
};

/// Dendrogram over `base_count` points with heights in km (Ward heights are
/// reported in distance units, i.e. after the square root).
struct LinkageMatrix {
  std::size_t base_count = 0;
  memory::tracked_vector<Merge> records;
  /// Cuts above this height are not guaranteed exact and are rejected.
  double valid_up_to = std::numeric_limits<double>::infinity();
};

/// Four columns per record: `left right height size`.
void write_linkage(std::ostream& os, const LinkageMatrix& z);

}  // namespace geohac
