#include "geohac/dense_linkage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "geohac/kernels.hpp"

namespace geohac {

const char* linkage_name(Linkage method) noexcept {
  switch (method) {
    case Linkage::Single: return "single";
    case Linkage::Complete: return "complete";
    case Linkage::Average: return "average";
    case Linkage::Ward: return "ward";
  }
  return "unknown";
}

std::optional<Linkage> parse_linkage(std::string_view name) noexcept {
  for (Linkage m : kAllLinkages)
    if (name == linkage_name(m)) return m;
  return std::nullopt;
}

void write_linkage(std::ostream& os, const LinkageMatrix& z) {
  const auto old = os.precision(17);
  for (const Merge& r : z.records) {
    os << r.left << ' ' << r.right << ' ' << r.height << ' ' << r.size << '\n';
  }
  os.precision(old);
}

double lance_williams_update(Linkage method, double d_ai, double d_bi,
                             double d_ab, double n_a, double n_b, double n_i) {
  if (!(d_ai >= 0.0) || !(d_bi >= 0.0) || !(d_ab >= 0.0)) {
    throw std::invalid_argument("lance_williams_update: negative distance");
  }
  if (!(n_a >= 1.0) || !(n_b >= 1.0) || !(n_i >= 1.0)) {
    throw std::invalid_argument("lance_williams_update: cluster size below 1");
  }
  switch (method) {
    case Linkage::Single:
    case Linkage::Complete:
    case Linkage::Average:
      return kernels::lance_williams_step(method, d_ai, d_bi, n_a, n_b, n_i, d_ab);
    case Linkage::Ward: {
      const double sq = kernels::lance_williams_step(
          method, d_ai * d_ai, d_bi * d_bi, n_a, n_b, n_i, d_ab * d_ab);
      return std::sqrt(std::max(sq, 0.0));
    }
  }
  throw std::invalid_argument("lance_williams_update: unknown linkage method " +
                              std::to_string(static_cast<int>(method)));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RawMerge {
  std::uint32_t a;
  std::uint32_t b;
  double height;
};

class ChainState {
 public:
  ChainState(CondensedDistances& d, std::size_t n) : d_(d), n_(n) {}

  double& at(std::size_t i, std::size_t j) noexcept {
    return i < j ? d_[condensed_index(n_, i, j)] : d_[condensed_index(n_, j, i)];
  }
  double* row(std::size_t i) noexcept {
    return d_.data() + condensed_index(n_, i, i + 1);
  }

  /// Nearest active cluster to x. Keeps `prev` unless something is strictly
  /// closer; among strictly closer candidates the lowest index wins.
  std::size_t nearest(std::size_t x, std::size_t prev, bool has_prev,
                      const kernels::KernelTable& k) noexcept {
    std::size_t best = n_;
    double best_d = kInf;
    for (std::size_t i = 0; i < x; ++i) {
      const double v = d_[condensed_index(n_, i, x)];
      if (v < best_d) {
        best_d = v;
        best = i;
      }
    }
    if (x + 1 < n_) {
      const double* r = row(x);
      const std::size_t j = k.argmin(r, n_ - x - 1);
      if (r[j] < best_d) {
        best_d = r[j];
        best = x + 1 + j;
      }
    }
    if (has_prev && !(best_d < at(x, prev))) return prev;
    return best;
  }

 private:
  CondensedDistances& d_;
  std::size_t n_;
};

}  // namespace

LinkageMatrix nn_chain_linkage(CondensedDistances d, std::size_t count,
                               Linkage method) {
  if (count < 2) {
    throw std::invalid_argument("nn_chain_linkage: need at least 2 items, got " +
                                std::to_string(count));
  }
  const std::size_t n = count;
  if (d.size() != n * (n - 1) / 2) {
    throw std::invalid_argument("nn_chain_linkage: condensed array has " +
                                std::to_string(d.size()) + " entries, expected " +
                                std::to_string(n * (n - 1) / 2));
  }
  for (double v : d) {
    if (!(v >= 0.0) || std::isinf(v)) {
      throw std::invalid_argument(
          "nn_chain_linkage: distances must be finite and non-negative");
    }
  }
  if (static_cast<int>(method) < 0 || static_cast<int>(method) > 3) {
    throw std::invalid_argument("nn_chain_linkage: unknown linkage method");
  }
  if (method == Linkage::Ward)
    for (double& v : d) v *= v;

  const kernels::KernelTable& k = kernels::active();
  ChainState st(d, n);
  memory::tracked_vector<double> sizes(n, 1.0);
  memory::tracked_vector<std::uint32_t> chain;
  chain.reserve(n);
  memory::tracked_vector<RawMerge> raw;
  raw.reserve(n - 1);

  for (std::size_t step = 0; step + 1 < n; ++step) {
    // Slot 0 is never retired, so it always starts a fresh chain.
    if (chain.empty()) chain.push_back(0);
    std::size_t x, y;
    for (;;) {
      x = chain.back();
      const bool has_prev = chain.size() >= 2;
      const std::size_t prev = has_prev ? chain[chain.size() - 2] : 0;
      y = st.nearest(x, prev, has_prev, k);
      if (has_prev && y == prev) break;
      chain.push_back(static_cast<std::uint32_t>(y));
    }
    chain.pop_back();
    chain.pop_back();

    const std::size_t lo = std::min(x, y);
    const std::size_t hi = std::max(x, y);
    const double d_ab = st.at(lo, hi);
    raw.push_back({static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi),
                   method == Linkage::Ward ? std::sqrt(d_ab) : d_ab});

    // The merged cluster lives on in slot lo.
    const double n_hi = sizes[hi];
    const double n_lo = sizes[lo];
    for (std::size_t j = 0; j < lo; ++j) {
      double& target = st.at(j, lo);
      target = kernels::lance_williams_step(method, st.at(j, hi), target, n_hi,
                                            n_lo, sizes[j], d_ab);
    }
    for (std::size_t j = lo + 1; j < hi; ++j) {
      double& target = st.at(lo, j);
      target = kernels::lance_williams_step(method, st.at(j, hi), target, n_hi,
                                            n_lo, sizes[j], d_ab);
    }
    if (hi + 1 < n) {
      k.lance_williams_row(method, st.row(hi), st.row(lo) + (hi - lo),
                           sizes.data() + hi + 1, n - hi - 1, n_hi, n_lo, d_ab);
    }
    sizes[lo] = n_lo + n_hi;

    // Retire slot hi.
    for (std::size_t j = 0; j < hi; ++j) st.at(j, hi) = kInf;
    if (hi + 1 < n) std::fill_n(st.row(hi), n - hi - 1, kInf);
  }
  d.clear();
  d.shrink_to_fit();

  std::stable_sort(raw.begin(), raw.end(), [](const RawMerge& a, const RawMerge& b) {
    return a.height < b.height;
  });

  LinkageMatrix z;
  z.base_count = n;
  z.records.reserve(n - 1);
  memory::tracked_vector<std::uint32_t> parent(n), cluster(n), size(n, 1);
  std::iota(parent.begin(), parent.end(), 0u);
  std::iota(cluster.begin(), cluster.end(), 0u);
  const auto find = [&parent](std::uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const RawMerge& m : raw) {
    std::uint32_t ra = find(m.a);
    std::uint32_t rb = find(m.b);
    const std::uint32_t ca = cluster[ra];
    const std::uint32_t cb = cluster[rb];
    const std::uint32_t merged = size[ra] + size[rb];
    if (size[ra] < size[rb]) std::swap(ra, rb);
    parent[rb] = ra;
    size[ra] = merged;
    z.records.push_back({std::min(ca, cb), std::max(ca, cb), m.height, merged});
    cluster[ra] = static_cast<std::uint32_t>(n + z.records.size() - 1);
  }
  return z;
}

}  // namespace geohac
