#pragma once

// Brute-force reference implementations used only by the tests. They share no
// code with the library beyond PointSet::distance().

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <utility>
#include <vector>

#include "geohac/geo_metric.hpp"
#include "geohac/linkage.hpp"
#include "geohac/spatial_index.hpp"

namespace oracle {

using geohac::Linkage;
using geohac::PointSet;

inline PointSet random_planar(std::size_t n, double side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = u(rng);
    ys[i] = u(rng);
  }
  return PointSet::planar(std::move(xs), std::move(ys));
}

inline PointSet random_geo(std::size_t n, double lat0, double lat1, double lon0,
                           double lon1, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ulat(lat0, lat1), ulon(lon0, lon1);
  std::vector<geohac::GeoPoint> pts(n);
  for (auto& p : pts) {
    p.lat = ulat(rng);
    p.lon = ulon(rng);
    if (p.lon > 180.0) p.lon -= 360.0;
  }
  return PointSet::geodesic(pts);
}

inline std::vector<geohac::PointPair> pairs(const PointSet& ps, double h) {
  std::vector<geohac::PointPair> out;
  for (std::uint32_t i = 0; i < ps.size(); ++i)
    for (std::uint32_t j = i + 1; j < ps.size(); ++j) {
      const double d = ps.distance(i, j);
      if (d <= h) out.push_back({i, j, d});
    }
  return out;
}

/// Component label per node, components numbered by smallest member (BFS).
inline std::vector<std::uint32_t> bfs_components(
    std::size_t n, const std::vector<geohac::PointPair>& edges) {
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& e : edges) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> comp(n, kNone);
  std::uint32_t next = 0;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (comp[s] != kNone) continue;
    std::queue<std::uint32_t> q;
    q.push(s);
    comp[s] = next;
    while (!q.empty()) {
      const auto v = q.front();
      q.pop();
      for (auto w : adj[v])
        if (comp[w] == kNone) {
          comp[w] = next;
          q.push(w);
        }
    }
    ++next;
  }
  return comp;
}

/// Total weight of a minimum spanning forest by O(n^2) Prim over the edge set.
inline double prim_forest_weight(std::size_t n,
                                 const std::vector<geohac::PointPair>& edges) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> w(n * n, inf);
  for (const auto& e : edges) {
    w[e.i * n + e.j] = std::min(w[e.i * n + e.j], e.distance);
    w[e.j * n + e.i] = w[e.i * n + e.j];
  }
  std::vector<bool> in(n, false);
  std::vector<double> key(n, inf);
  double total = 0;
  for (std::size_t done = 0; done < n; ++done) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!in[v] && (best == n || key[v] < key[best])) best = v;
    in[best] = true;
    if (key[best] < inf) total += key[best];
    for (std::size_t v = 0; v < n; ++v)
      if (!in[v] && w[best * n + v] < key[v]) key[v] = w[best * n + v];
  }
  return total;
}

/// Naive agglomeration: every step rescans all cluster pairs, computing the
/// linkage distance from its definition over the original dissimilarities.
/// Ward uses the energy form
///   d^2(A,B) = 2 nA nB/(nA+nB) * [S_AB/(nA nB) - S_AA/(2 nA^2) - S_BB/(2 nB^2)]
/// with S the sums of squared dissimilarities, valid for any dissimilarity.
class NaiveHac {
 public:
  NaiveHac(const PointSet& ps, Linkage method) : n_(ps.size()), method_(method) {
    d_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) d_[i * n_ + j] = i == j ? 0.0 : ps.distance(i, j);
    run();
  }

  /// Merge heights in merge order.
  const std::vector<double>& heights() const { return heights_; }

  /// Canonical labels after all merges with height <= h.
  std::vector<std::uint32_t> cut(double h) const {
    std::vector<std::uint32_t> parent(n_);
    std::iota(parent.begin(), parent.end(), 0u);
    const auto find = [&](std::uint32_t v) {
      while (parent[v] != v) v = parent[v];
      return v;
    };
    for (std::size_t t = 0; t < heights_.size() && heights_[t] <= h; ++t) {
      parent[find(joins_[t].second)] = find(joins_[t].first);
    }
    std::vector<std::uint32_t> raw(n_), out(n_);
    std::vector<std::int64_t> map(n_, -1);
    std::uint32_t next = 0;
    for (std::uint32_t i = 0; i < n_; ++i) {
      const auto r = find(i);
      if (map[r] < 0) map[r] = next++;
      out[i] = static_cast<std::uint32_t>(map[r]);
    }
    return out;
  }

 private:
  struct Cluster {
    std::vector<std::uint32_t> members;
    double self_sq = 0;  // sum of squared dissimilarities over ordered pairs
  };

  /// Linkage distance plus the cross sum of squares used to update self_sq.
  std::pair<double, double> linkage(const Cluster& a, const Cluster& b) const {
    double mn = std::numeric_limits<double>::infinity(), mx = 0, sum = 0, sq = 0;
    for (auto i : a.members)
      for (auto j : b.members) {
        const double v = d_[i * n_ + j];
        mn = std::min(mn, v);
        mx = std::max(mx, v);
        sum += v;
        sq += v * v;
      }
    const double na = static_cast<double>(a.members.size());
    const double nb = static_cast<double>(b.members.size());
    switch (method_) {
      case Linkage::Single: return {mn, sq};
      case Linkage::Complete: return {mx, sq};
      case Linkage::Average: return {sum / (na * nb), sq};
      case Linkage::Ward: {
        const double v = 2 * na * nb / (na + nb) *
                         (sq / (na * nb) - a.self_sq / (2 * na * na) -
                          b.self_sq / (2 * nb * nb));
        return {std::sqrt(std::max(v, 0.0)), sq};
      }
    }
    return {mn, sq};
  }

  void run() {
    std::vector<Cluster> clusters(n_);
    for (std::uint32_t i = 0; i < n_; ++i) clusters[i].members = {i};
    while (clusters.size() > 1) {
      double best = std::numeric_limits<double>::infinity(), best_sq = 0;
      std::size_t ba = 0, bb = 1;
      for (std::size_t a = 0; a < clusters.size(); ++a)
        for (std::size_t b = a + 1; b < clusters.size(); ++b) {
          const auto [v, sq] = linkage(clusters[a], clusters[b]);
          if (v < best) {
            best = v;
            best_sq = sq;
            ba = a;
            bb = b;
          }
        }
      heights_.push_back(best);
      joins_.emplace_back(clusters[ba].members.front(), clusters[bb].members.front());
      Cluster& into = clusters[ba];
      into.self_sq += clusters[bb].self_sq + 2 * best_sq;
      into.members.insert(into.members.end(), clusters[bb].members.begin(),
                          clusters[bb].members.end());
      clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bb));
    }
  }

  std::size_t n_;
  Linkage method_;
  std::vector<double> d_;
  std::vector<double> heights_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> joins_;
};

/// Cut heights strictly between consecutive distinct merge heights, plus
/// one below the first and one above the last, so no cut sits on a merge.
inline std::vector<double> safe_cuts(std::vector<double> heights, double cap) {
  std::sort(heights.begin(), heights.end());
  std::vector<double> cuts;
  if (heights.empty()) return {0.0};
  if (heights.front() > 0) cuts.push_back(heights.front() / 2);
  for (std::size_t t = 0; t + 1 < heights.size(); ++t) {
    const double lo = heights[t], hi = heights[t + 1];
    if (hi - lo > 1e-9 * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= cap) cuts.push_back(mid);
    }
  }
  if (heights.back() < cap) cuts.push_back(std::min(cap, heights.back() * 1.5 + 1e-6));
  return cuts;
}

/// Pair-counting adjusted Rand index (Hubert and Arabie, 2x2 form).
inline double pair_count_ari(const std::vector<std::uint32_t>& a,
                             const std::vector<std::uint32_t>& b) {
  long double both = 0, only_a = 0, only_b = 0, neither = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const bool sa = a[i] == a[j], sb = b[i] == b[j];
      if (sa && sb) ++both;
      else if (sa) ++only_a;
      else if (sb) ++only_b;
      else ++neither;
    }
  const long double den = (both + only_a) * (only_a + neither) +
                          (both + only_b) * (only_b + neither);
  if (den == 0) return 1.0;
  return static_cast<double>(2 * (both * neither - only_a * only_b) / den);
}

/// True if every cluster of `fine` lies inside one cluster of `coarse`.
inline bool is_coarsening(const std::vector<std::uint32_t>& fine,
                          const std::vector<std::uint32_t>& coarse) {
  std::vector<std::int64_t> target;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    if (fine[i] >= target.size()) target.resize(fine[i] + 1, -1);
    if (target[fine[i]] < 0) target[fine[i]] = coarse[i];
    else if (target[fine[i]] != coarse[i]) return false;
  }
  return true;
}

}  // namespace oracle
