#pragma once

#include <cstddef>

#include "geohac/distance_graph.hpp"
#include "geohac/linkage.hpp"

namespace geohac {

/// Distance from cluster i to the union of clusters a and b, given
/// d(a,i), d(b,i), d(a,b) and the three cluster sizes.
///
///   single    min(d_ai, d_bi)
///   complete  max(d_ai, d_bi)
///   average   (n_a d_ai + n_b d_bi) / (n_a + n_b)
///   ward      sqrt(((n_a+n_i) d_ai^2 + (n_b+n_i) d_bi^2 - n_i d_ab^2)
///                  / (n_a + n_b + n_i))
///
/// Throws std::invalid_argument for negative distances, sizes below one, or
/// an out-of-range method value.
double lance_williams_update(Linkage method, double d_ai, double d_bi,
                             double d_ab, double n_a, double n_b, double n_i);

/// Exact agglomerative clustering of `count` items from their condensed
/// distances using the nearest-neighbour chain algorithm, O(count^2) time.
/// The array is consumed. Records come out sorted by height (stable) and
/// relabelled so that children precede parents. Ward works on squared
/// distances internally and reports heights in distance units.
///
/// Ties: the chain keeps its predecessor unless another cluster is strictly
/// closer; otherwise the lowest index wins. Merged clusters keep the smaller
/// slot, so a cluster's slot is its smallest member.
LinkageMatrix nn_chain_linkage(CondensedDistances d, std::size_t count,
                               Linkage method);

}  // namespace geohac
