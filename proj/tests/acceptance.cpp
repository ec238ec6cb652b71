// Acceptance gate: runs each release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit status is nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "geohac/dense_linkage.hpp"
#include "geohac/distance_graph.hpp"
#include "geohac/io.hpp"
#include "geohac/pipeline.hpp"
#include "geohac/single_linkage_mst.hpp"
#include "geohac/synth_bench.hpp"
#include "oracles.hpp"

using namespace geohac;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Instance {
  Scenario scenario;
  std::size_t n;
  double h_max;
  PointSet points;
};

const std::vector<Instance>& sweep_instances() {
  static const std::vector<Instance> all = [] {
    std::vector<Instance> v;
    for (Scenario s : {Scenario::Tight, Scenario::Moderate, Scenario::Loose})
      for (std::size_t n : {1000u, 2000u, 5000u})
        for (double h : {10.0, 20.0, 50.0})
          v.push_back({s, n, h, generate_gaussian_mixture(ScenarioSpec::preset(s, n, h))});
    return v;
  }();
  return all;
}

std::string describe(const Instance& in) {
  std::ostringstream os;
  os << scenario_name(in.scenario) << " n=" << in.n << " h_max=" << in.h_max;
  return os.str();
}

std::vector<double> sweep_heights(double h_max) {
  return {0.2 * h_max, 0.5 * h_max, 1.0 * h_max};
}

// Shared by the exactness and MST criteria: sparse vs dense for every
// instance and method.
struct SweepRecord {
  const Instance* instance;
  Linkage method;
  std::vector<double> ari;
  std::vector<std::size_t> sparse_counts, dense_counts;
  std::size_t components;
};

const std::vector<SweepRecord>& sweep_records() {
  static const std::vector<SweepRecord> records = [] {
    std::vector<SweepRecord> out;
    for (const Instance& in : sweep_instances()) {
      const auto heights = sweep_heights(in.h_max);
      for (Linkage m : kAllLinkages) {
        SweepRecord r{&in, m, {}, {}, {}, 0};
        const auto sparse = sparse_geo_hclust(in.points, in.h_max, m, heights);
        const auto dense = dense_hclust_oracle(in.points, m, heights);
        r.components = sparse.components;
        for (std::size_t t = 0; t < heights.size(); ++t) {
          r.ari.push_back(adjusted_rand_index(sparse.cuts[t].labels, dense[t].labels));
          r.sparse_counts.push_back(count_clusters(sparse.cuts[t].labels));
          r.dense_counts.push_back(count_clusters(dense[t].labels));
        }
        out.push_back(std::move(r));
      }
    }
    return out;
  }();
  return records;
}

Outcome exactness_sweep() {
  Outcome o;
  std::size_t rows = 0, bad = 0;
  for (const auto& r : sweep_records()) {
    for (std::size_t t = 0; t < r.ari.size(); ++t) {
      ++rows;
      if (r.ari[t] != 1.0 || r.sparse_counts[t] != r.dense_counts[t]) {
        ++bad;
        if (o.pass) {
          o.detail = "first failure: " + describe(*r.instance) + " " +
                     linkage_name(r.method) + " ari=" + std::to_string(r.ari[t]);
        }
        o.pass = false;
      }
    }
  }
  const std::size_t configs = sweep_instances().size() * std::size(kAllLinkages);
  if (o.pass) {
    o.detail = std::to_string(configs) + " configurations, " + std::to_string(rows) +
               " cuts, ARI = 1 and equal counts everywhere";
  } else {
    o.detail += " (" + std::to_string(bad) + " of " + std::to_string(rows) + " cuts failed)";
  }
  return o;
}

Outcome mst_equivalence() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& r : sweep_records()) {
    if (r.method != Linkage::Single) continue;
    ++checked;
    for (std::size_t t = 0; t < r.ari.size(); ++t) {
      if (r.ari[t] != 1.0 || r.sparse_counts[t] != r.dense_counts[t]) {
        o.pass = false;
        o.detail = "partition mismatch on " + describe(*r.instance);
      }
    }
  }

  // One connected instance of 50,000 points through the MST path.
  const std::size_t n = 50'000;
  const PointSet ps = generate_constant_k(n, 50.0, 10.0, 42);
  const double heights[] = {2.0, 5.0, 10.0};
  const auto res = sparse_geo_hclust(ps, 10.0, Linkage::Single, heights);
  const double entries_bound = 8.0 * static_cast<double>(res.n + res.edges);  // c = 8
  const double peak_entries = static_cast<double>(res.hac_peak_bytes) / 8.0;
  const std::size_t square_bytes =
      res.largest_component * (res.largest_component - 1) / 2 * sizeof(double);
  const bool one_component = res.components == 1;
  const bool within = peak_entries <= entries_bound;
  const bool no_square = res.hac_largest_allocation < square_bytes;
  if (!one_component || !within || !no_square) o.pass = false;
  std::ostringstream os;
  if (!o.detail.empty()) os << o.detail << "; ";
  os << checked << " single-linkage sweep instances equal dense; n=" << n
     << " K=" << res.components << " m=" << res.edges << " peak=" << peak_entries
     << " entries (bound " << entries_bound << "), largest allocation "
     << res.hac_largest_allocation << " B vs c_k^2/2 buffer " << square_bytes << " B";
  o.detail = os.str();
  return o;
}

BenchReport constant_k_report() {
  static const BenchReport report = [] {
    BenchConfig cfg;
    cfg.sizes = {1'000, 10'000, 100'000};
    cfg.k_target = 50.0;
    cfg.h_max = 10.0;
    cfg.method = Linkage::Single;
    cfg.repetitions = 5;
    cfg.run_dense = false;
    return run_scaling_experiment(cfg);
  }();
  return report;
}

Outcome constant_k_scaling() {
  const auto report = constant_k_report();
  std::vector<double> ns, times, mem;
  std::ostringstream os;
  for (const auto& r : report.rows) {
    ns.push_back(static_cast<double>(r.n));
    times.push_back(r.total_s_median);
    mem.push_back(r.memory_entries);
    os << "n=" << r.n << " k=" << r.mean_degree << " t=" << r.total_s_median
       << "s mem=" << r.memory_entries << "; ";
  }
  const double ts = fit_loglog_slope(ns, times);
  const double ms = fit_loglog_slope(ns, mem);
  Outcome o;
  o.pass = ts >= 0.9 && ts <= 1.4 && ms >= 0.85 && ms <= 1.15;
  os << "time slope " << ts << " (need [0.9, 1.4]), memory slope " << ms
     << " (need [0.85, 1.15])";
  o.detail = os.str();
  return o;
}

Outcome speedup_identity() {
  Outcome o;
  std::size_t rows = 0;
  double worst = 0;
  const auto check_row = [&](const BenchRow& r, std::size_t m) {
    ++rows;
    const double n = static_cast<double>(r.n);
    const double expected = n * n / (2.0 * static_cast<double>(m));
    const double rel = std::abs(r.distance_ratio - expected) / expected;
    worst = std::max(worst, rel);
    if (rel > 4 * std::numeric_limits<double>::epsilon() || r.edges != m) o.pass = false;
  };
  for (Scenario s : {Scenario::Tight, Scenario::Moderate, Scenario::Loose}) {
    for (double h : {10.0, 20.0, 50.0}) {
      BenchConfig cfg;
      cfg.sizes = {1000, 2000, 5000};
      cfg.scenario = s;
      cfg.h_max = h;
      cfg.repetitions = 1;
      cfg.run_dense = false;
      for (const auto& r : run_scaling_experiment(cfg).rows) {
        // independent edge count by brute force
        const PointSet ps = generate_gaussian_mixture(ScenarioSpec::preset(s, r.n, h));
        check_row(r, oracle::pairs(ps, h).size());
      }
    }
  }
  for (const auto& r : constant_k_report().rows) {
    const PointSet ps = generate_constant_k(r.n, 50.0, 10.0, 42);
    check_row(r, build_distance_graph(ps, 10.0).edge_count());
  }
  o.detail = std::to_string(rows) + " bench rows, max relative deviation " +
             std::to_string(worst);
  return o;
}

Outcome structural_counts() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& r : sweep_records()) {
    if (r.method != Linkage::Single) continue;
    ++checked;
    if (r.sparse_counts.back() != r.components) {
      o.pass = false;
      o.detail = describe(*r.instance) + ": " + std::to_string(r.sparse_counts.back()) +
                 " clusters vs K=" + std::to_string(r.components) + "; ";
    }
  }
  for (const auto& r : constant_k_report().rows) {
    ++checked;
    if (r.cluster_counts.back() != r.components) {
      o.pass = false;
      o.detail += "constant-k n=" + std::to_string(r.n) + " mismatch; ";
    }
  }
  o.detail += std::to_string(checked) + " configurations, clusters at h_max = K";
  return o;
}

std::string label_file(const ClusteringResult& res) {
  std::ostringstream os;
  write_labels(os, res.cuts);
  return os.str();
}

Outcome determinism() {
  Outcome o;
  std::size_t runs = 0;
  for (const Instance& in : sweep_instances()) {
    if (in.n != 2000) continue;
    const auto heights = sweep_heights(in.h_max);
    for (Linkage m : kAllLinkages) {
      const auto base = sparse_geo_hclust(in.points, in.h_max, m, heights);
      const std::string golden = label_file(base);
      std::vector<ClusterOptions> variants(5);
      variants[1].parallel = true;
      variants[1].threads = 4;
      variants[2].component_order.resize(base.components);
      std::iota(variants[2].component_order.rbegin(), variants[2].component_order.rend(), 0u);
      variants[3].component_order.resize(base.components);
      std::iota(variants[3].component_order.begin(), variants[3].component_order.end(), 0u);
      std::shuffle(variants[3].component_order.begin(), variants[3].component_order.end(),
                   std::mt19937_64(in.n + static_cast<unsigned>(m)));
      variants[4] = variants[3];
      variants[4].parallel = true;
      for (const auto& opts : variants) {
        ++runs;
        // regenerate the input too: same seed must give the same file
        const PointSet again =
            generate_gaussian_mixture(ScenarioSpec::preset(in.scenario, in.n, in.h_max));
        if (label_file(sparse_geo_hclust(again, in.h_max, m, heights, opts)) != golden) {
          o.pass = false;
          o.detail = "label file differs on " + describe(in) + " " + linkage_name(m) + "; ";
        }
      }
    }
  }
  o.detail += std::to_string(runs) +
              " reruns (repeat, parallel, reversed, shuffled, shuffled+parallel) byte-identical";
  return o;
}

Outcome oracle_suites() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::size_t instances = 0, range_checks = 0, linkage_cuts = 0;
  std::string failures;
  const auto fail = [&](const std::string& what) {
    o.pass = false;
    if (failures.size() < 200) failures += what + "; ";
  };
  for (int t = 0; t < 120; ++t) {
    ++instances;
    const std::size_t n = 20 + rng() % 481;
    PointSet ps;
    double h;
    switch (t % 3) {
      case 0:
        ps = oracle::random_planar(n, 100.0, rng());
        h = 1.0 + 9.0 * (rng() % 1000) / 1000.0;
        break;
      case 1:
        ps = generate_gaussian_mixture(
            ScenarioSpec::preset(static_cast<Scenario>(rng() % 3), n, 10.0, rng(), 100.0));
        h = 10.0;
        break;
      default:
        ps = oracle::random_geo(n, 60.0, 61.0, 170.0, 190.0, rng());
        h = 5.0 + 40.0 * (rng() % 1000) / 1000.0;
        break;
    }
    const std::string tag = "instance " + std::to_string(t);

    // range queries
    const auto idx = SpatialIndex::build(ps);
    for (PointId c = 0; c < ps.size(); c += 1 + ps.size() / 25) {
      ++range_checks;
      auto got = idx.range_query(c, h);
      std::sort(got.begin(), got.end());
      std::vector<PointId> want;
      for (PointId j = 0; j < ps.size(); ++j)
        if (j != c && ps.distance(c, j) <= h) want.push_back(j);
      if (got != want) fail(tag + " range query");
    }

    // graph edges
    const auto brute = oracle::pairs(ps, h);
    const auto g = build_distance_graph(ps, h);
    if (g.edges() != brute) fail(tag + " edges");

    // connected components
    const auto comp = connected_components(g);
    if (comp.component_id != oracle::bfs_components(ps.size(), brute)) fail(tag + " components");

    // MST total weight over every component
    double mst_total = 0;
    for (const auto& members : comp.members) {
      const auto tree = minimum_spanning_tree(extract_component_subgraph(g, members));
      for (const auto& e : tree) mst_total += e.weight;
    }
    const double prim = oracle::prim_forest_weight(ps.size(), brute);
    if (std::abs(mst_total - prim) > 1e-9 * std::max(1.0, prim)) fail(tag + " MST weight");

    // linkage partitions, all methods, against the naive rescan on <= 200 points
    const std::size_t sub_n = std::min<std::size_t>(ps.size(), 200);
    std::vector<PointId> ids(sub_n);
    std::iota(ids.begin(), ids.end(), 0u);
    const PointSet sub = ps.subset(ids);
    for (Linkage m : kAllLinkages) {
      const oracle::NaiveHac naive(sub, m);
      const auto cuts = oracle::safe_cuts(naive.heights(), h);
      const auto res = sparse_geo_hclust(sub, h, m, cuts);
      for (std::size_t c = 0; c < cuts.size(); ++c) {
        ++linkage_cuts;
        if (res.cuts[c].labels != naive.cut(cuts[c])) {
          fail(tag + " " + linkage_name(m) + " partition at h=" + format_number(cuts[c]));
          break;
        }
      }
    }
  }
  o.detail = std::to_string(instances) + " instances (n <= 500), " +
             std::to_string(range_checks) + " range queries, " +
             std::to_string(linkage_cuts) + " linkage cuts vs naive oracle";
  if (!o.pass) o.detail += "; failures: " + failures;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"exactness sweep (3 scenarios x 3 n x 3 h_max x 4 methods)", exactness_sweep},
      {"MST path equals dense single linkage; 50k-point memory bound", mst_equivalence},
      {"constant mean degree scaling slopes", constant_k_scaling},
      {"distance ratio equals n^2/(2m) on every bench row", speedup_identity},
      {"single-linkage clusters at h_max equal component count", structural_counts},
      {"determinism: byte-identical labels across reruns, orders, parallel", determinism},
      {"oracle micro-suites on random instances", oracle_suites},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %s  [%.1fs]\n      %s\n", o.pass ? "PASS" : "FAIL", c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
