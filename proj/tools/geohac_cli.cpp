// geohac command-line front end: cluster, verify, graph, bench, gen.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "geohac/distance_graph.hpp"
#include "geohac/io.hpp"
#include "geohac/kernels.hpp"
#include "geohac/pipeline.hpp"
#include "geohac/synth_bench.hpp"

namespace {

using namespace geohac;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kIo = 3, kDenseGuard = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  bool parallel = false;
  unsigned threads = 0;
  std::uint64_t seed = 42;
  std::string isa = "auto";
  std::string component_order = "ascending";
};

struct Source {
  std::string input;
  std::string format = "auto";
  std::string scenario;
  bool constant_k = false;
  double k_target = 50.0;
  std::size_t n = 1000;
};

struct Args {
  Common common;
  Source source;
  std::string h_max = "10";
  std::string linkage = "single";
  std::string verify_linkage = "all";
  std::vector<std::string> cuts;
  std::string output;
  std::string json_output;
  std::vector<std::size_t> sizes;
  std::vector<double> fractions{0.2, 0.5, 1.0};
  std::size_t reps = 5;
  std::size_t dense_limit = 0;
  bool no_dense = false;
  std::string domain = "500";
};

double km(const std::string& text, const char* flag) {
  try {
    return parse_distance_km(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": cannot parse distance '" + text + "'");
  }
}

Linkage linkage_arg(const std::string& name) {
  const auto m = parse_linkage(name);
  if (!m) {
    throw UsageError("--linkage: unknown method '" + name +
                     "' (single, complete, average, ward)");
  }
  return *m;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_flag("--parallel", c.parallel, "Process components on a worker pool");
  sub->add_option("--threads", c.threads, "Worker count for --parallel (0 = all cores)");
  sub->add_option("--seed", c.seed, "Seed for generated data and shuffled orders");
  sub->add_option("--isa", c.isa, "Kernel set: auto, scalar, avx2");
  sub->add_option("--component-order", c.component_order,
                  "Component processing order: ascending, descending, shuffled")
      ->check(CLI::IsMember({"ascending", "descending", "shuffled"}));
}

void add_source(CLI::App* sub, Source& s) {
  auto* in = sub->add_option("-i,--input", s.input, "Points file (CSV or GeoJSON)");
  sub->add_option("--format", s.format, "Input format: auto, csv, geojson");
  auto* sc = sub->add_option("--scenario", s.scenario,
                             "Generate a scenario instead: tight, moderate, loose");
  auto* ck = sub->add_flag("--constant-k", s.constant_k,
                           "Generate uniform points with constant mean degree");
  sub->add_option("--k", s.k_target, "Target mean degree for --constant-k");
  sub->add_option("-n,--n", s.n, "Point count for generated data");
  in->excludes(sc)->excludes(ck);
  sc->excludes(ck);
}

void apply_common(const Common& c) {
  if (c.isa == "auto") {
    kernels::select_best();
    return;
  }
  const auto isa = kernels::parse_isa(c.isa);
  if (!isa) throw UsageError("--isa: unknown kernel set '" + c.isa + "'");
  if (!kernels::select(*isa)) {
    throw UsageError("--isa: '" + c.isa + "' is not supported on this CPU");
  }
}

PointSet load_source(const Source& s, double h_max, std::uint64_t seed,
                     double domain_km) {
  if (!s.input.empty()) {
    const auto fmt = parse_input_format(s.format);
    if (!fmt) throw UsageError("--format: unknown format '" + s.format + "'");
    return load_points(s.input, *fmt);
  }
  if (!s.scenario.empty()) {
    const auto sc = parse_scenario(s.scenario);
    if (!sc) throw UsageError("--scenario: unknown scenario '" + s.scenario + "'");
    if (s.n == 0) throw UsageError("--n must be at least 1");
    return generate_gaussian_mixture(ScenarioSpec::preset(*sc, s.n, h_max, seed, domain_km));
  }
  if (s.constant_k) {
    if (s.n < 2) throw UsageError("--n must be at least 2 with --constant-k");
    return generate_constant_k(s.n, s.k_target, h_max, seed);
  }
  throw UsageError("one of --input, --scenario, --constant-k is required");
}

ClusterOptions options_for(const Common& c) {
  ClusterOptions o;
  o.parallel = c.parallel;
  o.threads = c.threads;
  return o;
}

// Component orders other than ascending need K, which needs the graph; the
// pipeline reports K, so a first pass discovers it.
std::vector<std::uint32_t> component_order(const Common& c, std::size_t k_count) {
  std::vector<std::uint32_t> order(k_count);
  std::iota(order.begin(), order.end(), 0u);
  if (c.component_order == "descending") {
    std::reverse(order.begin(), order.end());
  } else if (c.component_order == "shuffled") {
    PortableRng rng(c.seed);
    for (std::size_t i = k_count; i > 1; --i) {
      std::swap(order[i - 1], order[rng.below(i)]);
    }
  }
  return order;
}

std::vector<double> cut_heights(const std::vector<std::string>& cuts, double h_max) {
  std::vector<double> heights;
  for (const auto& c : cuts) {
    const double h = km(c, "--cuts");
    if (!(h >= 0.0) || h > h_max) {
      throw UsageError("--cuts: height " + c + " outside [0, h_max = " +
                       format_number(h_max) + " km]");
    }
    heights.push_back(h);
  }
  if (heights.empty()) heights.push_back(h_max);
  return heights;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  return out;
}

int run_cluster(const Args& a) {
  const double h_max = km(a.h_max, "--h-max");
  if (!(h_max > 0.0)) throw UsageError("--h-max must be positive");
  const Linkage method = linkage_arg(a.linkage);
  const auto heights = cut_heights(a.cuts, h_max);
  const PointSet ps = load_source(a.source, h_max, a.common.seed, km(a.domain, "--domain"));

  ClusterOptions opts = options_for(a.common);
  ClusteringResult res;
  if (a.common.component_order != "ascending") {
    const auto probe = build_distance_graph(ps, h_max);
    opts.component_order = component_order(a.common, connected_components(probe).count());
  }
  res = sparse_geo_hclust(ps, h_max, method, heights, opts);

  std::ostream* summary = &std::cout;
  if (a.output.empty() || a.output == "-") {
    write_labels(std::cout, res.cuts);
    summary = &std::cerr;
  } else {
    write_labels(std::filesystem::path(a.output), res.cuts);
  }
  std::ostream& s = *summary;
  s << "points\t" << res.n << '\n'
    << "metric\t" << metric_name(ps.metric()) << '\n'
    << "h_max_km\t" << format_number(h_max) << '\n'
    << "linkage\t" << linkage_name(method) << '\n'
    << "edges\t" << res.edges << '\n'
    << "mean_degree\t" << res.mean_degree << '\n'
    << "components\t" << res.components << '\n'
    << "largest_component\t" << res.largest_component << '\n'
    << "graph_s\t" << res.times.graph_s << '\n'
    << "hac_s\t" << res.times.hac_s << '\n'
    << "hac_peak_mib\t" << memory::to_mib(res.hac_peak_bytes) << '\n';
  for (const auto& c : res.cuts) {
    s << "clusters@h=" << format_number(c.h) << '\t' << count_clusters(c.labels) << '\n';
  }
  return kOk;
}

int run_verify(const Args& a) {
  const double h_max = km(a.h_max, "--h-max");
  if (!(h_max > 0.0)) throw UsageError("--h-max must be positive");
  std::vector<Linkage> methods;
  if (a.verify_linkage == "all") {
    methods.assign(std::begin(kAllLinkages), std::end(kAllLinkages));
  } else {
    methods.push_back(linkage_arg(a.verify_linkage));
  }
  std::vector<double> heights;
  if (a.cuts.empty()) {
    for (double f : a.fractions) {
      if (!(f >= 0.0) || f > 1.0) throw UsageError("--fractions: values must be in [0, 1]");
      heights.push_back(f * h_max);
    }
  } else {
    heights = cut_heights(a.cuts, h_max);
  }
  const PointSet ps = load_source(a.source, h_max, a.common.seed, km(a.domain, "--domain"));
  const std::size_t limit = a.dense_limit ? a.dense_limit : kDefaultDenseLimit;
  const auto report =
      verify_exactness(ps, h_max, methods, heights, limit, options_for(a.common));
  std::cout << "linkage\th_km\tari\tsparse_clusters\tdense_clusters\tresult\n";
  for (const auto& r : report.rows) {
    std::cout << linkage_name(r.method) << '\t' << format_number(r.h) << '\t' << r.ari
              << '\t' << r.sparse_clusters << '\t' << r.dense_clusters << '\t'
              << (r.pass ? "pass" : "FAIL") << '\n';
  }
  std::cout << (report.passed() ? "all rows passed\n" : "verification FAILED\n");
  return report.passed() ? kOk : kVerifyFailed;
}

int run_graph(const Args& a) {
  const double h_max = km(a.h_max, "--h-max");
  if (!(h_max > 0.0)) throw UsageError("--h-max must be positive");
  const PointSet ps = load_source(a.source, h_max, a.common.seed, km(a.domain, "--domain"));
  const auto g = build_distance_graph(ps, h_max);
  if (a.output.empty() || a.output == "-") {
    write_edge_list(std::cout, g);
  } else {
    auto out = open_output(a.output);
    write_edge_list(out, g);
    if (!out.flush()) throw IoError("write failed for '" + a.output + "'");
  }
  std::cerr << "points\t" << g.n << "\nedges\t" << g.edge_count() << '\n';
  return kOk;
}

int run_bench(const Args& a) {
  BenchConfig cfg;
  cfg.h_max = km(a.h_max, "--h-max");
  if (!(cfg.h_max > 0.0)) throw UsageError("--h-max must be positive");
  cfg.method = linkage_arg(a.linkage);
  if (!a.source.input.empty()) throw UsageError("bench generates its own data; --input not allowed");
  if (!a.source.scenario.empty()) {
    cfg.scenario = parse_scenario(a.source.scenario);
    if (!cfg.scenario) throw UsageError("--scenario: unknown scenario '" + a.source.scenario + "'");
  } else if (!a.source.constant_k) {
    throw UsageError("bench needs --scenario or --constant-k");
  }
  cfg.k_target = a.source.k_target;
  cfg.domain_km = km(a.domain, "--domain");
  cfg.sizes = a.sizes;
  if (cfg.sizes.empty()) cfg.sizes = {a.source.n};
  std::sort(cfg.sizes.begin(), cfg.sizes.end());
  cfg.cut_fractions = a.fractions;
  for (double f : cfg.cut_fractions) {
    if (!(f >= 0.0) || f > 1.0) throw UsageError("--fractions: values must be in [0, 1]");
  }
  if (a.reps == 0) throw UsageError("--reps must be at least 1");
  cfg.repetitions = a.reps;
  cfg.seed = a.common.seed;
  cfg.run_dense = !a.no_dense;
  if (a.dense_limit) cfg.dense_limit = a.dense_limit;
  cfg.options = options_for(a.common);

  const BenchReport report = run_scaling_experiment(cfg);
  if (a.output.empty() || a.output == "-") {
    write_bench_table(std::cout, report);
  } else {
    auto out = open_output(a.output);
    write_bench_table(out, report);
    if (!out.flush()) throw IoError("write failed for '" + a.output + "'");
  }
  if (!a.json_output.empty()) {
    auto out = open_output(a.json_output);
    write_bench_json(out, report);
    if (!out.flush()) throw IoError("write failed for '" + a.json_output + "'");
  }
  return kOk;
}

int run_gen(const Args& a) {
  const double h_max = km(a.h_max, "--h-max");
  if (!(h_max > 0.0)) throw UsageError("--h-max must be positive");
  if (!a.source.input.empty()) throw UsageError("gen does not read --input");
  const PointSet ps = load_source(a.source, h_max, a.common.seed, km(a.domain, "--domain"));
  if (a.output.empty() || a.output == "-") {
    write_points(std::cout, ps);
  } else {
    auto out = open_output(a.output);
    write_points(out, ps);
    if (!out.flush()) throw IoError("write failed for '" + a.output + "'");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact hierarchical clustering of spatial points via sparse distance graphs"};
  app.require_subcommand(1);
  Args a;

  auto* cluster = app.add_subcommand("cluster", "Cluster points and write labels per cut height");
  auto* verify = app.add_subcommand("verify", "Compare sparse and dense clusterings");
  auto* graph = app.add_subcommand("graph", "Write the distance-graph edge list");
  auto* bench = app.add_subcommand("bench", "Run a scaling benchmark");
  auto* gen = app.add_subcommand("gen", "Write a synthetic point set");

  for (auto* sub : {cluster, verify, graph, bench, gen}) {
    add_common(sub, a.common);
    add_source(sub, a.source);
    sub->add_option("--h-max", a.h_max, "Graph radius in km (suffix m for metres)");
    sub->add_option("--domain", a.domain, "Scenario domain side in km");
    sub->add_option("-o,--output", a.output, "Output path ('-' for stdout)");
  }
  for (auto* sub : {cluster, bench}) {
    sub->add_option("--linkage", a.linkage, "single, complete, average, ward");
  }
  verify->add_option("--linkage", a.verify_linkage, "single, complete, average, ward, all");
  for (auto* sub : {cluster, verify}) {
    sub->add_option("--cuts", a.cuts, "Cut heights in km, comma separated")->delimiter(',');
  }
  for (auto* sub : {verify, bench}) {
    sub->add_option("--fractions", a.fractions, "Cut heights as fractions of h_max")
        ->delimiter(',');
    sub->add_option("--dense-limit", a.dense_limit, "Largest n for the dense baseline");
  }
  bench->add_option("--sizes", a.sizes, "Point counts, comma separated")->delimiter(',');
  bench->add_option("--reps", a.reps, "Repetitions per size");
  bench->add_flag("--no-dense", a.no_dense, "Skip the dense baseline");
  bench->add_option("--json", a.json_output, "Also write the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    apply_common(a.common);
    if (*cluster) return run_cluster(a);
    if (*verify) return run_verify(a);
    if (*graph) return run_graph(a);
    if (*bench) return run_bench(a);
    if (*gen) return run_gen(a);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InfeasibleDenseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDenseGuard;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}
