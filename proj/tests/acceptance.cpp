// Release gate: one numbered end-to-end check per shipped guarantee, each
// printing a single [PASS]/[FAIL] line (or [SKIP] for optional data sets).
// Exits nonzero when any check fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "distmod/analysis.hpp"
#include "distmod/attributes.hpp"
#include "distmod/benchgen.hpp"
#include "distmod/consensus.hpp"
#include "distmod/distance.hpp"
#include "distmod/errors.hpp"
#include "distmod/graph.hpp"
#include "distmod/kernels.hpp"
#include "distmod/modularity.hpp"
#include "distmod/null_models.hpp"
#include "distmod/optimize.hpp"
#include "distmod/rng.hpp"

#ifndef DISTMOD_CLI_PATH
#error "DISTMOD_CLI_PATH must point at the command line binary"
#endif

namespace fs = std::filesystem;
using namespace distmod;

namespace {

int failures = 0;

void report(bool ok, const std::string& line) {
  std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", line.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void report_skip(const std::string& line) {
  std::printf("[SKIP] %s\n", line.c_str());
  std::fflush(stdout);
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(const char* pattern, ...) {
  va_list args;
  va_start(args, pattern);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

struct TestInstance {
  Graph graph;
  AttributeTable coords;
};

// Random weighted graph with uniform planar coordinates. Guaranteed to
// hold at least one edge.
TestInstance random_instance(std::uint64_t seed, int n, double target_degree) {
  std::mt19937_64 gen(seed);
  const double p = std::min(1.0, target_degree / std::max(1, n - 1));
  std::vector<RawEdge> raw;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng::uniform01(gen) < p)
        raw.push_back({i, j, 0.25 + 1.75 * rng::uniform01(gen)});
  if (raw.empty()) raw.push_back({0, n > 1 ? 1 : 0, 1.0});

  TestInstance out{Graph::from_edges(raw, n), AttributeTable{}};
  std::vector<long long> ids(static_cast<std::size_t>(n));
  std::vector<double> xs(static_cast<std::size_t>(n)),
      ys(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ids[static_cast<std::size_t>(i)] = i;
    xs[static_cast<std::size_t>(i)] = 10.0 * rng::uniform01(gen);
    ys[static_cast<std::size_t>(i)] = 10.0 * rng::uniform01(gen);
  }
  out.coords.set_ids(std::move(ids));
  out.coords.add_numeric_column("x", std::move(xs));
  out.coords.add_numeric_column("y", std::move(ys));
  return out;
}

PairDistances planar_distances(const TestInstance& inst) {
  DistanceSpec spec;
  spec.kind = DistanceKind::euclidean;
  spec.columns = {"x", "y"};
  return PairDistances(spec, inst.coords);
}

Partition random_partition(const Graph& g, std::mt19937_64& gen, int k) {
  std::vector<int> labels(static_cast<std::size_t>(g.size()));
  for (int& l : labels)
    l = static_cast<int>(rng::uniform_below(gen, static_cast<std::uint64_t>(k)));
  return Partition::from_labels(g, labels);
}

// ---------------------------------------------------------------------
// 1. Every null model redistributes exactly the observed link weight and
//    stays symmetric.
void check_conservation() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_total = 0.0, worst_asym = 0.0;
  std::mt19937_64 size_gen(424242);
  for (std::uint64_t s = 1; s <= 25; ++s) {
    const int n = 5 + static_cast<int>(rng::uniform_below(size_gen, 196));
    const TestInstance inst = random_instance(s, n, 6.0);
    const Graph& g = inst.graph;
    const PairDistances dist = planar_distances(inst);
    const double dbar = dist.mean();

    NgModel ng(g);
    const auto spa = build_spa_model(g, dist, dbar / 4.0);
    const auto dm =
        build_dist_model(g, dist, make_kernel(KernelKind::gaussian, dbar));
    const NullModel* models[] = {&ng, spa.get(), dm.get()};
    for (const NullModel* m : models) {
      double total = 0.0, asym = 0.0;
      for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j) {
          total += m->expected(i, j);
          if (j > i)
            asym = std::max(asym,
                            std::abs(m->expected(i, j) - m->expected(j, i)));
        }
      worst_total =
          std::max(worst_total,
                   std::abs(total - g.total_weight()) / g.total_weight());
      worst_asym = std::max(worst_asym, asym);
    }
  }
  const double elapsed = seconds_since(t0);
  report(worst_total < 1e-9 && worst_asym < 1e-12 && elapsed < 10.0,
         fmt("1. conservation and symmetry across 25 random graphs: "
             "max relative total error %.2e (< 1e-9), max asymmetry %.2e "
             "(< 1e-12), %.1f s (< 10 s)",
             worst_total, worst_asym, elapsed));
}

// ---------------------------------------------------------------------
// 2. A constant kernel reduces the distance model to the configuration
//    model exactly; a near-flat gaussian gets within 1e-6.
void check_kernel_limits() {
  std::mt19937_64 gen(777);
  double const_p = 0.0, const_q = 0.0;
  for (std::uint64_t s = 1; s <= 8; ++s) {
    const int n = 20 + static_cast<int>(rng::uniform_below(gen, 100));
    const TestInstance inst = random_instance(300 + s, n, 6.0);
    const Graph& g = inst.graph;
    const PairDistances dist = planar_distances(inst);
    NgModel ng(g);
    const auto dm = build_dist_model(g, dist, make_kernel(KernelKind::constant));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        const_p = std::max(const_p,
                           std::abs(dm->expected(i, j) - ng.expected(i, j)));

    std::vector<Partition> parts;
    parts.push_back(Partition::singletons(g));
    parts.push_back(Partition::from_labels(
        g, std::vector<int>(static_cast<std::size_t>(n), 0)));
    for (int k = 2; k <= 6; ++k) parts.push_back(random_partition(g, gen, k));
    for (const Partition& p : parts)
      const_q = std::max(
          const_q, std::abs(modularity(g, ng, p) - modularity(g, *dm, p)));
  }

  // Sparse ring with circular coordinates: the realized distances span a
  // narrow range, so a gaussian at 100 mean distances is flat across them.
  const int n = 2000;
  std::vector<RawEdge> raw;
  std::vector<long long> ids(static_cast<std::size_t>(n));
  std::vector<double> xs(static_cast<std::size_t>(n)),
      ys(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    raw.push_back({i, (i + 1) % n, 1.0});
    ids[static_cast<std::size_t>(i)] = i;
    const double a = 2.0 * std::acos(-1.0) * i / n;
    xs[static_cast<std::size_t>(i)] = std::cos(a);
    ys[static_cast<std::size_t>(i)] = std::sin(a);
  }
  TestInstance ring{Graph::from_edges(raw, n), AttributeTable{}};
  ring.coords.set_ids(std::move(ids));
  ring.coords.add_numeric_column("x", std::move(xs));
  ring.coords.add_numeric_column("y", std::move(ys));
  const PairDistances dist = planar_distances(ring);
  NgModel ng(ring.graph);
  const auto dm = build_dist_model(
      ring.graph, dist, make_kernel(KernelKind::gaussian, 100.0 * dist.mean()));
  double flat_p = 0.0, flat_q = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      flat_p =
          std::max(flat_p, std::abs(dm->expected(i, j) - ng.expected(i, j)));
  std::vector<Partition> parts;
  parts.push_back(Partition::singletons(ring.graph));
  parts.push_back(Partition::from_labels(
      ring.graph, std::vector<int>(static_cast<std::size_t>(n), 0)));
  for (int k = 2; k <= 6; ++k)
    parts.push_back(random_partition(ring.graph, gen, k));
  for (const Partition& p : parts)
    flat_q = std::max(flat_q, std::abs(modularity(ring.graph, ng, p) -
                                       modularity(ring.graph, *dm, p)));

  report(const_p < 1e-12 && const_q < 1e-12 && flat_p < 1e-6 && flat_q < 1e-6,
         fmt("2. kernel limits: constant kernel vs configuration model max "
             "entry diff %.2e / Q diff %.2e (< 1e-12); gaussian at 100 mean "
             "distances %.2e / %.2e (< 1e-6)",
             const_p, const_q, flat_p, flat_q));
}

// ---------------------------------------------------------------------
// 3. The binned spatial model reproduces the observed per-bin link totals.
void check_spa_bin_identity() {
  double worst = 0.0;
  std::mt19937_64 size_gen(515151);
  for (std::uint64_t s = 1; s <= 25; ++s) {
    const int n = 5 + static_cast<int>(rng::uniform_below(size_gen, 196));
    const TestInstance inst = random_instance(900 + s, n, 6.0);
    const Graph& g = inst.graph;
    const PairDistances dist = planar_distances(inst);
    const double tau = dist.mean() / 4.0;
    const auto spa = build_spa_model(g, dist, tau);

    const auto bins = static_cast<std::size_t>(dist.max() / tau) + 1;
    const auto bin_of = [&](double d) {
      const auto b = static_cast<std::size_t>(d / tau);
      return b >= bins ? bins - 1 : b;
    };
    std::vector<double> observed(bins, 0.0), expected(bins, 0.0);
    std::vector<char> nonempty(bins, 0);
    for (int i = 0; i < g.size(); ++i) {
      for (const Neighbor& nb : g.neighbors(i))
        observed[bin_of(dist(i, nb.node))] += nb.weight;
      for (int j = 0; j < g.size(); ++j) {
        const std::size_t b = bin_of(dist(i, j));
        expected[b] += spa->expected(i, j);
        nonempty[b] = true;
      }
    }
    for (std::size_t b = 0; b < bins; ++b) {
      if (!nonempty[b]) continue;
      worst = std::max(worst, std::abs(expected[b] - observed[b]) /
                                  std::max(1.0, std::abs(observed[b])));
    }
  }
  report(worst < 1e-9,
         fmt("3. per-bin identity of the binned spatial model on 25 graphs: "
             "max relative bin error %.2e (< 1e-9)",
             worst));
}

// ---------------------------------------------------------------------
// 4. The heuristic reaches at least 99%% of the enumerated optimum on
//    small graphs and is exact on two disjoint triangles.
void check_oracle_optimality() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_ratio = 1.0;
  std::mt19937_64 size_gen(626262);
  OptimizerConfig oc;
  oc.seed = 99;
  for (std::uint64_t s = 1; s <= 50; ++s) {
    const int n = 4 + static_cast<int>(rng::uniform_below(size_gen, 6));
    const TestInstance inst = random_instance(1400 + s, n, 3.5);
    const Graph& g = inst.graph;
    const PairDistances dist = planar_distances(inst);

    NgModel ng(g);
    const auto spa = build_spa_model(g, dist, dist.mean() / 3.0);
    const auto dm = build_dist_model(
        g, dist, make_kernel(KernelKind::gaussian, dist.mean()));
    const NullModel* models[] = {&ng, spa.get(), dm.get()};
    for (const NullModel* m : models) {
      const auto [best, qbest] = exhaustive_best_partition(g, *m);
      const auto found = optimize(g, *m, oc);
      if (qbest > 1e-12)
        worst_ratio = std::min(worst_ratio, found.q / qbest);
      else if (found.q < qbest - 1e-12)
        worst_ratio = std::min(worst_ratio, 0.0);
    }
  }

  std::vector<RawEdge> cliques;
  for (int base : {0, 3})
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        cliques.push_back({base + i, base + j, 1.0});
  const Graph two = Graph::from_edges(cliques, 6);
  NgModel ng2(two);
  const auto [bestp, qbest] = exhaustive_best_partition(two, ng2);
  const auto found = optimize(two, ng2, oc);
  const bool clique_exact =
      std::abs(qbest - 0.5) < 1e-12 && std::abs(found.q - qbest) < 1e-12 &&
      found.partition.community_count() == 2 &&
      found.partition.label(0) == found.partition.label(1) &&
      found.partition.label(0) == found.partition.label(2) &&
      found.partition.label(3) == found.partition.label(4) &&
      found.partition.label(3) == found.partition.label(5) &&
      found.partition.label(0) != found.partition.label(3);
  const double elapsed = seconds_since(t0);
  report(worst_ratio >= 0.99 && clique_exact && elapsed < 60.0,
         fmt("4. heuristic vs enumerated optimum on 50 small graphs x 3 "
             "models: worst ratio %.4f (>= 0.99); two disjoint triangles "
             "give Q = 0.5 exactly: %s; %.1f s (< 60 s)",
             worst_ratio, clique_exact ? "yes" : "no", elapsed));
}

// ---------------------------------------------------------------------
// 5. Benchmark grid, 100 replicates per cell, single-threaded.
void check_benchmark_grid() {
  const auto t0 = std::chrono::steady_clock::now();
  GridConfig cfg;
  cfg.n = 100;
  cfg.links = 500;
  cfg.seed = 1;
  cfg.threads = 1;
  const std::vector<double> epsilons = {0.1, 0.3, 0.5};
  const std::vector<double> betas = {0.3, 1.0};
  const std::vector<BenchMethod> methods = {
      BenchMethod::ng, BenchMethod::spa_high, BenchMethod::spa_cons,
      BenchMethod::dist_high, BenchMethod::dist_cons};
  const GridResult res = grid_experiment(epsilons, betas, 100, methods, cfg);
  const double elapsed = seconds_since(t0);

  std::printf("       benchmark grid, mean NMI vs planted over 100 "
              "replicates, columns are (flip rate, coupling):\n");
  std::printf("       %-10s", "");
  for (double e : epsilons)
    for (double b : betas) std::printf(" (%.1f,%.1f)", e, b);
  std::printf("\n");
  for (std::size_t m = 0; m < methods.size(); ++m) {
    std::printf("       %-10s", bench_method_name(methods[m]).c_str());
    for (std::size_t e = 0; e < epsilons.size(); ++e)
      for (std::size_t b = 0; b < betas.size(); ++b)
        std::printf(" %9.3f", res.mean(m, e, b));
    std::printf("\n");
  }
  std::fflush(stdout);

  const auto mean = [&](BenchMethod m, std::size_t e, std::size_t b) {
    for (std::size_t i = 0; i < methods.size(); ++i)
      if (methods[i] == m) return res.mean(i, e, b);
    return -1.0;
  };

  const double ng = mean(BenchMethod::ng, 0, 1);
  const double spa_cons = mean(BenchMethod::spa_cons, 0, 1);
  const double dist_cons = mean(BenchMethod::dist_cons, 0, 1);
  const bool margins = dist_cons >= ng + 0.05 && dist_cons >= spa_cons + 0.05;
  report(margins && elapsed <= 1800.0,
         fmt("5a. strongly correlated easy cell (attribute flip rate 0.1, "
             "coupling 1.0): consensus distance-kernel score %.3f vs "
             "configuration %.3f and consensus binned-spatial %.3f "
             "(needs both margins >= 0.05); grid took %.0f s (<= 1800 s)",
             dist_cons, ng, spa_cons, elapsed));

  bool monotone = true;
  double worst_drop = 0.0;
  for (std::size_t m = 0; m < methods.size(); ++m)
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
      const double drop = res.mean(m, e, 0) - res.mean(m, e, 1);
      worst_drop = std::max(worst_drop, drop);
      monotone = monotone && res.mean(m, e, 1) >= res.mean(m, e, 0);
    }
  report(monotone,
         fmt("5b. every method improves when membership coupling rises from "
             "0.3 to 1.0 in all 3 flip-rate columns: worst violation %.3f",
             worst_drop));

  bool high_beats_cons = true;
  double worst_gap = 0.0;
  for (std::size_t e = 0; e < epsilons.size(); ++e)
    for (std::size_t b = 0; b < betas.size(); ++b) {
      const double gap = mean(BenchMethod::dist_cons, e, b) -
                         mean(BenchMethod::dist_high, e, b);
      worst_gap = std::max(worst_gap, gap);
      high_beats_cons = high_beats_cons && gap <= 0.0;
    }
  report(high_beats_cons,
         fmt("5c. best-over-sweep distance score >= consensus score in every "
             "cell: worst violation %.3f",
             worst_gap));
}

// ---------------------------------------------------------------------
// 6. Partition similarity properties.
void check_nmi_properties() {
  std::mt19937_64 gen(31337);
  const int n = 60;
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int ka = 1 + static_cast<int>(rng::uniform_below(gen, 10));
    const int kb = 1 + static_cast<int>(rng::uniform_below(gen, 10));
    std::vector<int> a(n), b(n), ones(n, 0);
    for (int& l : a)
      l = static_cast<int>(rng::uniform_below(gen, static_cast<std::uint64_t>(ka)));
    for (int& l : b)
      l = static_cast<int>(rng::uniform_below(gen, static_cast<std::uint64_t>(kb)));

    worst = std::max(worst, std::abs(nmi_labels(a, a) - 1.0));
    const bool a_is_single =
        std::all_of(a.begin(), a.end(), [&](int l) { return l == a[0]; });
    if (!a_is_single) worst = std::max(worst, std::abs(nmi_labels(a, ones)));
    worst = std::max(worst, std::abs(nmi_labels(a, b) - nmi_labels(b, a)));

    std::vector<int> names(10);
    for (int i = 0; i < 10; ++i) names[static_cast<std::size_t>(i)] = i;
    rng::shuffle(names, gen);
    std::vector<int> relabeled(a);
    for (int& l : relabeled) l = names[static_cast<std::size_t>(l)];
    worst = std::max(worst,
                     std::abs(nmi_labels(a, b) - nmi_labels(relabeled, b)));
  }
  report(worst <= 1e-12,
         fmt("6. partition similarity: self = 1, vs all-in-one = 0, symmetric "
             "and relabel-invariant over 1000 random pairs: max deviation "
             "%.2e (<= 1e-12)",
             worst));
}

// ---------------------------------------------------------------------
// 7. Incrementally maintained modularity matches a fresh recomputation.
void check_incremental() {
  const TestInstance inst = random_instance(8080, 50, 7.0);
  const Graph& g = inst.graph;
  const PairDistances dist = planar_distances(inst);
  NgModel ng(g);
  const auto spa = build_spa_model(g, dist, dist.mean() / 4.0);
  const auto dm =
      build_dist_model(g, dist, make_kernel(KernelKind::gaussian, dist.mean()));
  const NullModel* models[] = {&ng, spa.get(), dm.get()};

  double worst = 0.0;
  std::mt19937_64 gen(246810);
  for (const NullModel* m : models) {
    Partition p = random_partition(g, gen, 8);
    CommunityAggregates aggs(g, *m, p);
    int applied = 0;
    while (applied < 1000) {
      const int i = static_cast<int>(rng::uniform_below(gen, 50));
      const int j = static_cast<int>(rng::uniform_below(gen, 50));
      int target = p.label(j);
      // A same-label draw becomes a carve-out into a free slot instead,
      // so the walk cannot get absorbed into one big community.
      if (target == p.label(i)) {
        target = -1;
        for (int l = 0; l < p.size(); ++l)
          if (p.community_size(l) == 0) {
            target = l;
            break;
          }
        if (target < 0) continue;
      }
      aggs.apply_move(p, i, target);
      ++applied;
    }
    const double q_inc = aggs.q_times_total(p) / g.total_weight();
    worst = std::max(worst, std::abs(q_inc - modularity(g, *m, p)));
  }
  report(worst < 1e-8,
         fmt("7. incremental vs recomputed modularity after 1000 random "
             "moves per model: max |difference| %.2e (< 1e-8)",
             worst));
}

// ---------------------------------------------------------------------
// 8. Chi-squared independence test against a closed-form tail oracle.
void check_chi_squared() {
  std::vector<int> a, b;
  for (int i = 0; i < 10; ++i) {
    a.push_back(0);
    b.push_back(0);
  }
  for (int i = 0; i < 10; ++i) {
    a.push_back(1);
    b.push_back(1);
  }
  const ChiSquaredResult diag = chi_squared_independence(a, b);
  // For one degree of freedom the upper tail is erfc(sqrt(x/2)).
  const double oracle = std::erfc(std::sqrt(diag.statistic / 2.0));

  std::vector<int> pa, pb;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int r = 0; r < 6; ++r) {
        pa.push_back(i);
        pb.push_back(j);
      }
  const ChiSquaredResult prop = chi_squared_independence(pa, pb);

  report(std::abs(diag.statistic - 20.0) < 1e-9 && diag.dof == 1 &&
             std::abs(diag.p_value - oracle) < 1e-7 && prop.p_value == 1.0,
         fmt("8. chi-squared: diagonal 2x2 table gives statistic %.6f "
             "(= 20), dof %d (= 1), p %.3e within 1e-7 of erfc oracle "
             "%.3e; proportional table gives p = %g (= 1)",
             diag.statistic, diag.dof, diag.p_value, oracle, prop.p_value));
  report_skip(
      "8b. office x practice association p = 0.4848 +/- 0.0005 and the "
      "step-kernel sweep's top consensus region covering the first four "
      "plateau values: needs the law-firm advice data set, not bundled");
}

// ---------------------------------------------------------------------
// 9. Cost scaling: the sweep is linear in grid size, the distance model
//    build is roughly quadratic in node count.
void check_complexity() {
  BenchConfig bc;
  bc.n = 200;
  bc.links = 800;
  bc.eps = 0.3;
  bc.beta = 0.8;
  bc.seed = 12;
  const BenchInstance inst = generate(bc);
  DistanceSpec spec;
  spec.kind = DistanceKind::euclidean;
  spec.columns = {"x", "y"};
  const PairDistances dist(spec, inst.coords);
  OptimizerConfig oc;
  oc.seed = 5;

  const std::array<int, 3> sizes = {5, 10, 20};
  std::array<double, 3> per_point{};
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const int s = sizes[k];
    std::vector<double> grid(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i)
      grid[static_cast<std::size_t>(i)] =
          (0.3 + 1.6 * i / std::max(1, s - 1)) * dist.mean();
    double best = 1e100;
    for (int rep = 0; rep < 2; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      const SweepResult sw =
          run_sweep(inst.graph, dist, KernelKind::gaussian, grid, oc, 1);
      best = std::min(best, seconds_since(t0));
      if (sw.points.size() != grid.size()) best = -1.0;
    }
    per_point[k] = best / s;
  }
  const double mean_pp = (per_point[0] + per_point[1] + per_point[2]) / 3.0;
  double lin_dev = 0.0;
  for (double v : per_point)
    lin_dev = std::max(lin_dev, std::abs(v - mean_pp) / mean_pp);

  const std::array<int, 3> ns = {250, 500, 1000};
  const std::array<int, 3> reps = {16, 4, 1};
  std::array<double, 3> build{};
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const TestInstance ti = random_instance(7000 + k, ns[k], 6.0);
    const PairDistances d2 = planar_distances(ti);
    const KernelSpec kern = make_kernel(KernelKind::gaussian, d2.mean());
    auto warm = build_dist_model(ti.graph, d2, kern);
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps[k]; ++r) {
      auto m = build_dist_model(ti.graph, d2, kern);
      if (!(m->expected_total() > 0.0)) build[k] = -1.0;
    }
    build[k] += seconds_since(t0) / reps[k];
  }
  const double slope = std::log(build[2] / build[0]) / std::log(4.0);

  report(lin_dev <= 0.25 && slope >= 1.5 && slope <= 2.7,
         fmt("9. scaling: sweep per-point time deviates %.0f%% from linear "
             "across grid sizes 5/10/20 (<= 25%%); distance model build "
             "scales with exponent %.2f over 250..1000 nodes (in [1.5, "
             "2.7])",
             100.0 * lin_dev, slope));
}

// ---------------------------------------------------------------------
// 10. Reruns of the sweep command with one seed are byte-identical.
std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(DISTMOD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void check_determinism() {
  const fs::path root = fs::temp_directory_path() / "distmod_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path gen = root / "gen";
  fs::create_directories(gen);
  bool ok = run_cli("generate --n 80 --links 320 --eps 0.2 --beta 0.8 --seed 5 "
                    "--out " +
                    quoted(gen)) == 0;

  for (const char* name : {"one", "two"}) {
    const fs::path out = root / name;
    fs::create_directories(out);
    ok = ok &&
         run_cli("sweep --edges " + quoted(gen / "edges.txt") + " --attrs " +
                 quoted(gen / "attributes.csv") +
                 " --kernel gaussian --sigma-grid 0.4dbar:1.6dbar:0.3dbar "
                 "--seed 11 --out " +
                 quoted(out)) == 0;
  }

  int compared = 0;
  bool identical = ok;
  if (ok) {
    std::vector<std::string> names = {"nmi_vs_sigma.csv",
                                      "consensus_partition.csv"};
    for (const auto& entry : fs::directory_iterator(root / "one"))
      if (entry.path().filename().string().rfind("partition_sigma_", 0) == 0)
        names.push_back(entry.path().filename().string());
    for (const std::string& f : names) {
      const std::string lhs = slurp(root / "one" / f);
      const std::string rhs = slurp(root / "two" / f);
      identical = identical && !lhs.empty() && lhs == rhs;
      ++compared;
    }
    identical = identical && compared >= 3;
  }
  report(identical, fmt("10. sweep reruns with one seed: %d output files "
                        "byte-identical across runs%s",
                        compared, ok ? "" : " (command failed)"));
  fs::remove_all(root);
}

}  // namespace

int main() {
  check_conservation();
  check_kernel_limits();
  check_spa_bin_identity();
  check_oracle_optimality();
  check_benchmark_grid();
  check_nmi_properties();
  check_incremental();
  check_chi_squared();
  check_complexity();
  check_determinism();
  if (failures == 0)
    std::printf("all checks passed\n");
  else
    std::printf("%d check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
