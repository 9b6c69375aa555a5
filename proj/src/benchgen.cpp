#include "distmod/benchgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "distmod/consensus.hpp"
#include "distmod/null_models.hpp"
#include "distmod/parallel.hpp"
#include "distmod/rng.hpp"

namespace distmod {

namespace {
const std::array<std::pair<BenchMethod, std::string>, 5> kMethodNames{{
    {BenchMethod::ng, "NG"},
    {BenchMethod::spa_high, "Spa-High"},
    {BenchMethod::spa_cons, "Spa-Cons"},
    {BenchMethod::dist_high, "Dist-High"},
    {BenchMethod::dist_cons, "Dist-Cons"},
}};
}  // namespace

const std::string& bench_method_name(BenchMethod m) {
  for (const auto& [k, name] : kMethodNames)
    if (k == m) return name;
  return kMethodNames[0].second;
}

BenchMethod bench_method_from_name(const std::string& name) {
  for (const auto& [k, n] : kMethodNames)
    if (n == name) return k;
  throw input_error("unknown method '" + name + "'");
}

std::vector<std::string> bench_range_warnings(double eps, double beta) {
  std::vector<std::string> warnings;
  if (eps < 0.1 || eps > 0.5) {
    std::ostringstream os;
    os << "eps = " << eps << " lies outside the calibrated range [0.1, 0.5]";
    warnings.push_back(os.str());
  }
  if (beta < 0.3 || beta > 1.0) {
    std::ostringstream os;
    os << "beta = " << beta << " lies outside the calibrated range [0.3, 1.0]";
    warnings.push_back(os.str());
  }
  return warnings;
}

BenchInstance generate(const BenchConfig& cfg) {
  if (cfg.n < 2 || cfg.n % 2 != 0)
    throw input_error("benchmark node count must be even and >= 2");
  const long long max_pairs =
      static_cast<long long>(cfg.n) * (cfg.n - 1) / 2;
  if (cfg.links < 1) throw input_error("benchmark needs at least one link");
  if (cfg.links > max_pairs) {
    std::ostringstream os;
    os << "cannot place " << cfg.links << " distinct links among " << max_pairs
       << " node pairs";
    throw input_error(os.str());
  }

  if (cfg.eps < 0.0 || cfg.eps > 1.0) throw input_error("eps must lie in [0, 1]");
  BenchInstance out;
  out.warnings = bench_range_warnings(cfg.eps, cfg.beta);

  std::mt19937_64 gen(cfg.seed);
  const auto n = static_cast<std::size_t>(cfg.n);
  const int half = cfg.n / 2;
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < cfg.n; ++i) {
    // Rejection sampling against the uniform envelope of the box around
    // the north center; density exp(-distance to center), max 1. The
    // south half draws from the same density in the area mirrored
    // across the x axis, centered on (0, -1).
    double x, y;
    for (;;) {
      x = -1.0 + 2.0 * rng::uniform01(gen);
      y = 2.0 * rng::uniform01(gen);
      if (x <= -1.0 || x >= 1.0 || y <= 0.0 || y >= 2.0) continue;
      const double d = std::hypot(x, y - 1.0);
      if (rng::uniform01(gen) < std::exp(-d)) break;
    }
    const auto a = static_cast<std::size_t>(i);
    xs[a] = x;
    ys[a] = i < half ? y : -y;
  }

  // Planted membership: hemisphere sign, flipped with probability eps.
  std::vector<int> sign(n);
  std::vector<int> membership(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int hemisphere = ys[i] > 0.0 ? 1 : -1;
    const int l = rng::uniform01(gen) < cfg.eps ? -hemisphere : hemisphere;
    sign[i] = l;
    membership[i] = l > 0 ? 0 : 1;
  }

  // Weighted sample of distinct pairs: M smallest exponential order keys
  // -ln(U)/w, which realizes inclusion probabilities proportional to w.
  const auto pairs = static_cast<std::size_t>(max_pairs);
  std::vector<std::pair<double, long long>> keyed(pairs);
  std::size_t idx = 0;
  for (int i = 0; i < cfg.n; ++i) {
    const auto a = static_cast<std::size_t>(i);
    for (int j = i + 1; j < cfg.n; ++j) {
      const auto b = static_cast<std::size_t>(j);
      const double d = std::hypot(xs[a] - xs[b], ys[a] - ys[b]);
      const double w =
          std::exp(cfg.beta * static_cast<double>(sign[a] * sign[b]) - d);
      const double u = rng::uniform01(gen);
      const double key = -std::log1p(-u) / w;
      keyed[idx++] = {key, static_cast<long long>(i) * cfg.n + j};
    }
  }
  const auto m = static_cast<std::size_t>(cfg.links);
  std::nth_element(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(m - 1),
                   keyed.end());
  std::vector<long long> chosen(m);
  for (std::size_t e = 0; e < m; ++e) chosen[e] = keyed[e].second;
  std::sort(chosen.begin(), chosen.end());

  std::vector<RawEdge> raw(m);
  for (std::size_t e = 0; e < m; ++e)
    raw[e] = {chosen[e] / cfg.n, chosen[e] % cfg.n, 1.0};
  out.graph = Graph::from_edges(raw, cfg.n);

  std::vector<long long> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<long long>(i);
  out.coords.set_ids(std::move(ids));
  out.coords.add_numeric_column("x", std::move(xs));
  out.coords.add_numeric_column("y", std::move(ys));

  out.planted = Partition::from_labels(out.graph, std::move(membership));
  return out;
}

namespace {

struct ReplicateScores {
  std::array<double, 5> value{};  // indexed by BenchMethod
};

ReplicateScores score_replicate(const BenchConfig& bench, const GridConfig& cfg,
                                bool want_ng, bool want_spa, bool want_dist) {
  ReplicateScores scores;
  const BenchInstance inst = generate(bench);
  const std::uint64_t base = bench.seed;

  if (want_ng) {
    NgModel ng(inst.graph);
    OptimizerConfig oc = cfg.optimizer;
    oc.seed = rng::mix(base, 101);
    const auto r = optimize(inst.graph, ng, oc);
    scores.value[static_cast<std::size_t>(BenchMethod::ng)] =
        nmi(r.partition, inst.planted);
  }
  if (!want_spa && !want_dist) return scores;

  DistanceSpec spec;
  spec.kind = DistanceKind::euclidean;
  spec.columns = {"x", "y"};
  const PairDistances distances(spec, inst.coords);
  const std::vector<double> grid =
      default_sigma_grid(KernelKind::gaussian, distances.mean());

  if (want_dist) {
    OptimizerConfig oc = cfg.optimizer;
    oc.seed = rng::mix(base, 202);
    const SweepResult sweep =
        run_sweep(inst.graph, distances, KernelKind::gaussian, grid, oc, 1);
    double high = 0.0;
    for (const SweepPoint& pt : sweep.points) {
      if (!pt.ok) continue;
      high = std::max(high, nmi(pt.partition, inst.planted));
    }
    scores.value[static_cast<std::size_t>(BenchMethod::dist_high)] = high;
    scores.value[static_cast<std::size_t>(BenchMethod::dist_cons)] =
        nmi(sweep.points[static_cast<std::size_t>(sweep.consensus)].partition,
            inst.planted);
  }

  if (want_spa) {
    // Bin-width sweep mirroring the sigma sweep: same grid, same selection.
    std::vector<Partition> parts;
    std::vector<double> taus;
    for (std::size_t t = 0; t < grid.size(); ++t) {
      const auto model = build_spa_model(inst.graph, distances, grid[t]);
      OptimizerConfig oc = cfg.optimizer;
      oc.seed = rng::mix(rng::mix(base, 303), static_cast<std::uint64_t>(t));
      auto r = optimize(inst.graph, *model, oc);
      parts.push_back(std::move(r.partition));
      taus.push_back(grid[t]);
    }
    double high = 0.0;
    std::vector<const Partition*> ptrs;
    ptrs.reserve(parts.size());
    for (const Partition& p : parts) {
      high = std::max(high, nmi(p, inst.planted));
      ptrs.push_back(&p);
    }
    const auto [iavg, best] = consensus_select(ptrs, taus);
    scores.value[static_cast<std::size_t>(BenchMethod::spa_high)] = high;
    scores.value[static_cast<std::size_t>(BenchMethod::spa_cons)] =
        nmi(parts[static_cast<std::size_t>(best)], inst.planted);
  }
  return scores;
}

}  // namespace

GridResult grid_experiment(const std::vector<double>& epsilons,
                           const std::vector<double>& betas, int replicates,
                           const std::vector<BenchMethod>& methods,
                           const GridConfig& cfg) {
  if (epsilons.empty() || betas.empty()) throw input_error("empty grid axes");
  if (replicates < 1) throw input_error("replicates must be >= 1");
  if (methods.empty()) throw input_error("no methods requested");

  bool want_ng = false, want_spa = false, want_dist = false;
  for (BenchMethod m : methods) {
    want_ng = want_ng || m == BenchMethod::ng;
    want_spa = want_spa || m == BenchMethod::spa_high || m == BenchMethod::spa_cons;
    want_dist = want_dist || m == BenchMethod::dist_high || m == BenchMethod::dist_cons;
  }

  GridResult result;
  result.epsilons = epsilons;
  result.betas = betas;
  result.methods = methods;
  result.replicates = replicates;

  const std::size_t cells = epsilons.size() * betas.size();
  const std::size_t tasks = cells * static_cast<std::size_t>(replicates);
  std::vector<ReplicateScores> all(tasks);

  for (double eps : epsilons)
    for (double beta : betas)
      for (std::string& w : bench_range_warnings(eps, beta))
        result.warnings.push_back(std::move(w));

  parallel_for(static_cast<int>(tasks), cfg.threads, [&](int t) {
    const auto task = static_cast<std::size_t>(t);
    const std::size_t cell = task / static_cast<std::size_t>(replicates);
    const auto rep = static_cast<std::uint64_t>(
        task % static_cast<std::size_t>(replicates));
    BenchConfig bench;
    bench.n = cfg.n;
    bench.links = cfg.links;
    bench.eps = epsilons[cell / betas.size()];
    bench.beta = betas[cell % betas.size()];
    bench.seed = rng::mix(cfg.seed, rng::mix(cell, rep));
    all[task] = score_replicate(bench, cfg, want_ng, want_spa, want_dist);
  });

  result.mean_nmi.assign(methods.size() * cells, 0.0);
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    const auto method = static_cast<std::size_t>(methods[mi]);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      double sum = 0.0;
      for (int rep = 0; rep < replicates; ++rep)
        sum += all[cell * static_cast<std::size_t>(replicates) +
                   static_cast<std::size_t>(rep)]
                   .value[method];
      result.mean_nmi[mi * cells + cell] = sum / static_cast<double>(replicates);
    }
  }
  return result;
}

}  // namespace distmod
