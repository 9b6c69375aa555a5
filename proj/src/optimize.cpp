#include "distmod/optimize.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "distmod/rng.hpp"

namespace distmod {

namespace {
const std::array<std::pair<Algorithm, std::string>, 2> kAlgorithmNames{{
    {Algorithm::lpam_plus, "lpamplus"},
    {Algorithm::louvain, "louvain"},
}};
}  // namespace

const std::string& algorithm_name(Algorithm a) {
  for (const auto& [k, name] : kAlgorithmNames)
    if (k == a) return name;
  return kAlgorithmNames[0].second;
}

Algorithm algorithm_from_name(const std::string& name) {
  for (const auto& [k, n] : kAlgorithmNames)
    if (n == name) return k;
  throw input_error("unknown algorithm '" + name + "'");
}

namespace {

// Sweeps until one full pass gains less than min_gain_2m or the shared
// sweep budget runs out. Visit order is reshuffled every sweep. A stalled
// sweep tries one community carve-out before giving up, since over-merged
// states cannot be unwound one node at a time.
void propagate(const Graph& g, CommunityAggregates& aggs, Partition& p,
               std::mt19937_64& gen, int& sweeps_used, int max_sweeps,
               double min_gain_2m, bool& any_move) {
  std::vector<int> order(static_cast<std::size_t>(g.size()));
  std::iota(order.begin(), order.end(), 0);
  while (sweeps_used < max_sweeps) {
    rng::shuffle(order, gen);
    double sweep_gain = 0.0;
    for (int i : order) {
      const auto mv = aggs.best_move(p, i);
      if (mv.gain_times_total > 0.0) {
        aggs.apply_move(p, i, mv.label);
        sweep_gain += mv.gain_times_total;
        any_move = true;
      }
    }
    ++sweeps_used;
    if (sweep_gain >= min_gain_2m) continue;
    const auto ex = aggs.best_pair_move(p);
    if (ex.gain_times_total <= 0.0) break;
    aggs.apply_pair_move(p, ex);
    any_move = true;
  }
}

OptimizeResult run_lpam_plus(const Graph& g, const NullModel& model,
                             const OptimizerConfig& cfg, Partition p) {
  CommunityAggregates aggs(g, model, p);
  std::mt19937_64 gen(cfg.seed);
  const double min_gain_2m = cfg.min_sweep_gain * g.total_weight();
  int sweeps = 0;
  for (;;) {
    bool any = false;
    propagate(g, aggs, p, gen, sweeps, cfg.max_sweeps, min_gain_2m, any);
    if (sweeps >= cfg.max_sweeps) break;
    const auto mg = aggs.best_merge(p);
    if (mg.gain_times_total <= 0.0) break;
    aggs.apply_merge(p, mg.into, mg.from);
  }
  const double q = aggs.q_times_total(p) / g.total_weight();
  return {std::move(p), q, sweeps};
}

// Collapses communities into block nodes; the coarse null model is exact
// (NG re-derives from coarse strengths; anything else gets its P blocks
// summed), so Q is preserved across levels.
std::pair<Graph, std::unique_ptr<NullModel>> aggregate(const Graph& g,
                                                       const NullModel& model,
                                                       const std::vector<int>& compact,
                                                       int c) {
  const auto cc = static_cast<std::size_t>(c);
  std::vector<double> blocks(cc * cc, 0.0);
  for (int i = 0; i < g.size(); ++i) {
    const auto ci = static_cast<std::size_t>(compact[static_cast<std::size_t>(i)]);
    for (const Neighbor& nb : g.neighbors(i))
      blocks[ci * cc + static_cast<std::size_t>(
                           compact[static_cast<std::size_t>(nb.node)])] += nb.weight;
  }
  std::vector<std::vector<Neighbor>> adj(cc);
  for (std::size_t a = 0; a < cc; ++a)
    for (std::size_t b = 0; b < cc; ++b)
      if (blocks[a * cc + b] != 0.0)
        adj[a].push_back({static_cast<int>(b), blocks[a * cc + b]});
  Graph coarse = Graph::from_matrix_adjacency(std::move(adj));

  std::unique_ptr<NullModel> coarse_model;
  if (dynamic_cast<const NgModel*>(&model)) {
    coarse_model = std::make_unique<NgModel>(coarse);
  } else {
    std::vector<double> p_blocks(cc * cc, 0.0);
    for (int i = 0; i < g.size(); ++i) {
      const auto ci = static_cast<std::size_t>(compact[static_cast<std::size_t>(i)]);
      const double* row = model.dense_row(i);
      for (int j = 0; j < g.size(); ++j)
        p_blocks[ci * cc + static_cast<std::size_t>(
                               compact[static_cast<std::size_t>(j)])] +=
            row ? row[j] : model.expected(i, j);
    }
    coarse_model = std::make_unique<MatrixModel>(model.kind(), c, std::move(p_blocks));
  }
  return {std::move(coarse), std::move(coarse_model)};
}

Partition random_labels(const Graph& g, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const auto span = static_cast<std::uint64_t>(std::max(1, g.size() - 1));
  const int k = 2 + static_cast<int>(rng::uniform_below(gen, span));
  std::vector<int> labels(static_cast<std::size_t>(g.size()));
  for (int& l : labels)
    l = static_cast<int>(rng::uniform_below(gen, static_cast<std::uint64_t>(k)));
  return Partition::from_labels(g, labels);
}

OptimizeResult run_louvain(const Graph& g, const NullModel& model,
                           const OptimizerConfig& cfg) {
  std::mt19937_64 gen(cfg.seed);
  const double min_gain_2m = cfg.min_sweep_gain * g.total_weight();
  std::vector<int> flat(static_cast<std::size_t>(g.size()));
  std::iota(flat.begin(), flat.end(), 0);

  Graph level_graph;
  std::unique_ptr<NullModel> level_model;
  const Graph* cur_g = &g;
  const NullModel* cur_m = &model;
  int sweeps = 0;
  for (;;) {
    Partition p = Partition::singletons(*cur_g);
    CommunityAggregates aggs(*cur_g, *cur_m, p);
    bool any = false;
    propagate(*cur_g, aggs, p, gen, sweeps, cfg.max_sweeps, min_gain_2m, any);
    const std::vector<int> compact = p.compact_labels();
    for (int& l : flat) l = compact[static_cast<std::size_t>(l)];
    const int c = p.community_count();
    if (!any || c == cur_g->size() || sweeps >= cfg.max_sweeps) break;
    auto [coarse, coarse_model] = aggregate(*cur_g, *cur_m, compact, c);
    level_graph = std::move(coarse);
    level_model = std::move(coarse_model);
    cur_g = &level_graph;
    cur_m = level_model.get();
  }

  Partition final_p = Partition::from_labels(g, std::move(flat));
  const double q = modularity(g, model, final_p);
  return {std::move(final_p), q, sweeps};
}

}  // namespace

OptimizeResult optimize(const Graph& g, const NullModel& model,
                        const OptimizerConfig& cfg) {
  if (g.total_weight() <= 0.0) throw degeneracy_error("graph has no edges");
  if (model.size() != g.size())
    throw input_error("null model size does not match graph");
  if (cfg.max_sweeps < 1) throw input_error("sweep budget must be >= 1");
  if (cfg.min_sweep_gain <= 0.0) throw input_error("sweep gain threshold must be > 0");
  if (cfg.restarts < 1) throw input_error("restart count must be >= 1");

  OptimizeResult best;
  for (int r = 0; r < cfg.restarts; ++r) {
    OptimizerConfig run_cfg = cfg;
    run_cfg.seed = rng::mix(cfg.seed, static_cast<std::uint64_t>(r));
    OptimizeResult res;
    if (cfg.algorithm == Algorithm::lpam_plus) {
      // The first restart keeps the canonical singleton start; later ones
      // begin from coarse random partitions, because best-gain sweeps from
      // singletons land in the same attractor whatever the visit order.
      Partition init = r == 0 ? Partition::singletons(g)
                              : random_labels(g, rng::mix(run_cfg.seed, 1));
      res = run_lpam_plus(g, model, run_cfg, std::move(init));
    } else {
      res = run_louvain(g, model, run_cfg);
    }
    if (r == 0 || res.q > best.q) best = std::move(res);
  }
  return best;
}

std::pair<Partition, double> exhaustive_best_partition(const Graph& g,
                                                       const NullModel& model) {
  const int n = g.size();
  if (n > 12) throw input_error("exhaustive enumeration is limited to n <= 12");
  if (g.total_weight() <= 0.0) throw degeneracy_error("graph has no edges");

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::vector<int> best_labels;
  double best_q = 0.0;
  int best_c = 0;

  // Restricted-growth enumeration: labels[i] <= 1 + max(labels[0..i-1]).
  const auto consider = [&] {
    Partition p = Partition::from_labels(g, labels);
    const double q = modularity(g, model, p);
    const int c = p.community_count();
    if (best_labels.empty() || q > best_q + 1e-12 ||
        (q > best_q - 1e-12 && c < best_c)) {
      best_labels = labels;
      best_q = q;
      best_c = c;
    }
  };
  const auto recurse = [&](auto&& self, int i, int max_used) -> void {
    if (i == n) {
      consider();
      return;
    }
    for (int l = 0; l <= max_used; ++l) {
      labels[static_cast<std::size_t>(i)] = l;
      self(self, i + 1, std::max(max_used, l + 1));
    }
  };
  recurse(recurse, 0, 0);

  Partition best = Partition::from_labels(g, std::move(best_labels));
  return {std::move(best), best_q};
}

}  // namespace distmod
