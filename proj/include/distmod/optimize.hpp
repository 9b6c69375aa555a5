#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "distmod/graph.hpp"
#include "distmod/modularity.hpp"
#include "distmod/null_models.hpp"

namespace distmod {

enum class Algorithm { lpam_plus, louvain };

const std::string& algorithm_name(Algorithm a);
// CLI vocabulary: lpamplus, louvain.
Algorithm algorithm_from_name(const std::string& name);

struct OptimizerConfig {
  Algorithm algorithm = Algorithm::lpam_plus;
  std::uint64_t seed = 1;
  // Total budget of propagation sweeps across all phases and levels,
  // per restart.
  int max_sweeps = 100;
  // Stop propagating when a full sweep gains less than this much Q.
  double min_sweep_gain = 1e-10;
  // Independent runs with visit orders derived from seed; the best Q wins.
  // Both heuristics only escape local optima through visit-order luck, so
  // a single run can stall a few percent below the global optimum even on
  // tiny graphs.
  int restarts = 8;
};

struct OptimizeResult {
  Partition partition;
  double q = 0.0;
  int sweeps = 0;
};

// Maximizes Q over partitions. lpam_plus: label propagation from
// singletons, with the best positive community merge applied whenever
// propagation stalls. louvain: propagation plus community aggregation
// into block nodes, repeated until no level improves.
OptimizeResult optimize(const Graph& g, const NullModel& model,
                        const OptimizerConfig& cfg);

// Global maximum by enumerating all set partitions (n <= 12). Ties go to
// fewer communities, then to the earlier partition in lexicographic
// restricted-growth order.
std::pair<Partition, double> exhaustive_best_partition(const Graph& g,
                                                       const NullModel& model);

}  // namespace distmod
