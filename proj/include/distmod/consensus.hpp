#pragma once

#include <string>
#include <vector>

#include "distmod/distance.hpp"
#include "distmod/graph.hpp"
#include "distmod/kernels.hpp"
#include "distmod/optimize.hpp"

namespace distmod {

// Normalized mutual information between two labelings of the same nodes,
// in [0, 1]. Arbitrary non-negative label values are accepted. Both
// labelings being all-in-one gives 1; one all-in-one against anything
// else gives 0.
double nmi_labels(const std::vector<int>& a, const std::vector<int>& b);
double nmi(const Partition& a, const Partition& b);

struct SweepPoint {
  double sigma = 0.0;
  bool ok = false;
  Partition partition;   // valid when ok
  double q = 0.0;
  int communities = 0;
  double iavg = 0.0;     // summed NMI against the other surviving points
  std::string error;     // failure reason when !ok
};

struct SweepResult {
  std::vector<SweepPoint> points;
  // Row-major s x s NMI matrix; entries touching failed points are -1.
  std::vector<double> nmi_matrix;
  int consensus = -1;  // index into points
  std::vector<std::string> warnings;
};

// Builds a Dist model at every sigma in the grid, optimizes each, and
// selects the consensus partition maximizing the summed pairwise NMI.
// Points whose model cannot be built (kernel underflow) are excluded with
// a warning; ties go to the smallest sigma. Per-point optimizer seeds are
// derived from cfg.seed and the grid index, so results do not depend on
// thread count.
SweepResult run_sweep(const Graph& g, const PairDistances& distances,
                      KernelKind kind, const std::vector<double>& sigmas,
                      const OptimizerConfig& cfg, int threads = 1);

// Same selection applied to partitions already computed elsewhere (one
// per parameter value). Returns per-point iavg and the consensus index.
std::pair<std::vector<double>, int> consensus_select(
    const std::vector<const Partition*>& partitions,
    const std::vector<double>& params);

// gaussian/reciprocal/threshold: 20 points 0.1*dbar .. 2.0*dbar.
// two-level step: {0, 0.05, 0.10, 0.15, 0.20, 0.25}.
// Parameter-free kernels are rejected.
std::vector<double> default_sigma_grid(KernelKind kind, double dbar);

}  // namespace distmod
