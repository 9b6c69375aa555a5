#pragma once

#include <vector>

#include "distmod/graph.hpp"
#include "distmod/null_models.hpp"

namespace distmod {

// Q = (1/2m) Sigma_ij (A_ij - P_ij) delta(l_i, l_j), computed from scratch.
// The double sum runs over ordered pairs including the diagonal.
double modularity(const Graph& g, const NullModel& model, const Partition& p);

// Bookkeeping that makes move and merge evaluation O(candidates): the
// n x c matrix Pbar of each node's expected weight into each community
// (self excluded), plus per-community expected internal totals. For the
// configuration model both reduce to closed forms over community
// strengths, so nothing is stored.
class CommunityAggregates {
public:
  CommunityAggregates(const Graph& g, const NullModel& model, const Partition& p);

  // Pbar_il = Sigma_{j != i, l_j = l} P_ij.
  double pbar(const Partition& p, int i, int l) const;
  // Sigma over ordered pairs inside l, diagonal included.
  double expected_internal(const Partition& p, int l) const;
  // 2m * Q, assembled from community aggregates.
  double q_times_total(const Partition& p) const;

  struct Move {
    int label = -1;
    double gain_times_total = 0.0;  // (Q_after - Q_before) * 2m
  };
  // Best relabeling of node i among its own and neighboring communities,
  // plus the option of leaving for an empty community when the node's
  // attachment runs below expectation. Ties keep the current label, then
  // prefer joining over leaving, then the smallest label id.
  Move best_move(const Partition& p, int i) const;
  void apply_move(Partition& p, int i, int new_label);

  struct Merge {
    int into = -1;
    int from = -1;
    double gain_times_total = 0.0;
  };
  // Best merge over community pairs connected by at least one edge;
  // into < from. Returns gain 0 and negative ids when no pair gains.
  Merge best_merge(const Partition& p) const;
  void apply_merge(Partition& p, int into, int from);

  struct PairMove {
    int i = -1;
    int j = -1;
    int label = -1;  // target community; -1 means a fresh empty one
    double gain_times_total = 0.0;
  };
  // Best joint relocation of an edge's endpoints, the escape dual of
  // best_merge: merges undo over-splitting, pair moves undo over-merging
  // that single-node moves cannot unwind. Co-located pairs may move to
  // any community adjacent to either endpoint or to a fresh one; split
  // pairs reunite in a fresh community. Costs O(sum of endpoint degrees)
  // over the edges. Returns gain 0 and negative ids when no pair gains.
  PairMove best_pair_move(const Partition& p) const;
  void apply_pair_move(Partition& p, const PairMove& mv);

private:
  const Graph* g_;
  const NullModel* model_;
  const NgModel* ng_;  // non-null: closed-form route
  std::vector<double> pbar_;               // n x n row-major
  std::vector<double> expected_internal_;  // per label
  mutable std::vector<double> acc_;        // scratch: per-label weight sums
  mutable std::vector<unsigned char> seen_;
  mutable std::vector<int> touched_;
};

}  // namespace distmod
