#pragma once

#include <string>
#include <vector>

#include "distmod/errors.hpp"

namespace distmod {

// One undirected edge as read from input, before id densification.
struct RawEdge {
  long long u = 0;
  long long v = 0;
  double w = 1.0;
};

// Unique undirected edge between dense ids, u <= v, weights accumulated.
struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

struct Neighbor {
  int node = 0;
  double weight = 0.0;  // adjacency entry A_ij; a self-loop of weight w stores A_ii = 2w
};

// Undirected weighted graph over dense node ids 0..n-1.
//
// The adjacency follows the matrix convention: a self-loop of raw weight w
// appears as a single diagonal entry A_ii = 2w, so node strengths are plain
// row sums and the strengths always add up to the total weight 2m.
class Graph {
public:
  // Builds a graph from raw edges. Duplicate and reversed pairs are summed
  // into one undirected edge. With declared_nodes == 0, node ids are the
  // distinct endpoint ids, densified in ascending order. With
  // declared_nodes > 0 the id space is exactly 0..declared_nodes-1 (nodes
  // without edges stay isolated) and out-of-range endpoints are rejected.
  static Graph from_edges(const std::vector<RawEdge>& raw,
                          long long declared_nodes = 0);

  // Reads a whitespace-separated edge list: "u v [w]" per line, '#' starts
  // a comment, a missing weight means 1.0.
  static Graph load_edge_list(const std::string& path,
                              long long declared_nodes = 0);

  // Builds a graph whose adjacency lists are already in matrix convention
  // (diagonal entries doubled). Used when collapsing communities into
  // block nodes; original ids are 0..n-1.
  static Graph from_matrix_adjacency(std::vector<std::vector<Neighbor>> adj);

  int size() const { return n_; }
  double total_weight() const { return two_m_; }  // 2m
  double strength(int i) const { return strength_[static_cast<std::size_t>(i)]; }
  const std::vector<Neighbor>& neighbors(int i) const {
    return adj_[static_cast<std::size_t>(i)];
  }
  // Diagonal adjacency entry A_ii (twice the raw self-loop weight).
  double self_loop(int i) const;
  // Unique undirected edges with raw accumulated weights.
  const std::vector<Edge>& edges() const { return edges_; }

  long long original_id(int i) const {
    return original_ids_[static_cast<std::size_t>(i)];
  }
  const std::vector<long long>& original_ids() const { return original_ids_; }
  // Dense id for an original id, or -1 when the node is unknown.
  int dense_id(long long original) const;

private:
  int n_ = 0;
  double two_m_ = 0.0;
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<double> strength_;
  std::vector<Edge> edges_;
  std::vector<long long> original_ids_;  // ascending
};

// Node labelling plus maintained per-community aggregates. Labels live in
// the fixed space 0..n-1 and are never renumbered while moves are applied;
// compact_labels() renumbers by first appearance for output.
class Partition {
public:
  static Partition singletons(const Graph& g);
  // labels[i] in 0..n-1; aggregates are computed from scratch.
  static Partition from_labels(const Graph& g, std::vector<int> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  int label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& labels() const { return labels_; }
  int community_count() const { return communities_; }

  // Sum of strengths over members of label l.
  double community_strength(int l) const {
    return strength_[static_cast<std::size_t>(l)];
  }
  // Sum of A_ij over ordered member pairs of label l, diagonal included.
  double community_internal(int l) const {
    return internal_[static_cast<std::size_t>(l)];
  }
  int community_size(int l) const { return sizes_[static_cast<std::size_t>(l)]; }

  // Reassigns node i, updating all aggregates incrementally.
  void move(const Graph& g, int i, int new_label);
  // Relabels every member of `from` as `into`, folding the aggregates.
  void merge(const Graph& g, int into, int from);

  // Labels renumbered to 0..c-1 in order of first appearance.
  std::vector<int> compact_labels() const;
  // Member lists indexed by label (empty vectors for unused labels).
  std::vector<std::vector<int>> member_lists() const;

private:
  std::vector<int> labels_;
  std::vector<double> strength_;
  std::vector<double> internal_;
  std::vector<int> sizes_;
  int communities_ = 0;
};

}  // namespace distmod
