#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "distmod/attributes.hpp"
#include "distmod/graph.hpp"
#include "distmod/optimize.hpp"

namespace distmod {

// Synthetic spatial benchmark: two mirrored point clouds whose planted
// membership correlates with the hemisphere through eps, and whose links
// prefer same-membership, nearby pairs through beta.
struct BenchConfig {
  int n = 100;        // even
  double eps = 0.1;   // P(label flips against the hemisphere)
  double beta = 1.0;  // membership effect strength in the link propensity
  int links = 500;    // exact number of edges
  std::uint64_t seed = 1;
};

struct BenchInstance {
  Graph graph;             // unit weights, node ids 0..n-1
  AttributeTable coords;   // numeric columns x, y
  Partition planted;       // community 0 = label +1, community 1 = label -1
  std::vector<std::string> warnings;
};

// Nodes 0..n/2-1 are sampled in {-1<x<1, 0<y<2} with density exp(-d) to
// (0, 1) by rejection; the rest mirror that around (0, -1). Labels follow
// sgn(y) and flip with probability eps. The links are a weighted sample
// of `links` distinct unordered pairs with propensity
// exp(beta * l_i * l_j - d_ij).
BenchInstance generate(const BenchConfig& cfg);

enum class BenchMethod { ng, spa_high, spa_cons, dist_high, dist_cons };

const std::string& bench_method_name(BenchMethod m);
BenchMethod bench_method_from_name(const std::string& name);

// Advisory messages for parameters outside the calibrated benchmark ranges.
std::vector<std::string> bench_range_warnings(double eps, double beta);

struct GridConfig {
  int n = 100;
  int links = 500;
  std::uint64_t seed = 1;
  int threads = 1;
  OptimizerConfig optimizer;
};

struct GridResult {
  std::vector<double> epsilons;
  std::vector<double> betas;
  std::vector<BenchMethod> methods;
  int replicates = 0;
  // mean NMI against the planted partition, indexed
  // [method][eps_index][beta_index] flattened row-major.
  std::vector<double> mean_nmi;
  std::vector<std::string> warnings;

  double mean(std::size_t method, std::size_t e, std::size_t b) const {
    return mean_nmi[(method * epsilons.size() + e) * betas.size() + b];
  }
};

// For every (eps, beta) cell: generate `replicates` instances and score
// each requested method's partition against the planted one. NG optimizes
// the configuration model; Dist sweeps a gaussian kernel over the default
// sigma grid; Spa sweeps its bin width over the same grid. High picks the
// best NMI across the sweep, Cons the consensus partition's NMI.
GridResult grid_experiment(const std::vector<double>& epsilons,
                           const std::vector<double>& betas, int replicates,
                           const std::vector<BenchMethod>& methods,
                           const GridConfig& cfg);

}  // namespace distmod
