#pragma once

#include <string>
#include <vector>

#include "distmod/attributes.hpp"
#include "distmod/distance.hpp"
#include "distmod/graph.hpp"
#include "distmod/null_models.hpp"

namespace distmod {

// Observed and model-expected link weight totals per distance bin.
// Bin k covers [edges[k], edges[k+1]), the last bin closes on the right.
// Sums run over ordered node pairs including the diagonal, so each
// conservation-satisfying column totals 2m.
struct EffectCurve {
  std::vector<double> bin_edges;                // B + 1 edges
  std::vector<double> observed;                 // B
  std::vector<std::string> model_names;
  std::vector<std::vector<double>> expected;    // one column per model, B each
};

EffectCurve effect_curve(const Graph& g, const PairDistances& distances,
                         const std::vector<double>& bin_edges,
                         const std::vector<const NullModel*>& models,
                         const std::vector<std::string>& model_names);

// count equal-width bins over [0, max_distance]; max_distance 0 yields a
// single degenerate bin.
std::vector<double> equal_width_bins(double max_distance, int count = 20);
// One bin per distinct distance value (for discrete distances).
std::vector<double> distinct_value_bins(const PairDistances& distances);

struct ChiSquaredResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

// Pearson chi-squared independence test over the contingency table of two
// code vectors. yates subtracts 0.5 (clamped) from each |O - E|.
ChiSquaredResult chi_squared_independence(const std::vector<int>& codes_a,
                                          const std::vector<int>& codes_b,
                                          bool yates = false);
// Convenience: codes drawn from two table columns (categorical columns use
// category codes; numeric columns treat each distinct value as a category).
ChiSquaredResult chi_squared_independence(const AttributeTable& attrs,
                                          const std::string& column_a,
                                          const std::string& column_b,
                                          bool yates = false);

// Regularized upper incomplete gamma Q(a, x), absolute error < 1e-8,
// via the series for small x and a continued fraction otherwise.
double regularized_gamma_q(double a, double x);

}  // namespace distmod
