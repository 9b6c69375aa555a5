#include "distmod/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace distmod {

namespace {

std::size_t bin_index(const std::vector<double>& edges, double d) {
  // Last bin is right-closed so d == edges.back() stays in range.
  const auto it = std::upper_bound(edges.begin(), edges.end(), d);
  const auto raw = static_cast<std::size_t>(it - edges.begin());
  const std::size_t bins = edges.size() - 1;
  if (raw == 0) return 0;          // d == edges.front() handled by upper_bound > d
  return std::min(raw - 1, bins - 1);
}

}  // namespace

EffectCurve effect_curve(const Graph& g, const PairDistances& distances,
                         const std::vector<double>& bin_edges,
                         const std::vector<const NullModel*>& models,
                         const std::vector<std::string>& model_names) {
  if (distances.size() != g.size())
    throw input_error("distance table size does not match graph");
  if (bin_edges.size() < 2) throw input_error("need at least two bin edges");
  for (std::size_t k = 1; k < bin_edges.size(); ++k)
    if (!(bin_edges[k] > bin_edges[k - 1]))
      throw input_error("bin edges must be strictly increasing");
  if (bin_edges.front() > 0.0 || bin_edges.back() < distances.max())
    throw input_error("bins do not cover the distance range");
  if (models.size() != model_names.size())
    throw input_error("model list and name list disagree");
  for (const NullModel* m : models)
    if (m->size() != g.size())
      throw input_error("null model size does not match graph");

  EffectCurve curve;
  curve.bin_edges = bin_edges;
  const std::size_t bins = bin_edges.size() - 1;
  curve.observed.assign(bins, 0.0);
  curve.model_names = model_names;
  curve.expected.assign(models.size(), std::vector<double>(bins, 0.0));

  for (int i = 0; i < g.size(); ++i)
    for (const Neighbor& nb : g.neighbors(i))
      curve.observed[bin_index(bin_edges, distances(i, nb.node))] += nb.weight;

  for (std::size_t m = 0; m < models.size(); ++m) {
    std::vector<double>& exp_col = curve.expected[m];
    for (int i = 0; i < g.size(); ++i) {
      const double* row = models[m]->dense_row(i);
      for (int j = 0; j < g.size(); ++j)
        exp_col[bin_index(bin_edges, distances(i, j))] +=
            row ? row[j] : models[m]->expected(i, j);
    }
  }
  return curve;
}

std::vector<double> equal_width_bins(double max_distance, int count) {
  if (count < 1) throw input_error("bin count must be >= 1");
  if (max_distance < 0.0) throw input_error("max distance must be >= 0");
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(count) + 1);
  if (max_distance == 0.0) return {0.0, 1.0};
  // max * k / count can round below max at k == count, so pin the last edge.
  for (int k = 0; k < count; ++k)
    edges.push_back(max_distance * static_cast<double>(k) /
                    static_cast<double>(count));
  edges.push_back(max_distance);
  return edges;
}

std::vector<double> distinct_value_bins(const PairDistances& distances) {
  std::set<double> values;
  const int n = distances.size();
  values.insert(0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) values.insert(distances(i, j));
  std::vector<double> sorted(values.begin(), values.end());
  std::vector<double> edges;
  edges.reserve(sorted.size() + 1);
  edges.push_back(sorted.front());
  for (std::size_t k = 1; k < sorted.size(); ++k)
    edges.push_back(0.5 * (sorted[k - 1] + sorted[k]));
  edges.push_back(sorted.back() == 0.0 ? 1.0 : sorted.back());
  return edges;
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw input_error("regularized gamma needs a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  const double log_prefix = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1.0) {
    // Lower series: P(a, x) = e^{-x} x^a / Gamma(a) * Sigma x^k / (a)_{k+1}.
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int k = 0; k < 1000; ++k) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return 1.0 - sum * std::exp(log_prefix);
  }
  // Lentz continued fraction for Q(a, x).
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int k = 1; k <= 1000; ++k) {
    const double an = -static_cast<double>(k) * (static_cast<double>(k) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(log_prefix) * h;
}

ChiSquaredResult chi_squared_independence(const std::vector<int>& codes_a,
                                          const std::vector<int>& codes_b,
                                          bool yates) {
  if (codes_a.size() != codes_b.size())
    throw input_error("attribute vectors cover different node sets");
  if (codes_a.empty()) throw input_error("empty attribute vectors");

  int rows = 0, cols = 0;
  for (int v : codes_a) {
    if (v < 0) throw input_error("negative category code");
    rows = std::max(rows, v + 1);
  }
  for (int v : codes_b) {
    if (v < 0) throw input_error("negative category code");
    cols = std::max(cols, v + 1);
  }
  const auto r = static_cast<std::size_t>(rows);
  const auto c = static_cast<std::size_t>(cols);
  std::vector<double> table(r * c, 0.0), row_sum(r, 0.0), col_sum(c, 0.0);
  for (std::size_t i = 0; i < codes_a.size(); ++i) {
    const auto ra = static_cast<std::size_t>(codes_a[i]);
    const auto cb = static_cast<std::size_t>(codes_b[i]);
    table[ra * c + cb] += 1.0;
    row_sum[ra] += 1.0;
    col_sum[cb] += 1.0;
  }
  // Categories that never occur would make expected counts zero; they can
  // only arise from code vectors with gaps.
  int used_rows = 0, used_cols = 0;
  for (double v : row_sum) used_rows += v > 0.0 ? 1 : 0;
  for (double v : col_sum) used_cols += v > 0.0 ? 1 : 0;
  if (used_rows != rows || used_cols != cols)
    throw input_error("category codes contain unused values");
  if (rows < 2 || cols < 2)
    throw input_error("contingency table is degenerate (single row or column)");

  const auto total = static_cast<double>(codes_a.size());
  double statistic = 0.0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      const double expected = row_sum[i] * col_sum[j] / total;
      double diff = std::abs(table[i * c + j] - expected);
      if (yates) diff = std::max(0.0, diff - 0.5);
      statistic += diff * diff / expected;
    }
  const int dof = (rows - 1) * (cols - 1);
  ChiSquaredResult result;
  result.statistic = statistic;
  result.dof = dof;
  result.p_value = statistic == 0.0
                       ? 1.0
                       : regularized_gamma_q(static_cast<double>(dof) / 2.0,
                                             statistic / 2.0);
  return result;
}

ChiSquaredResult chi_squared_independence(const AttributeTable& attrs,
                                          const std::string& column_a,
                                          const std::string& column_b,
                                          bool yates) {
  const int ca = attrs.column_index(column_a);
  const int cb = attrs.column_index(column_b);
  if (ca < 0) throw input_error("unknown attribute column '" + column_a + "'");
  if (cb < 0) throw input_error("unknown attribute column '" + column_b + "'");
  std::vector<int> codes_a(attrs.rows()), codes_b(attrs.rows());
  for (std::size_t row = 0; row < attrs.rows(); ++row) {
    codes_a[row] = attrs.category_code(row, static_cast<std::size_t>(ca));
    codes_b[row] = attrs.category_code(row, static_cast<std::size_t>(cb));
  }
  return chi_squared_independence(codes_a, codes_b, yates);
}

}  // namespace distmod
