#include "distmod/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "distmod/null_models.hpp"
#include "distmod/parallel.hpp"
#include "distmod/rng.hpp"

namespace distmod {

namespace {

// Compacts arbitrary labels to 0..c-1 by first appearance.
std::vector<int> compact(const std::vector<int>& labels, int& count) {
  std::vector<int> out(labels.size());
  std::vector<int> remap;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int l = labels[i];
    if (l < 0) throw input_error("negative community label");
    if (static_cast<std::size_t>(l) >= remap.size())
      remap.resize(static_cast<std::size_t>(l) + 1, -1);
    if (remap[static_cast<std::size_t>(l)] < 0)
      remap[static_cast<std::size_t>(l)] = count++;
    out[i] = remap[static_cast<std::size_t>(l)];
  }
  return out;
}

}  // namespace

double nmi_labels(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw input_error("partitions cover different node sets");
  if (a.empty()) throw input_error("empty partitions");
  const auto n = static_cast<double>(a.size());

  int ca = 0, cb = 0;
  const std::vector<int> la = compact(a, ca);
  const std::vector<int> lb = compact(b, cb);
  if (ca == 1 && cb == 1) return 1.0;

  // Contingency counts via sorted (row, col) pairs; avoids dense ca x cb.
  std::vector<std::pair<int, int>> cells(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) cells[i] = {la[i], lb[i]};
  std::sort(cells.begin(), cells.end());

  std::vector<double> row(static_cast<std::size_t>(ca), 0.0);
  std::vector<double> col(static_cast<std::size_t>(cb), 0.0);
  for (const auto& [r, c] : cells) {
    row[static_cast<std::size_t>(r)] += 1.0;
    col[static_cast<std::size_t>(c)] += 1.0;
  }

  double numer = 0.0;
  bool bijection = true;
  for (std::size_t i = 0; i < cells.size();) {
    std::size_t j = i;
    while (j < cells.size() && cells[j] == cells[i]) ++j;
    const auto count = static_cast<double>(j - i);
    const double r = row[static_cast<std::size_t>(cells[i].first)];
    const double c = col[static_cast<std::size_t>(cells[i].second)];
    bijection = bijection && count == r && count == c;
    numer += count * std::log(count * n / (r * c));
    i = j;
  }
  // A diagonal contingency means the partitions agree up to relabeling,
  // where the two log sums only cancel to rounding error.
  if (bijection) return 1.0;

  double denom = 0.0;
  for (double r : row) denom += r * std::log(r / n);
  for (double c : col) denom += c * std::log(c / n);
  if (denom == 0.0) return 1.0;
  const double value = -2.0 * numer / denom;
  // Clamp float residue at the ends of the valid range.
  return std::min(1.0, std::max(0.0, value));
}

double nmi(const Partition& a, const Partition& b) {
  return nmi_labels(a.labels(), b.labels());
}

std::pair<std::vector<double>, int> consensus_select(
    const std::vector<const Partition*>& partitions,
    const std::vector<double>& params) {
  if (partitions.size() != params.size())
    throw input_error("consensus selection: partitions and params disagree");
  const std::size_t s = partitions.size();
  std::vector<double> iavg(s, 0.0);
  if (s == 0) return {iavg, -1};
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j) {
      const double v = nmi(*partitions[i], *partitions[j]);
      iavg[i] += v;
      iavg[j] += v;
    }
  int best = 0;
  for (std::size_t i = 1; i < s; ++i) {
    if (iavg[i] > iavg[best] ||
        (iavg[i] == iavg[best] && params[i] < params[best]))
      best = static_cast<int>(i);
  }
  return {iavg, best};
}

SweepResult run_sweep(const Graph& g, const PairDistances& distances,
                      KernelKind kind, const std::vector<double>& sigmas,
                      const OptimizerConfig& cfg, int threads) {
  if (sigmas.empty()) throw input_error("sweep grid is empty");
  const auto s = sigmas.size();

  SweepResult result;
  result.points.resize(s);
  parallel_for(static_cast<int>(s), threads, [&](int idx) {
    const auto i = static_cast<std::size_t>(idx);
    SweepPoint& pt = result.points[i];
    pt.sigma = sigmas[i];
    try {
      const KernelSpec kernel = make_kernel(kind, sigmas[i]);
      const auto model = build_dist_model(g, distances, kernel);
      OptimizerConfig point_cfg = cfg;
      point_cfg.seed = rng::mix(cfg.seed, static_cast<std::uint64_t>(i));
      auto opt = optimize(g, *model, point_cfg);
      pt.partition = std::move(opt.partition);
      pt.q = opt.q;
      pt.communities = pt.partition.community_count();
      pt.ok = true;
    } catch (const degeneracy_error& e) {
      pt.error = e.what();
    } catch (const input_error& e) {
      pt.error = e.what();
    }
  });

  bool any_ok = false;
  for (std::size_t i = 0; i < s; ++i) {
    if (result.points[i].ok) {
      any_ok = true;
    } else {
      std::ostringstream os;
      os << "sigma = " << result.points[i].sigma
         << " excluded from the sweep: " << result.points[i].error;
      result.warnings.push_back(os.str());
    }
  }
  if (!any_ok) throw degeneracy_error("every sweep grid point failed");

  result.nmi_matrix.assign(s * s, -1.0);
  for (std::size_t i = 0; i < s; ++i) {
    if (!result.points[i].ok) continue;
    result.nmi_matrix[i * s + i] = 1.0;
    for (std::size_t j = i + 1; j < s; ++j) {
      if (!result.points[j].ok) continue;
      const double v = nmi(result.points[i].partition, result.points[j].partition);
      result.nmi_matrix[i * s + j] = v;
      result.nmi_matrix[j * s + i] = v;
      result.points[i].iavg += v;
      result.points[j].iavg += v;
    }
  }

  int best = -1;
  for (std::size_t i = 0; i < s; ++i) {
    const SweepPoint& pt = result.points[i];
    if (!pt.ok) continue;
    if (best < 0 || pt.iavg > result.points[static_cast<std::size_t>(best)].iavg ||
        (pt.iavg == result.points[static_cast<std::size_t>(best)].iavg &&
         pt.sigma < result.points[static_cast<std::size_t>(best)].sigma))
      best = static_cast<int>(i);
  }
  result.consensus = best;
  return result;
}

std::vector<double> default_sigma_grid(KernelKind kind, double dbar) {
  if (!kernel_has_parameter(kind))
    throw input_error("kernel '" + kernel_name(kind) + "' has no parameter to sweep");
  std::vector<double> grid;
  if (kernel_sigma_is_distance(kind)) {
    if (!(dbar > 0.0))
      throw degeneracy_error("mean pairwise distance is zero; "
                             "a distance-scaled grid is undefined");
    for (int i = 1; i <= 20; ++i)
      grid.push_back(dbar * (static_cast<double>(i) / 10.0));
  } else {
    for (int i = 0; i <= 5; ++i)
      grid.push_back(static_cast<double>(i) * 0.05);
  }
  return grid;
}

}  // namespace distmod
