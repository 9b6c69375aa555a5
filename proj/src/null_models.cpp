#include "distmod/null_models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

namespace distmod {

namespace {
const std::array<std::pair<ModelKind, std::string>, 3> kModelNames{{
    {ModelKind::ng, "ng"},
    {ModelKind::spa, "spa"},
    {ModelKind::dist, "dist"},
}};
}  // namespace

const std::string& model_name(ModelKind kind) {
  for (const auto& [k, name] : kModelNames)
    if (k == kind) return name;
  return kModelNames[0].second;
}

ModelKind model_from_name(const std::string& name) {
  for (const auto& [k, n] : kModelNames)
    if (n == name) return k;
  throw input_error("unknown model '" + name + "'");
}

double NullModel::expected_degree(int i) const {
  double sum = 0.0;
  for (int j = 0; j < size(); ++j) sum += expected(i, j);
  return sum;
}

double NullModel::expected_total() const {
  double sum = 0.0;
  for (int i = 0; i < size(); ++i) sum += expected_degree(i);
  return sum;
}

NgModel::NgModel(const Graph& g) {
  two_m_ = g.total_weight();
  if (two_m_ <= 0.0) throw degeneracy_error("graph has no edges");
  k_.resize(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) k_[static_cast<std::size_t>(i)] = g.strength(i);
}

MatrixModel::MatrixModel(ModelKind kind, int n, std::vector<double> values)
    : kind_(kind), n_(n), p_(std::move(values)) {
  row_sum_.assign(static_cast<std::size_t>(n_), 0.0);
  for (int i = 0; i < n_; ++i) {
    const double* row = dense_row(i);
    double sum = 0.0;
    for (int j = 0; j < n_; ++j) sum += row[j];
    row_sum_[static_cast<std::size_t>(i)] = sum;
  }
}

namespace {

// Equal-width bin lookup shared by estimation and evaluation, so the
// per-bin conservation identity holds exactly.
inline std::size_t bin_of(double d, double tau, std::size_t bins) {
  auto b = static_cast<std::size_t>(d / tau);
  return b >= bins ? bins - 1 : b;
}

class SpaLazyModel final : public NullModel {
public:
  SpaLazyModel(std::vector<double> h, std::vector<double> p, double tau,
               const PairDistances& distances)
      : h_(std::move(h)), p_(std::move(p)), tau_(tau), distances_(&distances) {}
  ModelKind kind() const override { return ModelKind::spa; }
  int size() const override { return static_cast<int>(h_.size()); }
  double expected(int i, int j) const override {
    const double d = (*distances_)(i, j);
    return h_[static_cast<std::size_t>(i)] * h_[static_cast<std::size_t>(j)] *
           p_[bin_of(d, tau_, p_.size())];
  }

private:
  std::vector<double> h_;
  std::vector<double> p_;
  double tau_;
  const PairDistances* distances_;
};

class DistLazyModel final : public NullModel {
public:
  DistLazyModel(std::vector<double> k, std::vector<double> d_norm, KernelSpec kernel,
                const PairDistances& distances)
      : k_(std::move(k)),
        d_norm_(std::move(d_norm)),
        kernel_(kernel),
        distances_(&distances) {}
  ModelKind kind() const override { return ModelKind::dist; }
  int size() const override { return static_cast<int>(k_.size()); }
  double expected(int i, int j) const override {
    const auto a = static_cast<std::size_t>(i);
    const auto b = static_cast<std::size_t>(j);
    if (k_[a] == 0.0 && k_[b] == 0.0) return 0.0;
    const double f = kernel_eval(kernel_, (*distances_)(i, j));
    const double pij = k_[a] == 0.0 ? 0.0 : k_[a] * k_[b] * f / d_norm_[a];
    const double pji = k_[b] == 0.0 ? 0.0 : k_[b] * k_[a] * f / d_norm_[b];
    return 0.5 * (pij + pji);
  }

private:
  std::vector<double> k_;
  std::vector<double> d_norm_;
  KernelSpec kernel_;
  const PairDistances* distances_;
};

}  // namespace

std::unique_ptr<NullModel> build_spa_model(const Graph& g,
                                           const PairDistances& distances,
                                           double tau,
                                           std::span<const double> importance,
                                           std::size_t dense_cap) {
  const int n = g.size();
  if (distances.size() != n)
    throw input_error("distance table size does not match graph");
  if (g.total_weight() <= 0.0) throw degeneracy_error("graph has no edges");
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw input_error("spa bin width tau must be positive and finite");

  std::vector<double> h;
  if (importance.empty()) {
    h.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) h[static_cast<std::size_t>(i)] = g.strength(i);
  } else {
    if (static_cast<int>(importance.size()) != n)
      throw input_error("importance vector size does not match graph");
    h.assign(importance.begin(), importance.end());
    bool any = false;
    for (double v : h) {
      if (v < 0.0 || !std::isfinite(v))
        throw input_error("importance values must be finite and >= 0");
      any = any || v > 0.0;
    }
    if (!any) throw input_error("importance values are all zero");
  }

  if (distances.max() / tau >= 1e9)
    throw input_error("spa bin width tau is too small for the distance range");
  const std::size_t bins = static_cast<std::size_t>(distances.max() / tau) + 1;
  std::vector<double> num(bins, 0.0), den(bins, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto a = static_cast<std::size_t>(i);
    for (int j = 0; j < n; ++j)
      den[bin_of(distances(i, j), tau, bins)] +=
          h[a] * h[static_cast<std::size_t>(j)];
    for (const Neighbor& nb : g.neighbors(i))
      num[bin_of(distances(i, nb.node), tau, bins)] += nb.weight;
  }
  std::vector<double> p(bins, 0.0);
  for (std::size_t b = 0; b < bins; ++b)
    if (den[b] > 0.0) p[b] = num[b] / den[b];

  if (static_cast<std::size_t>(n) <= dense_cap) {
    std::vector<double> values(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const auto a = static_cast<std::size_t>(i);
      for (int j = i; j < n; ++j) {
        const auto b = static_cast<std::size_t>(j);
        const double v = h[a] * h[b] * p[bin_of(distances(i, j), tau, bins)];
        values[a * static_cast<std::size_t>(n) + b] = v;
        values[b * static_cast<std::size_t>(n) + a] = v;
      }
    }
    return std::make_unique<MatrixModel>(ModelKind::spa, n, std::move(values));
  }
  return std::make_unique<SpaLazyModel>(std::move(h), std::move(p), tau, distances);
}

std::unique_ptr<NullModel> build_dist_model(const Graph& g,
                                            const PairDistances& distances,
                                            const KernelSpec& kernel,
                                            std::size_t dense_cap) {
  const int n = g.size();
  if (distances.size() != n)
    throw input_error("distance table size does not match graph");
  if (g.total_weight() <= 0.0) throw degeneracy_error("graph has no edges");

  std::vector<double> k(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) k[static_cast<std::size_t>(i)] = g.strength(i);

  // D_i normalizes node i's expected row so Sigma_j Ptilde_ij = k_i.
  std::vector<double> d_norm(static_cast<std::size_t>(n), 0.0);
  const bool dense = static_cast<std::size_t>(n) <= dense_cap;
  std::vector<double> f_cache;
  if (dense)
    f_cache.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto a = static_cast<std::size_t>(i);
    double acc = 0.0;
    for (int j = i; j < n; ++j) {
      const auto b = static_cast<std::size_t>(j);
      const double f = kernel_eval(kernel, distances(i, j));
      if (dense) {
        f_cache[a * static_cast<std::size_t>(n) + b] = f;
        f_cache[b * static_cast<std::size_t>(n) + a] = f;
      }
      acc += k[b] * f;
      if (j != i) d_norm[b] += k[a] * f;
    }
    d_norm[a] += acc;
  }
  for (int i = 0; i < n; ++i) {
    const auto a = static_cast<std::size_t>(i);
    if (k[a] > 0.0 && d_norm[a] <= 0.0) {
      std::ostringstream os;
      os << "kernel weights vanished for node " << g.original_id(i)
         << " (every f(d) underflowed to 0); use a larger sigma or a "
            "heavier-tailed kernel";
      throw degeneracy_error(os.str());
    }
  }

  if (dense) {
    std::vector<double> values(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const auto a = static_cast<std::size_t>(i);
      for (int j = i; j < n; ++j) {
        const auto b = static_cast<std::size_t>(j);
        const double f = f_cache[a * static_cast<std::size_t>(n) + b];
        const double pij = k[a] == 0.0 ? 0.0 : k[a] * k[b] * f / d_norm[a];
        const double pji = k[b] == 0.0 ? 0.0 : k[b] * k[a] * f / d_norm[b];
        const double v = 0.5 * (pij + pji);
        values[a * static_cast<std::size_t>(n) + b] = v;
        values[b * static_cast<std::size_t>(n) + a] = v;
      }
    }
    return std::make_unique<MatrixModel>(ModelKind::dist, n, std::move(values));
  }
  return std::make_unique<DistLazyModel>(std::move(k), std::move(d_norm), kernel,
                                         distances);
}

}  // namespace distmod
