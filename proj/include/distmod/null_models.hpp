#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "distmod/distance.hpp"
#include "distmod/errors.hpp"
#include "distmod/graph.hpp"
#include "distmod/kernels.hpp"

namespace distmod {

enum class ModelKind { ng, spa, dist };

const std::string& model_name(ModelKind kind);
ModelKind model_from_name(const std::string& name);

// Expected link weight P_ij under a randomized reference, conserving
// Sigma_ij P_ij = 2m. Symmetric. Diagonal entries are meaningful and enter
// every sum.
class NullModel {
public:
  virtual ~NullModel() = default;
  virtual ModelKind kind() const = 0;
  virtual int size() const = 0;
  virtual double expected(int i, int j) const = 0;
  // Row sum Sigma_j P_ij. Default walks the row.
  virtual double expected_degree(int i) const;
  // Contiguous row when the model is stored densely, else nullptr.
  virtual const double* dense_row(int /*i*/) const { return nullptr; }
  // Sigma_ij P_ij; should match 2m.
  double expected_total() const;
};

// Configuration model P_ij = k_i k_j / 2m.
class NgModel final : public NullModel {
public:
  explicit NgModel(const Graph& g);
  ModelKind kind() const override { return ModelKind::ng; }
  int size() const override { return static_cast<int>(k_.size()); }
  double expected(int i, int j) const override {
    return k_[static_cast<std::size_t>(i)] * k_[static_cast<std::size_t>(j)] / two_m_;
  }
  double expected_degree(int i) const override {
    return k_[static_cast<std::size_t>(i)];
  }
  double strength(int i) const { return k_[static_cast<std::size_t>(i)]; }
  double total_weight() const { return two_m_; }

private:
  std::vector<double> k_;
  double two_m_ = 0.0;
};

// Dense n x n expected matrix, any declared kind. Also used for collapsed
// community-block models during multilevel optimization.
class MatrixModel final : public NullModel {
public:
  MatrixModel(ModelKind kind, int n, std::vector<double> values);
  ModelKind kind() const override { return kind_; }
  int size() const override { return n_; }
  double expected(int i, int j) const override {
    return p_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
              static_cast<std::size_t>(j)];
  }
  double expected_degree(int i) const override {
    return row_sum_[static_cast<std::size_t>(i)];
  }
  const double* dense_row(int i) const override {
    return p_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_);
  }

private:
  ModelKind kind_;
  int n_;
  std::vector<double> p_;
  std::vector<double> row_sum_;
};

inline constexpr std::size_t kDefaultModelDenseCap = 3000;

// Spatial null model: P_ij = h_i h_j p(bin(d_ij)) with the empirical
// deterrence p estimated per equal-width distance bin of width tau.
// importance defaults to node strengths when empty. Dense below the cap,
// lazy above it; the lazy form keeps a reference to distances.
std::unique_ptr<NullModel> build_spa_model(
    const Graph& g, const PairDistances& distances, double tau,
    std::span<const double> importance = {},
    std::size_t dense_cap = kDefaultModelDenseCap);

// Distance-kernel null model: Ptilde_ij = k_i k_j f(d_ij) / D_i with
// D_i = Sigma_t k_t f(d_ti), symmetrized P = (Ptilde + Ptilde^T)/2.
std::unique_ptr<NullModel> build_dist_model(
    const Graph& g, const PairDistances& distances, const KernelSpec& kernel,
    std::size_t dense_cap = kDefaultModelDenseCap);

}  // namespace distmod
