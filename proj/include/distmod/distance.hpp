#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "distmod/attributes.hpp"
#include "distmod/errors.hpp"

namespace distmod {

enum class DistanceKind { euclidean, great_circle, discrete };

const std::string& distance_name(DistanceKind kind);
// CLI vocabulary: euclidean, greatcircle, discrete.
DistanceKind distance_from_name(const std::string& name);

// Which attribute columns feed the distance. Empty column list means:
// every numeric column (euclidean, great-circle), or the sole attribute
// column (discrete).
struct DistanceSpec {
  DistanceKind kind = DistanceKind::euclidean;
  std::vector<std::string> columns;
};

// Pairwise distances over a table whose rows are already in dense node
// order. Below dense_cap nodes the full triangular matrix is stored;
// above it, distances are recomputed per query from the row data.
// Mean and max run over all ordered pairs including the diagonal.
class PairDistances {
public:
  static constexpr std::size_t kDefaultDenseCap = 20000;

  PairDistances(const DistanceSpec& spec, const AttributeTable& attrs,
                std::size_t dense_cap = kDefaultDenseCap);

  int size() const { return n_; }
  double operator()(int i, int j) const {
    if (!packed_.empty()) {
      if (i > j) std::swap(i, j);
      const auto a = static_cast<std::size_t>(i);
      const auto b = static_cast<std::size_t>(j);
      return packed_[b * (b + 1) / 2 + a];
    }
    return compute(i, j);
  }
  double mean() const { return mean_; }
  double max() const { return max_; }

private:
  double compute(int i, int j) const;

  DistanceKind kind_;
  int n_ = 0;
  std::size_t width_ = 0;            // numeric values per row
  std::vector<double> values_;       // row-major numeric data (radians for great-circle)
  std::vector<int> codes_;           // discrete distance
  std::vector<double> packed_;       // lower triangle by column, when dense
  double mean_ = 0.0;
  double max_ = 0.0;
};

// One-off distance between two rows of an attribute table.
double distance(const DistanceSpec& spec, const AttributeTable& attrs, int i, int j);

// Great-circle distance in kilometres between (lat, lon) points in degrees
// on a sphere of Earth mean radius 6371.0 km.
double great_circle_km(double lat1, double lon1, double lat2, double lon2);

}  // namespace distmod
