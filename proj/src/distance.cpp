#include "distmod/distance.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace distmod {

namespace {

constexpr double kEarthRadiusKm = 6371.0;
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

const std::array<std::pair<DistanceKind, std::string>, 3> kDistanceNames{{
    {DistanceKind::euclidean, "euclidean"},
    {DistanceKind::great_circle, "greatcircle"},
    {DistanceKind::discrete, "discrete"},
}};

// Columns the spec selects, validated against the table.
std::vector<std::size_t> resolve_columns(const DistanceSpec& spec,
                                         const AttributeTable& attrs) {
  std::vector<std::size_t> cols;
  if (!spec.columns.empty()) {
    for (const std::string& name : spec.columns) {
      const int c = attrs.column_index(name);
      if (c < 0) throw input_error("unknown attribute column '" + name + "'");
      cols.push_back(static_cast<std::size_t>(c));
    }
  } else if (spec.kind == DistanceKind::discrete) {
    if (attrs.columns() != 1)
      throw input_error("discrete distance needs one attribute column; "
                        "select it explicitly");
    cols.push_back(0);
  } else {
    for (std::size_t c = 0; c < attrs.columns(); ++c)
      if (attrs.column_type(c) == AttributeTable::ColumnType::numeric)
        cols.push_back(c);
    if (cols.empty()) throw input_error("no numeric attribute columns available");
  }

  switch (spec.kind) {
    case DistanceKind::euclidean:
      for (std::size_t c : cols)
        if (attrs.column_type(c) != AttributeTable::ColumnType::numeric)
          throw input_error("euclidean distance needs numeric columns; '" +
                            attrs.column_name(c) + "' is categorical");
      break;
    case DistanceKind::great_circle:
      if (cols.size() != 2)
        throw input_error("great-circle distance needs exactly (lat, lon) columns");
      for (std::size_t c : cols)
        if (attrs.column_type(c) != AttributeTable::ColumnType::numeric)
          throw input_error("great-circle distance needs numeric columns; '" +
                            attrs.column_name(c) + "' is categorical");
      break;
    case DistanceKind::discrete:
      if (cols.size() != 1)
        throw input_error("discrete distance takes exactly one column");
      break;
  }
  return cols;
}

double haversine_rad(double lat1, double lon1, double lat2, double lon2) {
  const double s1 = std::sin((lat2 - lat1) / 2.0);
  const double s2 = std::sin((lon2 - lon1) / 2.0);
  const double a = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

}  // namespace

const std::string& distance_name(DistanceKind kind) {
  for (const auto& [k, name] : kDistanceNames)
    if (k == kind) return name;
  return kDistanceNames[0].second;
}

DistanceKind distance_from_name(const std::string& name) {
  for (const auto& [k, n] : kDistanceNames)
    if (n == name) return k;
  throw input_error("unknown distance '" + name + "'");
}

double great_circle_km(double lat1, double lon1, double lat2, double lon2) {
  if (std::abs(lat1) > 90.0 || std::abs(lat2) > 90.0)
    throw input_error("latitude outside [-90, 90]");
  if (std::abs(lon1) > 180.0 || std::abs(lon2) > 180.0)
    throw input_error("longitude outside [-180, 180]");
  return haversine_rad(lat1 * kDegToRad, lon1 * kDegToRad, lat2 * kDegToRad,
                       lon2 * kDegToRad);
}

PairDistances::PairDistances(const DistanceSpec& spec, const AttributeTable& attrs,
                             std::size_t dense_cap) {
  kind_ = spec.kind;
  n_ = static_cast<int>(attrs.rows());
  if (n_ == 0) throw input_error("attribute table is empty");
  const std::vector<std::size_t> cols = resolve_columns(spec, attrs);
  const auto n = static_cast<std::size_t>(n_);

  if (kind_ == DistanceKind::discrete) {
    codes_.resize(n);
    for (std::size_t r = 0; r < n; ++r)
      codes_[r] = attrs.category_code(r, cols[0]);
  } else {
    width_ = cols.size();
    values_.resize(n * width_);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < width_; ++c)
        values_[r * width_ + c] = attrs.numeric_value(r, cols[c]);
    if (kind_ == DistanceKind::great_circle) {
      for (std::size_t r = 0; r < n; ++r) {
        double& lat = values_[r * width_];
        double& lon = values_[r * width_ + 1];
        if (std::abs(lat) > 90.0) throw input_error("latitude outside [-90, 90]");
        if (std::abs(lon) > 180.0) throw input_error("longitude outside [-180, 180]");
        lat *= kDegToRad;
        lon *= kDegToRad;
      }
    }
  }

  double sum = 0.0;
  if (n <= dense_cap) {
    packed_.resize(n * (n + 1) / 2, 0.0);
    for (int j = 0; j < n_; ++j) {
      const auto base = static_cast<std::size_t>(j) * (static_cast<std::size_t>(j) + 1) / 2;
      for (int i = 0; i < j; ++i) {
        const double d = compute(i, j);
        packed_[base + static_cast<std::size_t>(i)] = d;
        sum += 2.0 * d;
        if (d > max_) max_ = d;
      }
    }
  } else {
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < j; ++i) {
        const double d = compute(i, j);
        sum += 2.0 * d;
        if (d > max_) max_ = d;
      }
  }
  mean_ = sum / (static_cast<double>(n_) * static_cast<double>(n_));
}

double PairDistances::compute(int i, int j) const {
  if (i == j) return 0.0;
  const auto a = static_cast<std::size_t>(i);
  const auto b = static_cast<std::size_t>(j);
  switch (kind_) {
    case DistanceKind::euclidean: {
      double acc = 0.0;
      for (std::size_t c = 0; c < width_; ++c) {
        const double diff = values_[a * width_ + c] - values_[b * width_ + c];
        acc += diff * diff;
      }
      return std::sqrt(acc);
    }
    case DistanceKind::great_circle:
      return haversine_rad(values_[a * width_], values_[a * width_ + 1],
                           values_[b * width_], values_[b * width_ + 1]);
    case DistanceKind::discrete:
      return codes_[a] == codes_[b] ? 0.0 : 1.0;
  }
  return 0.0;
}

double distance(const DistanceSpec& spec, const AttributeTable& attrs, int i, int j) {
  const std::vector<std::size_t> cols = resolve_columns(spec, attrs);
  if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= attrs.rows() ||
      static_cast<std::size_t>(j) >= attrs.rows())
    throw input_error("node index out of range for attribute table");
  const auto a = static_cast<std::size_t>(i);
  const auto b = static_cast<std::size_t>(j);
  switch (spec.kind) {
    case DistanceKind::euclidean: {
      double acc = 0.0;
      for (std::size_t c : cols) {
        const double diff = attrs.numeric_value(a, c) - attrs.numeric_value(b, c);
        acc += diff * diff;
      }
      return std::sqrt(acc);
    }
    case DistanceKind::great_circle:
      return great_circle_km(attrs.numeric_value(a, cols[0]),
                             attrs.numeric_value(a, cols[1]),
                             attrs.numeric_value(b, cols[0]),
                             attrs.numeric_value(b, cols[1]));
    case DistanceKind::discrete:
      return attrs.category_code(a, cols[0]) == attrs.category_code(b, cols[0]) ? 0.0
                                                                                : 1.0;
  }
  return 0.0;
}

}  // namespace distmod
