#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "distmod/errors.hpp"
#include "distmod/graph.hpp"

namespace distmod {

// Per-node attribute columns, typed numeric or categorical. Rows are keyed
// by node id; aligned(g) reorders them to a graph's dense id order.
class AttributeTable {
public:
  enum class ColumnType { numeric, categorical };

  // Reads a delimited text file: header row naming the columns, then one
  // row per node. The first column holds the node id. Comma-separated when
  // the header contains a comma, whitespace-separated otherwise. A column
  // is numeric when every value parses as a real, categorical otherwise.
  static AttributeTable load(const std::string& path);

  // Rows reordered to match g's dense ids. Every graph node must have a
  // row; rows for unknown ids are dropped.
  AttributeTable aligned(const Graph& g) const;

  std::size_t rows() const { return ids_.size(); }
  std::size_t columns() const { return cols_.size(); }
  long long id(std::size_t row) const { return ids_[row]; }
  const std::vector<long long>& ids() const { return ids_; }

  const std::string& column_name(std::size_t c) const { return cols_[c].name; }
  // Index of a named column, or -1 when absent.
  int column_index(const std::string& name) const;
  ColumnType column_type(std::size_t c) const { return cols_[c].type; }

  double numeric_value(std::size_t row, std::size_t c) const;
  // Dense category code (first-appearance order). For a numeric column the
  // codes enumerate its distinct values, so any column can act categorical.
  int category_code(std::size_t row, std::size_t c) const;
  int category_count(std::size_t c) const;
  // Display name of a category: the original token, or the formatted number.
  const std::string& category_name(std::size_t c, int code) const;

  void set_ids(std::vector<long long> ids);
  void add_numeric_column(const std::string& name, std::vector<double> values);
  void add_categorical_column(const std::string& name, const std::vector<std::string>& values);

  // Writes a comma-separated file readable by load(); id column first.
  void write(const std::string& path) const;

private:
  struct Column {
    std::string name;
    ColumnType type = ColumnType::numeric;
    std::vector<double> numeric;       // numeric columns
    std::vector<int> codes;            // both types
    std::vector<std::string> categories;  // display names per code
  };

  void index_rows();
  static void build_numeric_codes(Column& col);

  std::vector<long long> ids_;
  std::vector<Column> cols_;
  std::vector<std::pair<long long, std::size_t>> id_index_;  // sorted
};

}  // namespace distmod
