#include "distmod/attributes.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace distmod {

namespace {

std::vector<std::string> split_fields(const std::string& line, bool comma) {
  std::vector<std::string> out;
  if (comma) {
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
      while (!field.empty() && (field.back() == '\r' || field.back() == ' '))
        field.pop_back();
      std::size_t start = 0;
      while (start < field.size() && field[start] == ' ') ++start;
      out.push_back(field.substr(start));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
  } else {
    std::istringstream ss(line);
    std::string field;
    while (ss >> field) out.push_back(std::move(field));
  }
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) return false;
  out = v;
  return true;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

AttributeTable AttributeTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open attribute file: " + path);

  std::string line;
  std::vector<std::vector<std::string>> raw_rows;
  std::string header_line;
  bool have_header = false;
  bool comma = false;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!have_header) {
      header_line = line;
      comma = line.find(',') != std::string::npos;
      have_header = true;
      continue;
    }
    raw_rows.push_back(split_fields(line, comma));
    if (raw_rows.back().empty()) raw_rows.pop_back();
  }
  if (!have_header) throw input_error(path + ": missing header row");

  const std::vector<std::string> header = split_fields(header_line, comma);
  if (header.size() < 2)
    throw input_error(path + ": header needs an id column and at least one attribute");
  const std::size_t ncols = header.size();

  AttributeTable t;
  t.ids_.reserve(raw_rows.size());
  std::vector<std::vector<std::string>> cells(ncols - 1);
  for (std::size_t r = 0; r < raw_rows.size(); ++r) {
    const auto& row = raw_rows[r];
    if (row.size() != ncols) {
      std::ostringstream os;
      os << path << ": row " << (r + 1) << " has " << row.size()
         << " fields, header has " << ncols;
      throw input_error(os.str());
    }
    double idv;
    if (!parse_double(row[0], idv) || idv != static_cast<long long>(idv))
      throw input_error(path + ": non-integer node id '" + row[0] + "'");
    t.ids_.push_back(static_cast<long long>(idv));
    for (std::size_t c = 1; c < ncols; ++c) cells[c - 1].push_back(row[c]);
  }

  for (std::size_t c = 0; c + 1 < ncols; ++c) {
    std::vector<double> nums(cells[c].size());
    bool numeric = true;
    for (std::size_t r = 0; r < cells[c].size(); ++r) {
      if (!parse_double(cells[c][r], nums[r])) {
        numeric = false;
        break;
      }
    }
    if (numeric) {
      t.add_numeric_column(header[c + 1], std::move(nums));
    } else {
      t.add_categorical_column(header[c + 1], cells[c]);
    }
  }
  t.index_rows();
  return t;
}

AttributeTable AttributeTable::aligned(const Graph& g) const {
  AttributeTable out;
  const auto n = static_cast<std::size_t>(g.size());
  std::vector<std::size_t> source(n);
  for (int i = 0; i < g.size(); ++i) {
    const long long orig = g.original_id(i);
    const auto it = std::lower_bound(
        id_index_.begin(), id_index_.end(), std::make_pair(orig, std::size_t{0}),
        [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it == id_index_.end() || it->first != orig) {
      std::ostringstream os;
      os << "attribute table has no row for node " << orig;
      throw input_error(os.str());
    }
    source[static_cast<std::size_t>(i)] = it->second;
  }

  out.ids_.resize(n);
  for (int i = 0; i < g.size(); ++i)
    out.ids_[static_cast<std::size_t>(i)] = g.original_id(i);
  out.cols_.reserve(cols_.size());
  for (const Column& col : cols_) {
    Column nc;
    nc.name = col.name;
    nc.type = col.type;
    nc.categories = col.categories;
    if (!col.numeric.empty()) {
      nc.numeric.resize(n);
      for (std::size_t i = 0; i < n; ++i) nc.numeric[i] = col.numeric[source[i]];
    }
    nc.codes.resize(n);
    for (std::size_t i = 0; i < n; ++i) nc.codes[i] = col.codes[source[i]];
    out.cols_.push_back(std::move(nc));
  }
  out.index_rows();
  return out;
}

int AttributeTable::column_index(const std::string& name) const {
  for (std::size_t c = 0; c < cols_.size(); ++c)
    if (cols_[c].name == name) return static_cast<int>(c);
  return -1;
}

double AttributeTable::numeric_value(std::size_t row, std::size_t c) const {
  const Column& col = cols_[c];
  if (col.type != ColumnType::numeric)
    throw input_error("column '" + col.name + "' is not numeric");
  return col.numeric[row];
}

int AttributeTable::category_code(std::size_t row, std::size_t c) const {
  return cols_[c].codes[row];
}

int AttributeTable::category_count(std::size_t c) const {
  return static_cast<int>(cols_[c].categories.size());
}

const std::string& AttributeTable::category_name(std::size_t c, int code) const {
  return cols_[c].categories[static_cast<std::size_t>(code)];
}

void AttributeTable::set_ids(std::vector<long long> ids) {
  ids_ = std::move(ids);
  index_rows();
}

void AttributeTable::build_numeric_codes(Column& col) {
  std::map<double, int> seen;
  col.codes.resize(col.numeric.size());
  col.categories.clear();
  for (std::size_t r = 0; r < col.numeric.size(); ++r) {
    const double v = col.numeric[r];
    auto it = seen.find(v);
    if (it == seen.end()) {
      it = seen.emplace(v, static_cast<int>(col.categories.size())).first;
      col.categories.push_back(format_number(v));
    }
    col.codes[r] = it->second;
  }
}

void AttributeTable::add_numeric_column(const std::string& name, std::vector<double> values) {
  if (!ids_.empty() && values.size() != ids_.size())
    throw input_error("column length mismatch for '" + name + "'");
  Column col;
  col.name = name;
  col.type = ColumnType::numeric;
  col.numeric = std::move(values);
  build_numeric_codes(col);
  cols_.push_back(std::move(col));
}

void AttributeTable::add_categorical_column(const std::string& name,
                                            const std::vector<std::string>& values) {
  if (!ids_.empty() && values.size() != ids_.size())
    throw input_error("column length mismatch for '" + name + "'");
  Column col;
  col.name = name;
  col.type = ColumnType::categorical;
  col.codes.resize(values.size());
  std::map<std::string, int> seen;
  for (std::size_t r = 0; r < values.size(); ++r) {
    auto it = seen.find(values[r]);
    if (it == seen.end()) {
      it = seen.emplace(values[r], static_cast<int>(col.categories.size())).first;
      col.categories.push_back(values[r]);
    }
    col.codes[r] = it->second;
  }
  cols_.push_back(std::move(col));
}

void AttributeTable::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write attribute file: " + path);
  out << "id";
  for (const Column& col : cols_) out << "," << col.name;
  out << "\n";
  for (std::size_t r = 0; r < ids_.size(); ++r) {
    out << ids_[r];
    for (const Column& col : cols_) {
      out << ",";
      if (col.type == ColumnType::numeric)
        out << format_number(col.numeric[r]);
      else
        out << col.categories[static_cast<std::size_t>(col.codes[r])];
    }
    out << "\n";
  }
  if (!out) throw input_error("write failed: " + path);
}

void AttributeTable::index_rows() {
  id_index_.clear();
  id_index_.reserve(ids_.size());
  for (std::size_t r = 0; r < ids_.size(); ++r) id_index_.emplace_back(ids_[r], r);
  std::sort(id_index_.begin(), id_index_.end());
  for (std::size_t r = 1; r < id_index_.size(); ++r)
    if (id_index_[r].first == id_index_[r - 1].first) {
      std::ostringstream os;
      os << "duplicate node id " << id_index_[r].first << " in attribute table";
      throw input_error(os.str());
    }
}

}  // namespace distmod
