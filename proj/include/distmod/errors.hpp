#pragma once

#include <stdexcept>
#include <string>

namespace distmod {

// Malformed user input: unreadable files, bad ids, out-of-range parameters.
class input_error : public std::runtime_error {
public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Structurally impossible computation: edgeless graphs, kernel weights that
// underflow to an all-zero row, grids where every point failed.
class degeneracy_error : public std::runtime_error {
public:
  explicit degeneracy_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace distmod
