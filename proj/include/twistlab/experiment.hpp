#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/chevalley.hpp"

namespace twistlab::chevalley {

/// One twisted orbit, its Bruhat cells, and the dimension comparison.
struct OrbitReport {
  int m = 0;
  int p = 0;
  std::uint64_t seed = 0;
  std::string name;
  Matrix representative;

  /// False when the orbit ran past its budget; then only partial_size is meaningful.
  bool complete = false;
  std::size_t orbit_size = 0;
  std::size_t partial_size = 0;

  std::vector<WeylElement> cells;
  std::vector<std::size_t> cell_counts;
  bool involutive = false;
  std::optional<WeylElement> w_max;

  StabilizerDim stabilizer;
  /// l(w_max) + rk(1 - w_max theta); set when w_max exists.
  std::optional<int> formula_dim;

  /// "spherical", "non-spherical", "counterexample", "advisory".
  std::string verdict;

  /// involutive == (class_dim == formula_dim), meaningful when complete.
  bool consistent() const;
};

OrbitReport analyze_orbit(const Lab& lab, const std::string& name, const Matrix& x, std::uint64_t seed,
                          std::size_t budget = kDefaultOrbitBudget);

struct Representative {
  std::string name;
  Matrix x;
};

/// Fixed list: identity, -identity, torus lifts of every tabulated w_C,
/// a split torus element, unipotent elements, then `random_count` seeded random elements.
std::vector<Representative> standard_representatives(const Lab& lab, std::uint64_t seed, int random_count);

/// Parses "identity", "w0", "wc:1,3", "wc:1,3*h1", "diag:2,2,3,3", "rows:1,0;0,1",
/// "x1" / "x-2" (root elements at t = 1), "random".
Matrix parse_representative(const Lab& lab, const std::string& spec, std::uint64_t seed);

}  // namespace twistlab::chevalley
