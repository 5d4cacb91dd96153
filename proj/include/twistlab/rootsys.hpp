#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twistlab/linalg.hpp"

namespace twistlab::rootsys {

/// Sorted set of simple-root indices, 1-based (Bourbaki numbering).
using IndexSet = std::vector<int>;

/// Position of a root inside RootSystem::roots().
using RootIndex = std::uint16_t;

struct CartanType {
  char family = 'A';
  int rank = 1;

  /// Parses "A3", "D4", "E6", ... Throws DomainError on garbage or bad rank.
  static CartanType parse(std::string_view text);

  bool admissible() const;
  std::string name() const;

  auto operator<=>(const CartanType&) const = default;
};

/// Coefficients over the simple roots.
struct Root {
  std::vector<int> coords;

  int height() const;
  bool is_positive() const;
  Root operator-() const;
  Root operator+(const Root& other) const;

  auto operator<=>(const Root&) const = default;
};

std::string to_string(const Root& r);

class RootSystem;
using RootSystemPtr = std::shared_ptr<const RootSystem>;

/// Immutable root system. roots() holds the positive roots (height-major,
/// then lexicographically descending coordinates, so the simple roots come
/// first in their natural order) followed by their negatives in the same order.
class RootSystem {
 public:
  /// Closure of the simple roots under the simple reflections.
  static RootSystemPtr build(CartanType ct);

  const CartanType& type() const { return type_; }
  int rank() const { return type_.rank; }

  /// cartan_matrix()(i, j) = <alpha_i^vee, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i).
  const IntMatrix& cartan_matrix() const { return cartan_; }
  /// Invariant form on simple roots, short roots of squared length 2.
  const IntMatrix& gram() const { return gram_; }

  std::span<const Root> roots() const { return roots_; }
  std::span<const Root> positive_roots() const {
    return std::span<const Root>(roots_).first(num_positive_);
  }
  std::size_t num_roots() const { return roots_.size(); }
  std::size_t num_positive() const { return num_positive_; }

  const Root& root(RootIndex i) const { return roots_[i]; }
  std::optional<RootIndex> find(const Root& r) const;
  /// Throws DomainError when r is not a root.
  RootIndex index(const Root& r) const;
  bool is_positive(RootIndex i) const { return i < num_positive_; }
  RootIndex negative(RootIndex i) const {
    return static_cast<RootIndex>(i < num_positive_ ? i + num_positive_ : i - num_positive_);
  }
  /// Index of alpha_i, i 1-based.
  RootIndex simple(int i) const { return static_cast<RootIndex>(i - 1); }

  /// Symmetric invariant form, extended linearly to all of the root lattice.
  int inner(const std::vector<int>& a, const std::vector<int>& b) const;
  int inner(const Root& a, const Root& b) const { return inner(a.coords, b.coords); }
  /// <g, b^vee> = 2 (g, b) / (b, b).
  int pairing(const Root& g, const Root& b) const;

  /// Action of s_i on root indices, i 1-based.
  const std::vector<RootIndex>& simple_reflection(int i) const { return reflections_[i - 1]; }

 private:
  RootSystem() = default;

  CartanType type_;
  IntMatrix cartan_;
  IntMatrix gram_;
  std::vector<Root> roots_;
  std::size_t num_positive_ = 0;
  std::map<std::vector<int>, RootIndex> lookup_;
  std::vector<std::vector<RootIndex>> reflections_;
};

/// s_b(g) = g - <g, b^vee> b. Both must be roots of rs.
Root reflect(const RootSystem& rs, const Root& b, const Root& g);

/// The unique positive root of maximal height.
const Root& highest_root(const RootSystem& rs);

/// Primes dividing some coefficient of the highest root. A prime is good iff it is not in here.
std::vector<int> bad_primes(const RootSystem& rs);
bool is_good_prime(const RootSystem& rs, int p);

/// Permutation of the simple-root indices preserving the Cartan matrix.
class DiagramAut {
 public:
  /// images[i-1] is the image of i; throws DomainError if not a permutation.
  explicit DiagramAut(std::vector<int> images);

  static DiagramAut identity(int rank);
  /// Cycle notation over 1..rank, e.g. "(1 3)", "(1 3 4)", "()".
  static DiagramAut parse_cycles(std::string_view text, int rank);

  int rank() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i - 1]; }
  const std::vector<int>& images() const { return images_; }
  int order() const { return order_; }
  bool is_identity() const { return order_ == 1; }

  DiagramAut inverse() const;
  std::vector<int> apply(const std::vector<int>& coords) const;
  Root apply(const Root& r) const { return Root{apply(r.coords)}; }
  bool preserves(const RootSystem& rs) const;
  bool stabilizes(const IndexSet& s) const;

  std::string cycles() const;

  bool operator==(const DiagramAut& o) const { return images_ == o.images_; }

 private:
  std::vector<int> images_;
  int order_ = 1;
};

/// All Cartan-matrix-preserving permutations, identity first, then in
/// lexicographic order of the image sequence.
std::vector<DiagramAut> diagram_auts(const RootSystem& rs);

/// Smallest root-closed symmetric subset containing a set of roots, with its
/// simple system and the Cartan types of its irreducible components.
struct Subsystem {
  std::vector<Root> roots;
  std::vector<Root> simple_system;
  /// Irreducible components, sorted.
  std::vector<CartanType> components;
};

/// Input must be symmetric or consist of positive roots only.
Subsystem subsystem(const RootSystem& rs, std::span<const Root> generators);

/// "A1xA1", "A3", "" for the empty system.
std::string type_name(const std::vector<CartanType>& components);

/// Identifies an indecomposable Cartan matrix up to simultaneous row/column permutation.
CartanType classify_cartan(const IntMatrix& cartan);

/// All roots orthogonal to alpha_i for every i in pi.
std::vector<Root> perp(const RootSystem& rs, const IndexSet& pi);

}  // namespace twistlab::rootsys
