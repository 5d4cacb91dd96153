#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "twistlab/linalg.hpp"
#include "twistlab/rootsys.hpp"

namespace twistlab::weyl {

using rootsys::IndexSet;
using rootsys::Root;
using rootsys::RootIndex;
using rootsys::RootSystem;
using rootsys::RootSystemPtr;

/// Sequence of simple indices, 1-based.
using Word = std::vector<int>;

inline constexpr std::size_t kDefaultBudget = 10'000'000;

/// Element of W, stored as its permutation of the root set. The images of the
/// simple roots (key()) determine it and serve as the canonical encoding.
class WeylElement {
 public:
  static WeylElement identity(RootSystemPtr rs);
  /// Wraps a root permutation. Caller guarantees it comes from W.
  WeylElement(RootSystemPtr rs, std::vector<RootIndex> perm);

  const RootSystem& root_system() const { return *rs_; }
  const RootSystemPtr& root_system_ptr() const { return rs_; }

  RootIndex apply(RootIndex r) const { return perm_[r]; }
  /// Throws DomainError when r is not a root.
  Root apply(const Root& r) const;
  /// Image of alpha_i, i 1-based.
  RootIndex image_of_simple(int i) const { return perm_[rs_->simple(i)]; }

  /// Root indices of the images of alpha_1..alpha_n.
  std::vector<RootIndex> key() const;
  const std::vector<RootIndex>& permutation() const { return perm_; }

  /// Matrix on the root lattice in simple-root coordinates; column j is w(alpha_j).
  IntMatrix matrix() const;

  bool is_identity() const;

  bool operator==(const WeylElement& o) const { return perm_ == o.perm_; }

 private:
  RootSystemPtr rs_;
  std::vector<RootIndex> perm_;
};

struct WeylElementHash {
  std::size_t operator()(const WeylElement& w) const noexcept;
};

WeylElement simple_reflection(const RootSystemPtr& rs, int i);
/// Reflection in an arbitrary root.
WeylElement reflection(const RootSystemPtr& rs, const Root& root);

WeylElement from_word(const RootSystemPtr& rs, const Word& word);
/// u * w, i.e. apply w first. Throws DomainError for different root systems.
WeylElement mult(const WeylElement& u, const WeylElement& w);
WeylElement inv(const WeylElement& w);
Root apply(const WeylElement& w, const Root& r);

/// Number of positive roots sent to negative roots.
int length(const WeylElement& w);
/// Smallest i with l(s_i w) < l(w), or 0 for the identity.
int first_left_descent(const WeylElement& w);
/// Lexicographically smallest reduced word, built by always taking the smallest left descent.
Word reduced_word(const WeylElement& w);

/// Longest element of the parabolic subgroup W_pi.
WeylElement longest_element(const RootSystemPtr& rs, const IndexSet& pi);

bool bruhat_leq(const WeylElement& u, const WeylElement& w);

/// Shortlex order on reduced words; the order enumerate() returns.
bool shortlex_less(const Word& a, const Word& b);

struct Enumeration {
  std::vector<WeylElement> elements;
  /// reduced_word(elements[k]).
  std::vector<Word> words;

  std::size_t size() const { return elements.size(); }
};

/// Breadth-first search of the Cayley graph from the identity. Output sorted by
/// length, then by reduced word. Throws BudgetExceeded past `budget` elements.
Enumeration enumerate(const RootSystemPtr& rs, std::size_t budget = kDefaultBudget);

/// |W| from the degrees of the basic invariants. Independent of enumerate().
std::size_t order_from_degrees(const rootsys::CartanType& ct);

}  // namespace twistlab::weyl
