#include <map>
#include <random>
#include <unordered_map>

#include "doctest.h"
#include "twistlab/errors.hpp"
#include "twistlab/weyl.hpp"

using namespace twistlab;
using namespace twistlab::weyl;
using rootsys::CartanType;
using rootsys::RootSystem;

namespace {

rootsys::RootSystemPtr build(const char* t) { return RootSystem::build(CartanType::parse(t)); }

std::size_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// |W| from the classical descriptions: S_{n+1}, signed permutations, even signed permutations.
std::size_t classical_order(const CartanType& ct) {
  const int n = ct.rank;
  switch (ct.family) {
    case 'A': return factorial(n + 1);
    case 'B':
    case 'C': return (std::size_t{1} << n) * factorial(n);
    case 'D': return (std::size_t{1} << (n - 1)) * factorial(n);
    case 'F': return 1152;
    case 'G': return 12;
    default: return ct.rank == 6 ? 51840 : 2903040;
  }
}

/// Every element of W with a right-multiplication table, for the subword oracle.
struct Table {
  Enumeration e;
  std::unordered_map<WeylElement, int, WeylElementHash> index;
  std::vector<std::vector<int>> right;

  explicit Table(const rootsys::RootSystemPtr& rs) : e(enumerate(rs)) {
    for (std::size_t k = 0; k < e.size(); ++k) index.emplace(e.elements[k], static_cast<int>(k));
    right.resize(e.size());
    for (std::size_t k = 0; k < e.size(); ++k)
      for (int i = 1; i <= rs->rank(); ++i)
        right[k].push_back(index.at(mult(e.elements[k], simple_reflection(rs, i))));
  }

  /// Indicator of all products of subwords of the reduced word of element k.
  std::vector<char> below(int k) const {
    std::vector<char> in(e.size(), 0);
    in[0] = 1;  // identity comes first in shortlex order
    for (int letter : e.words[k]) {
      auto next = in;
      for (std::size_t x = 0; x < in.size(); ++x)
        if (in[x]) next[right[x][letter - 1]] = 1;
      in.swap(next);
    }
    return in;
  }
};

}  // namespace

TEST_CASE("group orders by enumeration against two oracles") {
  for (const char* t : {"A1", "A2", "A3", "A4", "B3", "C3", "D4", "D5", "G2", "F4", "E6"}) {
    CAPTURE(t);
    const auto rs = build(t);
    const auto e = enumerate(rs);
    CHECK(e.size() == classical_order(rs->type()));
    CHECK(e.size() == order_from_degrees(rs->type()));
  }
  CHECK(order_from_degrees(CartanType{'E', 8}) == 696729600);
}

TEST_CASE("enumeration is shortlex with reduced words") {
  const auto rs = build("B3");
  const auto e = enumerate(rs);
  REQUIRE(e.elements.size() == e.words.size());
  CHECK(e.elements.front().is_identity());
  for (std::size_t k = 0; k < e.size(); ++k) {
    CHECK(static_cast<int>(e.words[k].size()) == length(e.elements[k]));
    CHECK(from_word(rs, e.words[k]) == e.elements[k]);
    CHECK(reduced_word(e.elements[k]) == e.words[k]);
    if (k) CHECK(shortlex_less(e.words[k - 1], e.words[k]));
  }
}

TEST_CASE("budget is enforced") {
  try {
    enumerate(build("E6"), 1000);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& ex) {
    CHECK(ex.partial_count() > 1000);
  }
}

TEST_CASE("multiplication conventions") {
  const auto rs = build("A2");
  const auto s1 = simple_reflection(rs, 1), s2 = simple_reflection(rs, 2);
  // mult(u, w) applies w first.
  const auto a1 = rs->root(rs->simple(1));
  CHECK(apply(mult(s1, s2), a1) == apply(s1, apply(s2, a1)));
  CHECK(from_word(rs, {1, 2}) == mult(s1, s2));
  CHECK(mult(s1, s1).is_identity());
  CHECK(mult(from_word(rs, {1, 2}), inv(from_word(rs, {1, 2}))).is_identity());
  // Braid relation.
  CHECK(from_word(rs, {1, 2, 1}) == from_word(rs, {2, 1, 2}));
  CHECK(reduced_word(from_word(rs, {2, 1, 2})) == Word{1, 2, 1});
  CHECK(reduced_word(from_word(rs, {2, 2})).empty());
  CHECK(first_left_descent(WeylElement::identity(rs)) == 0);
  CHECK(first_left_descent(from_word(rs, {2, 1})) == 2);
}

TEST_CASE("associativity and inverse on random words") {
  const auto rs = build("D5");
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> letter(1, 5), len(0, 15);
  auto random_element = [&] {
    Word w(len(rng));
    for (auto& x : w) x = letter(rng);
    return from_word(rs, w);
  };
  for (int k = 0; k < 200; ++k) {
    const auto a = random_element(), b = random_element(), c = random_element();
    CHECK(mult(mult(a, b), c) == mult(a, mult(b, c)));
    CHECK(length(inv(a)) == length(a));
    CHECK(length(mult(a, b)) <= length(a) + length(b));
    const auto m = a.matrix();
    // The matrix of a Weyl element has determinant +-1; check the columns are the simple images.
    for (int j = 1; j <= 5; ++j)
      for (int i = 0; i < 5; ++i) CHECK(m(i, j - 1) == rs->root(a.image_of_simple(j)).coords[i]);
  }
}

TEST_CASE("longest elements") {
  for (const char* t : {"A3", "D4", "D5", "E6", "B3"}) {
    CAPTURE(t);
    const auto rs = build(t);
    rootsys::IndexSet all;
    for (int i = 1; i <= rs->rank(); ++i) all.push_back(i);
    const auto w0 = longest_element(rs, all);
    CHECK(length(w0) == static_cast<int>(rs->num_positive()));
    for (std::size_t k = 0; k < rs->num_positive(); ++k)
      CHECK_FALSE(rs->is_positive(w0.apply(static_cast<rootsys::RootIndex>(k))));
    CHECK(mult(w0, w0).is_identity());
  }
  const auto a3 = build("A3");
  CHECK(longest_element(a3, {1, 3}) == from_word(a3, {1, 3}));
  CHECK(longest_element(a3, {}).is_identity());
  CHECK(length(longest_element(a3, {1, 2})) == 3);
}

TEST_CASE("reflections in arbitrary roots") {
  const auto rs = build("A3");
  const auto s = reflection(rs, rootsys::Root{{1, 1, 0}});
  CHECK(s == from_word(rs, {1, 2, 1}));
  CHECK(reflection(rs, rootsys::Root{{-1, -1, 0}}) == s);
}

TEST_CASE("Bruhat order matches the subword oracle on all pairs of A2 and A3") {
  for (const char* t : {"A2", "A3"}) {
    CAPTURE(t);
    const Table table(build(t));
    const auto n = static_cast<int>(table.e.size());
    int mismatches = 0;
    for (int w = 0; w < n; ++w) {
      const auto below = table.below(w);
      for (int u = 0; u < n; ++u)
        mismatches += bruhat_leq(table.e.elements[u], table.e.elements[w]) != static_cast<bool>(below[u]);
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("Bruhat order matches the subword oracle on random pairs of D5") {
  const Table table(build("D5"));
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(table.e.size()) - 1);
  std::map<int, std::vector<char>> cache;
  int mismatches = 0, related = 0;
  for (int k = 0; k < 10000; ++k) {
    const int w = pick(rng), u = pick(rng);
    auto it = cache.find(w);
    if (it == cache.end()) it = cache.emplace(w, table.below(w)).first;
    const bool oracle = it->second[u];
    related += oracle;
    mismatches += bruhat_leq(table.e.elements[u], table.e.elements[w]) != oracle;
  }
  CHECK(mismatches == 0);
  CHECK(related > 0);
}

TEST_CASE("Bruhat order basics") {
  const auto rs = build("D4");
  const auto e = WeylElement::identity(rs);
  const auto w0 = longest_element(rs, {1, 2, 3, 4});
  CHECK(bruhat_leq(e, w0));
  CHECK_FALSE(bruhat_leq(w0, e));
  CHECK(bruhat_leq(simple_reflection(rs, 3), w0));
  CHECK_FALSE(bruhat_leq(simple_reflection(rs, 3), simple_reflection(rs, 4)));
}
