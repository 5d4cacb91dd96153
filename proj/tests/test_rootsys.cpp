#include <set>

#include "doctest.h"
#include "twistlab/errors.hpp"
#include "twistlab/rootsys.hpp"

using namespace twistlab;
using namespace twistlab::rootsys;

namespace {

RootSystemPtr build(const char* t) { return RootSystem::build(CartanType::parse(t)); }

std::size_t expected_roots(char family, int n) {
  switch (family) {
    case 'A': return n * (n + 1);
    case 'B':
    case 'C': return 2 * n * n;
    case 'D': return 2 * n * (n - 1);
    case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
    case 'F': return 48;
    default: return 12;
  }
}

}  // namespace

TEST_CASE("root counts for every family") {
  const std::vector<std::string> types{"A1", "A2", "A3", "A5", "A7", "B2", "B3", "B5", "C3", "C4", "D3",
                                       "D4", "D5", "D6", "D7", "E6", "E7", "E8", "F4", "G2"};
  for (const auto& t : types) {
    CAPTURE(t);
    const auto rs = build(t.c_str());
    CHECK(rs->num_roots() == expected_roots(t[0], rs->rank()));
    CHECK(rs->num_positive() * 2 == rs->num_roots());
  }
}

TEST_CASE("type parsing") {
  CHECK(CartanType::parse("d4") == CartanType{'D', 4});
  CHECK(CartanType::parse(" E6 ").name() == "E6");
  CHECK_THROWS_AS(CartanType::parse("X3"), DomainError);
  CHECK_THROWS_AS(CartanType::parse("A0"), DomainError);
  CHECK_THROWS_AS(CartanType::parse("E9"), DomainError);
  CHECK_THROWS_AS(CartanType::parse("D"), DomainError);
  CHECK_THROWS_AS(CartanType::parse("F5"), DomainError);
}

TEST_CASE("Bourbaki numbering of the Cartan matrices") {
  const auto d4 = build("D4");
  const auto& a = d4->cartan_matrix();
  // Node 2 is the branch point.
  CHECK(a(1, 0) == -1);
  CHECK(a(1, 2) == -1);
  CHECK(a(1, 3) == -1);
  CHECK(a(2, 3) == 0);

  const auto e6 = build("E6");
  const auto& e = e6->cartan_matrix();
  CHECK(e(0, 2) == -1);
  CHECK(e(1, 3) == -1);
  CHECK(e(2, 3) == -1);
  CHECK(e(3, 4) == -1);
  CHECK(e(4, 5) == -1);
  CHECK(e(0, 1) == 0);
  CHECK(e(1, 2) == 0);

  // B2 with alpha_1 long: A_12 = -1, A_21 = -2.
  const auto b2 = build("B2");
  CHECK(b2->cartan_matrix()(0, 1) == -1);
  CHECK(b2->cartan_matrix()(1, 0) == -2);
}

TEST_CASE("highest roots and bad primes") {
  CHECK(highest_root(*build("D4")).coords == std::vector<int>{1, 2, 1, 1});
  CHECK(highest_root(*build("E6")).coords == std::vector<int>{1, 2, 2, 3, 2, 1});
  CHECK(highest_root(*build("E8")).coords == std::vector<int>{2, 3, 4, 6, 5, 4, 3, 2});
  CHECK(highest_root(*build("A4")).coords == std::vector<int>{1, 1, 1, 1});
  CHECK(bad_primes(*build("A5")).empty());
  CHECK(bad_primes(*build("D5")) == std::vector<int>{2});
  CHECK(bad_primes(*build("E6")) == std::vector<int>{2, 3});
  CHECK(bad_primes(*build("E8")) == std::vector<int>{2, 3, 5});
  CHECK(is_good_prime(*build("E7"), 5));
  CHECK_FALSE(is_good_prime(*build("E7"), 3));
}

TEST_CASE("root order puts the simple roots first") {
  const auto rs = build("E6");
  for (int i = 1; i <= 6; ++i) {
    std::vector<int> e(6, 0);
    e[i - 1] = 1;
    CHECK(rs->root(rs->simple(i)).coords == e);
  }
  int last = 0;
  for (const auto& r : rs->positive_roots()) {
    CHECK(r.height() >= last);
    last = r.height();
  }
  for (std::size_t k = 0; k < rs->num_positive(); ++k) {
    const auto i = static_cast<RootIndex>(k);
    CHECK(rs->root(rs->negative(i)) == -rs->root(i));
  }
}

TEST_CASE("simple reflections are involutive permutations of the roots") {
  for (const char* t : {"A3", "B3", "G2", "D5", "F4"}) {
    CAPTURE(t);
    const auto rs = build(t);
    for (int i = 1; i <= rs->rank(); ++i) {
      const auto& s = rs->simple_reflection(i);
      std::set<RootIndex> image(s.begin(), s.end());
      CHECK(image.size() == rs->num_roots());
      for (std::size_t k = 0; k < s.size(); ++k) CHECK(s[s[k]] == k);
      CHECK(s[rs->simple(i)] == rs->negative(rs->simple(i)));
      // Every other positive root stays positive.
      for (std::size_t k = 0; k < rs->num_positive(); ++k)
        if (k != static_cast<std::size_t>(rs->simple(i))) CHECK(rs->is_positive(s[k]));
    }
  }
}

TEST_CASE("diagram automorphisms") {
  CHECK(diagram_auts(*build("A1")).size() == 1);
  CHECK(diagram_auts(*build("A3")).size() == 2);
  CHECK(diagram_auts(*build("B3")).size() == 1);
  CHECK(diagram_auts(*build("D4")).size() == 6);
  CHECK(diagram_auts(*build("D5")).size() == 2);
  CHECK(diagram_auts(*build("E6")).size() == 2);
  CHECK(diagram_auts(*build("E7")).size() == 1);

  const auto d4 = build("D4");
  const auto t = DiagramAut::parse_cycles("(1 3 4)", 4);
  CHECK(t.order() == 3);
  CHECK(t(1) == 3);
  CHECK(t(3) == 4);
  CHECK(t(4) == 1);
  CHECK(t.preserves(*d4));
  CHECK(t.cycles() == "(1 3 4)");
  CHECK(t.inverse().cycles() == "(1 4 3)");
  CHECK(DiagramAut::identity(4).cycles() == "()");
  CHECK_FALSE(DiagramAut::parse_cycles("(1 2)", 4).preserves(*d4));
  CHECK(t.stabilizes({2}));
  CHECK_FALSE(t.stabilizes({1, 2}));
  CHECK(t.apply(Root{{1, 1, 0, 0}}) == Root{{0, 1, 1, 0}});
  CHECK_THROWS_AS(DiagramAut::parse_cycles("(1 5)", 4), DomainError);
  CHECK_THROWS_AS(DiagramAut::parse_cycles("(1 2)(2 3)", 4), DomainError);
}

TEST_CASE("subsystems and their types") {
  const auto d4 = build("D4");
  // theta-invariant positive roots of D4 under (3 4): their span is of type A3.
  const std::vector<Root> gens{Root{{1, 0, 0, 0}}, Root{{0, 1, 0, 0}}, Root{{0, 1, 1, 1}}};
  const auto sub = subsystem(*d4, gens);
  CHECK(sub.roots.size() == 12);
  CHECK(sub.components == std::vector<CartanType>{{'A', 3}});
  CHECK(type_name(sub.components) == "A3");

  const auto a3 = build("A3");
  const std::vector<Root> ends{Root{{1, 0, 0}}, Root{{0, 0, 1}}};
  const auto two = subsystem(*a3, ends);
  CHECK(two.components == std::vector<CartanType>{{'A', 1}, {'A', 1}});
  CHECK(type_name(two.components) == "A1xA1");
  CHECK(type_name({}) == "");

  const auto g2 = build("G2");
  CHECK(subsystem(*g2, g2->positive_roots()).components == std::vector<CartanType>{{'G', 2}});
}

TEST_CASE("orthogonal complements") {
  const auto a3 = build("A3");
  // e1 - e4 is the only positive root orthogonal to e2 - e3.
  CHECK(perp(*a3, {1, 3}).empty());
  const auto p = perp(*a3, {2});
  CHECK(p.size() == 2);
  for (const auto& r : p) CHECK((r == Root{{1, 1, 1}} || r == Root{{-1, -1, -1}}));
}

TEST_CASE("lookup") {
  const auto rs = build("D4");
  CHECK(rs->find(Root{{1, 2, 1, 1}}).has_value());
  CHECK(rs->find(Root{{1, 1, 1, 0}}).has_value());
  CHECK_FALSE(rs->find(Root{{2, 2, 1, 1}}).has_value());
  CHECK_THROWS(rs->index(Root{{2, 2, 1, 1}}));
}
