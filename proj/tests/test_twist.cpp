#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "twistlab/errors.hpp"
#include "twistlab/twist.hpp"

using namespace twistlab;
using namespace twistlab::twist;
using rootsys::RootSystem;
using weyl::from_word;
using weyl::mult;

namespace {

RootSystemPtr build(const char* t) { return RootSystem::build(CartanType::parse(t)); }

TwistedSetting setting(const char* t, const char* theta) {
  const auto rs = build(t);
  return TwistedSetting(rs, parse_theta(rs, theta));
}

// Involutions of S_n, counted on permutations directly.
int involutions_in_symmetric_group(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  int count = 0;
  do {
    bool inv = true;
    for (int i = 0; i < n; ++i) inv = inv && p[p[i]] == i;
    count += inv;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

// theta(w) by relabelling the letters of a reduced word.
WeylElement relabel(const TwistedSetting& s, const WeylElement& w) {
  auto word = weyl::reduced_word(w);
  for (auto& i : word) i = s.theta()(i);
  return from_word(s.rs(), word);
}

}  // namespace

TEST_CASE("theta on W is letter relabelling") {
  const auto a3 = setting("A3", "(1 3)");
  CHECK(theta_on_w(a3, weyl::simple_reflection(a3.rs(), 1)) == weyl::simple_reflection(a3.rs(), 3));
  CHECK(theta_on_w(a3, a3.w0()) == a3.w0());
  CHECK(theta_on_w(a3, WeylElement::identity(a3.rs())).is_identity());

  const auto d4 = build("D4");
  const auto all = weyl::enumerate(d4);
  for (const auto& theta : rootsys::diagram_auts(*d4)) {
    const TwistedSetting s(d4, theta);
    for (const auto& w : all.elements) CHECK(theta_on_w(s, w) == relabel(s, w));
  }
}

TEST_CASE("settings and automorphism aliases") {
  CHECK(neg_w0(build("A3")).cycles() == "(1 3)");
  CHECK(neg_w0(build("D4")).is_identity());
  CHECK(neg_w0(build("D5")).cycles() == "(4 5)");
  CHECK(neg_w0(build("E6")).cycles() == "(1 6)(3 5)");
  CHECK(neg_w0(build("E7")).is_identity());

  const auto d4 = build("D4");
  CHECK(parse_theta(d4, "swap-last").cycles() == "(3 4)");
  CHECK(parse_theta(d4, "triality-a").order() == 3);
  CHECK(parse_theta(d4, "triality-b") == parse_theta(d4, "triality-a").inverse());
  CHECK(parse_theta(d4, "triality-a")(1) == 3);
  CHECK(parse_theta(d4, "id").is_identity());
  CHECK_THROWS_AS(parse_theta(build("A3"), "swap-last"), DomainError);
  CHECK_THROWS_AS(parse_theta(build("D5"), "triality-a"), DomainError);
  CHECK_THROWS_AS(parse_theta(d4, "(1 2)"), DomainError);
  CHECK_THROWS_AS(parse_theta(d4, "sideways"), DomainError);
  CHECK_THROWS_AS(TwistedSetting(d4, rootsys::DiagramAut::parse_cycles("(1 2)", 4)), DomainError);

  CHECK(longest_kind(setting("A3", "(1 3)")) == LongestKind::MinusTheta);
  CHECK(longest_kind(setting("D4", "(3 4)")) == LongestKind::MinusOne);
  CHECK(longest_kind(setting("A3", "id")) == LongestKind::Other);
  CHECK(setting("D4", "(3 4)").theta_matrix()(2, 3) == 1);
}

TEST_CASE("twisted involutions, single elements") {
  const auto s = setting("A3", "(1 3)");
  const auto& rs = s.rs();
  CHECK(is_twisted_involution(s, WeylElement::identity(rs)));
  CHECK(is_twisted_involution(s, weyl::simple_reflection(rs, 2)));
  CHECK_FALSE(is_twisted_involution(s, weyl::simple_reflection(rs, 1)));

  const auto t = setting("D4", "triality-a");
  CHECK_FALSE(is_twisted_involution(t, mult(weyl::simple_reflection(t.rs(), 1), t.w0())));
}

TEST_CASE("twisted involution counts") {
  // theta = -w0 in type A: w is a twisted involution iff w w0 is an involution.
  for (int n : {1, 2, 3, 4, 5}) {
    const auto rs = RootSystem::build(CartanType{'A', n});
    const TwistedSetting s(rs, neg_w0(rs));
    CAPTURE(n);
    CHECK(static_cast<int>(twisted_involutions_by_filter(s).size()) == involutions_in_symmetric_group(n + 1));
  }
  const auto a1 = setting("A1", "id");
  CHECK(twisted_involutions_by_filter(a1).size() == 2);
  CHECK(twisted_involutions_by_steps(a1).size() == 2);
}

TEST_CASE("both enumerations agree for every involutive diagram automorphism") {
  for (const char* t : {"A3", "A4", "D4", "D5", "B3"}) {
    const auto rs = build(t);
    for (const auto& theta : rootsys::diagram_auts(*rs)) {
      if (theta.order() > 2) continue;
      const TwistedSetting s(rs, theta);
      CAPTURE(s.label());
      CHECK(twisted_involutions_by_filter(s) == twisted_involutions_by_steps(s));
    }
  }
  CHECK_THROWS_AS(twisted_involutions_by_steps(setting("D4", "triality-a")), DomainError);
}

TEST_CASE("step types") {
  const auto s = setting("A3", "(1 3)");
  const auto e = WeylElement::identity(s.rs());
  CHECK(step_type(s, e, 2) == StepType::Middle);
  CHECK(step_type(s, e, 1) == StepType::Up);
  CHECK(step_type(s, e, 3) == StepType::Up);
  CHECK(to_string(StepType::Down) == "DOWN");
  CHECK_THROWS_AS(step_type(s, weyl::simple_reflection(s.rs(), 1), 1), DomainError);
  // w0 is maximal, so nothing goes up from it.
  for (int i = 1; i <= 3; ++i) CHECK(step_type(s, s.w0(), i) != StepType::Up);
}

TEST_CASE("twisted identities") {
  const auto s = setting("A3", "(1 3)");
  const auto e = WeylElement::identity(s.rs());
  const auto w = twisted_identity_witness(s, e);
  REQUIRE(w.has_value());
  CHECK(mult(*w, weyl::inv(theta_on_w(s, *w))) == e);

  // Every twisted identity is a twisted involution, and the witness is genuine.
  for (const auto& x : weyl::enumerate(s.rs()).elements) {
    const auto u = twisted_identity_witness(s, x);
    if (!u) continue;
    CHECK(is_twisted_involution(s, x));
    CHECK(mult(*u, weyl::inv(theta_on_w(s, *u))) == x);
  }
  CHECK_FALSE(is_twisted_identity(s, weyl::simple_reflection(s.rs(), 1)));
}

TEST_CASE("explicit witnesses for D4 and D5") {
  for (const char* t : {"D4", "D5"}) {
    CAPTURE(t);
    const auto s = setting(t, "swap-last");
    const int n = s.rs()->rank();
    rootsys::IndexSet pi;
    for (int i = 2; i <= n; ++i) pi.push_back(i);
    const auto wc = mult(s.w0(), weyl::longest_element(s.rs(), pi));
    std::vector<int> c(n, 1);
    c[n - 1] = 0;
    const auto u = weyl::reflection(s.rs(), Root{c});
    CHECK(mult(u, weyl::inv(theta_on_w(s, u))) == wc);
  }
}

TEST_CASE("root classification and recovered Pi") {
  const auto a3 = setting("A3", "(1 3)");
  const auto all = roots_classification(a3, a3.w0());
  CHECK(all.real.size() == 6);
  CHECK(all.imaginary.empty());
  CHECK(all.complex.empty());
  CHECK(pi_of(a3, a3.w0()).empty());

  const auto wc = mult(a3.w0(), weyl::longest_element(a3.rs(), {1, 3}));
  const auto cl = roots_classification(a3, wc);
  CHECK(cl.imaginary == std::vector<RootIndex>{a3.rs()->simple(1), a3.rs()->simple(3)});
  CHECK(pi_of(a3, wc) == rootsys::IndexSet{1, 3});

  const auto d4 = setting("D4", "(3 4)");
  const auto r = roots_classification(d4, d4.w0()).real;
  CHECK(r.size() == 6);
  for (auto i : r) CHECK(d4.theta_root(i) == i);
  CHECK(pi_of(d4, mult(d4.w0(), weyl::longest_element(d4.rs(), {2, 3, 4}))) == rootsys::IndexSet{2, 3, 4});
}

TEST_CASE("profiles") {
  const auto a3 = setting("A3", "(1 3)");
  auto p = profile(a3, {});
  CHECK(p.length == 6);
  CHECK(p.rank_term == 3);
  CHECK(p.dim_value == 9);
  p = profile(a3, {1, 3});
  CHECK(p.length == 4);
  CHECK(p.rank_term == 1);
  CHECK(p.dim_value == 5);
  CHECK(p.delta_r.empty());
  CHECK(p.roots.complex.size() + p.roots.imaginary.size() + p.roots.real.size() == 6);

  const auto d4 = setting("D4", "(3 4)");
  p = profile(d4, {});
  CHECK(p.length == 12);
  CHECK(p.rank_term == 3);
  CHECK(p.dim_value == 15);
  auto delta = p.delta_r;
  std::sort(delta.begin(), delta.end());
  std::vector<Root> expected{Root{{1, 0, 0, 0}}, Root{{0, 1, 0, 0}}, Root{{0, 1, 1, 1}}};
  std::sort(expected.begin(), expected.end());
  CHECK(delta == expected);
  CHECK(p.r_type == std::vector<CartanType>{{'A', 3}});

  const auto d6 = setting("D6", "swap-last");
  p = profile(d6, {});
  CHECK(p.rank_term == 5);
  CHECK(p.r_type == std::vector<CartanType>{{'D', 5}});

  CHECK_THROWS_AS(profile(a3, {1}), DomainError);
  CHECK_THROWS_AS(profile(a3, {4}), DomainError);
}

TEST_CASE("real roots closed form") {
  const auto a3 = setting("A3", "(1 3)");
  for (const auto& pi : std::vector<rootsys::IndexSet>{{}, {1, 3}, {2}}) {
    const auto f = real_roots_formula(a3, pi);
    REQUIRE(f.has_value());
    CHECK(*f == profile(a3, pi).roots.real);
  }
  CHECK_FALSE(real_roots_formula(setting("A3", "id"), {}).has_value());
}

TEST_CASE("table rows") {
  auto rows = [](const TwistedSetting& s) {
    std::vector<rootsys::IndexSet> out;
    for (const auto& r : listed_pairs(s)) out.push_back(r.pi);
    std::sort(out.begin(), out.end());
    return out;
  };
  using Sets = std::vector<rootsys::IndexSet>;
  CHECK(rows(setting("A3", "(1 3)")) == Sets{{}, {1, 3}});
  CHECK(rows(setting("A5", "neg-w0")) == Sets{{}, {1, 3, 5}});
  CHECK(rows(setting("A4", "neg-w0")) == Sets{{}});
  CHECK(rows(setting("D4", "triality-a")) == Sets{{}, {2}});
  CHECK(rows(setting("D4", "(3 4)")) == Sets{{}, {2, 3, 4}});
  CHECK(rows(setting("D4", "(1 3)")) == Sets{{}, {1, 2, 3}});
  CHECK(rows(setting("D5", "(4 5)")) == Sets{{}, {2, 3, 4, 5}, {4, 5}});
  CHECK(rows(setting("D6", "(5 6)")) == Sets{{}, {2, 3, 4, 5, 6}, {4, 5, 6}});
  CHECK(rows(setting("E6", "neg-w0")) == Sets{{}, {2, 3, 4, 5}});
  CHECK(rows(setting("E6", "id")).empty());
}

TEST_CASE("candidates against the necessary conditions") {
  auto passing = [](const TwistedSetting& s) {
    std::vector<rootsys::IndexSet> out;
    for (const auto& c : wc_candidates(s))
      if (c.conditions.all()) out.push_back(c.pi);
    return out;
  };
  auto contains = [](const std::vector<rootsys::IndexSet>& v, const rootsys::IndexSet& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  const auto a3 = passing(setting("A3", "(1 3)"));
  CHECK(contains(a3, {}));
  CHECK(contains(a3, {1, 3}));
  const auto d5 = passing(setting("D5", "(4 5)"));
  for (const auto& pi : std::vector<rootsys::IndexSet>{{}, {2, 3, 4, 5}, {4, 5}}) CHECK(contains(d5, pi));
  CHECK(contains(passing(setting("E6", "neg-w0")), {2, 3, 4, 5}));

  // Subsets come out lexicographically and are all theta-stable.
  const auto s = setting("D5", "(4 5)");
  const auto subsets = theta_stable_subsets(s);
  CHECK(std::is_sorted(subsets.begin(), subsets.end()));
  CHECK(subsets.size() == 16);
  for (const auto& pi : subsets) CHECK(s.theta().stabilizes(pi));

  // Listed rows always pass.
  for (const auto& c : wc_candidates(s))
    if (c.listed && *c.listed) CHECK(c.conditions.all());
}

TEST_CASE("triality elements are not twisted involutions") {
  for (const char* alias : {"triality-a", "triality-b"}) {
    const auto s = setting("D4", alias);
    const auto& rs = s.rs();
    const auto base = mult(weyl::simple_reflection(rs, 1), s.w0());
    for (const auto& tail : std::vector<weyl::Word>{{2, 3}, {2}, {3}, {}})
      CHECK_FALSE(is_twisted_involution(s, mult(base, from_word(rs, tail))));
  }
}
