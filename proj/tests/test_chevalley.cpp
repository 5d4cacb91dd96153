#include <random>

#include "doctest.h"
#include "twistlab/errors.hpp"
#include "twistlab/experiment.hpp"

using namespace twistlab;
using namespace twistlab::chevalley;

namespace {

Matrix random_upper(const Lab& lab, std::mt19937_64& rng) {
  const auto& f = lab.field();
  const int m = lab.m();
  std::uniform_int_distribution<int> entry(0, f.p() - 1), unit(1, f.p() - 1);
  Matrix b(m);
  int prod = 1;
  for (int i = 0; i < m; ++i) {
    const int d = i + 1 < m ? unit(rng) : f.inv(prod);
    prod = f.mul(prod, d);
    b.set(i, i, d);
    for (int j = i + 1; j < m; ++j) b.set(i, j, entry(rng));
  }
  return b;
}

Matrix permutation_matrix(const std::vector<int>& w, const FieldPrime& f) {
  // Column j has its 1 in row w[j].
  const int m = static_cast<int>(w.size());
  std::vector<std::vector<int>> rows(m, std::vector<int>(m, 0));
  for (int j = 0; j < m; ++j) rows[w[j] - 1][j] = 1;
  return Matrix::from_rows(rows, f);
}

}  // namespace

TEST_CASE("prime fields") {
  const FieldPrime f(7);
  CHECK(f.primitive_root() == 3);
  for (int a = 1; a < 7; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK(f.neg(0) == 0);
  CHECK(f.sub(2, 5) == 4);
  for (int s = 0; s < 5000; ++s) CHECK(f.reduce(s) == s % 7);
  CHECK(FieldPrime(251).reduce(8 * 250 * 250) == (8 * 250 * 250) % 251);
  CHECK_THROWS_AS(FieldPrime(9), DomainError);
  CHECK_THROWS_AS(FieldPrime(2), DomainError);
  CHECK_THROWS_AS(FieldPrime(257), DomainError);
  CHECK_THROWS_AS(f.inv(0), DomainError);
}

TEST_CASE("matrix arithmetic") {
  const FieldPrime f(5);
  const auto a = Matrix::from_rows({{1, 2}, {3, 4}}, f);
  CHECK(det(a, f) == f.sub(4, 6 % 5));
  CHECK(mul(a, inverse(a, f), f) == Matrix::identity(2));
  CHECK(transpose(a)(0, 1) == 3);
  CHECK(Matrix::from_rows({{-1, 7}, {0, 1}}, f)(0, 0) == 4);
  CHECK_THROWS_AS(inverse(Matrix::from_rows({{1, 2}, {2, 4}}, f), f), DomainError);
  CHECK(det(Matrix::from_rows({{1, 2}, {2, 4}}, f), f) == 0);
  CHECK(is_upper_triangular(Matrix::from_rows({{1, 2}, {0, 4}}, f)));
  CHECK_FALSE(is_upper_triangular(a));
}

TEST_CASE("encoding round trip") {
  const Lab lab(4, 5);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 200; ++k) {
    const auto x = lab.random_element(rng);
    CHECK(det(x, lab.field()) == 1);
    CHECK(lab.encoder().decode(lab.encoder().encode(x)) == x);
  }
  CHECK_THROWS_AS(Encoder(8, 251), DomainError);
  const Encoder big(4, 251);
  const auto x = Matrix::from_rows(std::vector<std::vector<int>>(4, std::vector<int>(4, 250)), FieldPrime(251));
  CHECK(big.decode(big.encode(x)) == x);
}

TEST_CASE("the involution is pinned") {
  for (int p : {3, 5, 7}) {
    const Lab lab(4, p);
    const auto& f = lab.field();
    const auto& th = lab.theta();
    for (int i = 1; i < 4; ++i)
      for (int t = 0; t < p; ++t) CHECK(th.apply(root_element(4, i, t, f)) == root_element(4, 4 - i, t, f));
    std::mt19937_64 rng(p);
    for (int k = 0; k < 100; ++k) {
      const auto g = lab.random_element(rng);
      CHECK(th.apply(th.apply(g)) == g);
      CHECK(mul(th.apply(g), th.apply_inverse(g), f) == Matrix::identity(4));
      // g theta(g)^{-1} is sent to its inverse.
      const auto x = mul(g, th.apply_inverse(g), f);
      CHECK(th.apply(x) == inverse(x, f));
      const auto b = random_upper(lab, rng);
      CHECK(is_upper_triangular(th.apply(b)));
    }
    // theta(diag(t1..t4)) = diag(t4^-1, .., t1^-1).
    const auto d = diagonal({2, 1, 1, f.inv(2)}, f);
    CHECK(th.apply(d) == diagonal({2, 1, 1, f.inv(2)}, f));
    const auto e = diagonal({2, 2, f.inv(2), f.inv(2)}, f);
    CHECK(th.apply(e) == diagonal({2, 2, f.inv(2), f.inv(2)}, f));
    const auto h = torus_element(4, 1, f.primitive_root(), f);
    CHECK(th.apply(h) == torus_element(4, 3, f.primitive_root(), f));
  }
}

TEST_CASE("rank-one smoke test") {
  const FieldPrime f(5);
  const auto th = make_involution(2, f);
  std::mt19937_64 rng(2);
  const Lab lab(2, 5);
  for (int k = 0; k < 50; ++k) {
    const auto g = lab.random_element(rng);
    CHECK(th.apply(th.apply(g)) == g);
  }
  CHECK(is_upper_triangular(th.apply(root_element(2, 1, 3, f))));
}

TEST_CASE("Bruhat cells of matrices") {
  const Lab lab(4, 5);
  const auto& f = lab.field();
  CHECK(bruhat_cell(Matrix::identity(4), f) == std::vector<int>{1, 2, 3, 4});
  CHECK(bruhat_cell(permutation_matrix({4, 3, 2, 1}, f), f) == std::vector<int>{4, 3, 2, 1});
  CHECK(permutation_to_weyl(lab.setting().rs(), {4, 3, 2, 1}) == lab.setting().w0());
  CHECK_THROWS_AS(bruhat_cell(Matrix(4), f), DomainError);

  std::mt19937_64 rng(5);
  for (int k = 0; k < 300; ++k) {
    const auto b = random_upper(lab, rng);
    CHECK(bruhat_cell(b, f) == std::vector<int>{1, 2, 3, 4});
    const auto g = lab.random_element(rng);
    const auto w = bruhat_cell(g, f);
    CHECK(w == bruhat_cell_by_ranks(g, f));
    CHECK(bruhat_cell(mul(mul(random_upper(lab, rng), g, f), random_upper(lab, rng), f), f) == w);
  }
  // A permutation matrix times B lies in its own cell.
  const std::vector<int> w{2, 4, 1, 3};
  CHECK(bruhat_cell(mul(permutation_matrix(w, f), random_upper(lab, rng), f), f) == w);
  // Lifts of Weyl elements land in their own cells.
  for (const auto& x : weyl::enumerate(lab.setting().rs()).elements) {
    const auto cell = bruhat_cell(lab.lift(x), f);
    CHECK(permutation_to_weyl(lab.setting().rs(), cell) == x);
  }
}

TEST_CASE("orbit of the identity in SL4(F3)") {
  const Lab lab(4, 3);
  const auto orbit = twisted_orbit(lab, Matrix::identity(4));
  // |SL4(F3)| / |Sp4(F3)|.
  CHECK(orbit.size() == 12130560 / 51840);
  CHECK(orbit.size() == 234);
  CHECK(std::is_sorted(orbit.elements.begin(), orbit.elements.end()));

  // Closure: every generator keeps us inside.
  const auto& f = lab.field();
  for (const auto& code : orbit.elements) {
    const auto x = lab.encoder().decode(code);
    for (const auto& g : lab.generators()) {
      const auto y = mul(mul(g, x, f), lab.theta().apply_inverse(g), f);
      CHECK(std::binary_search(orbit.elements.begin(), orbit.elements.end(), lab.encoder().encode(y)));
    }
  }

  const auto cells = cells_hit(lab, orbit);
  std::size_t total = 0;
  for (auto n : cells.counts) total += n;
  CHECK(total == 234);
  const auto v = involutive_check(lab.setting(), cells);
  CHECK(v.involutive);
  REQUIRE(v.w_max.has_value());
  const auto& s = lab.setting();
  CHECK(*v.w_max == weyl::mult(s.w0(), weyl::longest_element(s.rs(), {1, 3})));

  const auto st = stabilizer_dim(lab, Matrix::identity(4));
  CHECK(st.stabilizer_dim == 10);
  CHECK(st.class_dim == 5);
  CHECK_FALSE(st.advisory);

  const auto sizes = borel_orbit_sizes(lab, orbit);
  std::size_t sum = 0;
  for (auto n : sizes) {
    sum += n;
    CHECK(borel_order(4, 3) % n == 0);
  }
  CHECK(sum == 234);
}

TEST_CASE("orbit independent of the starting point") {
  const Lab lab(4, 3);
  const auto a = twisted_orbit(lab, Matrix::identity(4));
  // Start from another member of the same orbit.
  const auto& f = lab.field();
  const auto g = root_element(4, 2, 1, f);
  const auto b = twisted_orbit(lab, mul(g, lab.theta().apply_inverse(g), f));
  CHECK(a.elements == b.elements);
}

TEST_CASE("budget and input errors") {
  const Lab lab(4, 3);
  try {
    twisted_orbit(lab, lab.lift(lab.setting().w0()), 100);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.partial_count() > 100);
  }
  CHECK_THROWS_AS(twisted_orbit(lab, diagonal({2, 1, 1, 1}, lab.field())), DomainError);
  CHECK_THROWS_AS(Lab(3, 5), DomainError);
  CHECK_THROWS_AS(parse_representative(lab, "diag:2,1,1,1", 1), DomainError);
  CHECK_THROWS_AS(parse_representative(lab, "x4", 1), DomainError);
  CHECK_THROWS_AS(parse_representative(lab, "bogus", 1), DomainError);
  CHECK(parse_representative(lab, "x-2", 1) == negative_root_element(4, 2, 1, lab.field()));
  CHECK(parse_representative(lab, "rows:0,1,0,0;-1,0,0,0;0,0,1,0;0,0,0,1", 1).size() == 4);
  CHECK(parse_representative(lab, "identity*w0", 1) == lab.lift(lab.setting().w0()));
}

TEST_CASE("separability flag") {
  CHECK(Lab(4, 3).separable());
  CHECK_FALSE(Lab(6, 3).separable());
  const Lab lab(6, 3);
  CHECK(stabilizer_dim(lab, Matrix::identity(6)).advisory);
}

TEST_CASE("orbit reports") {
  const Lab lab(4, 3);
  const auto r = analyze_orbit(lab, "identity", Matrix::identity(4), 1);
  CHECK(r.complete);
  CHECK(r.orbit_size == 234);
  CHECK(r.formula_dim == 5);
  CHECK(r.verdict == "spherical");
  CHECK(r.consistent());

  const auto x = analyze_orbit(lab, "x1", parse_representative(lab, "x1", 1), 1);
  CHECK_FALSE(x.involutive);
  CHECK(x.stabilizer.class_dim != *x.formula_dim);
  CHECK(x.verdict == "non-spherical");

  const auto cut = analyze_orbit(lab, "w0", lab.lift(lab.setting().w0()), 1, 50);
  CHECK_FALSE(cut.complete);
  CHECK(cut.verdict == "advisory");
  CHECK(cut.partial_size > 50);
}

TEST_CASE("standard representatives") {
  const Lab lab(4, 5);
  const auto reps = standard_representatives(lab, 9, 2);
  CHECK(reps.size() >= 17);
  for (const auto& r : reps) CHECK(det(r.x, lab.field()) == 1);
  // Deterministic in the seed.
  const auto again = standard_representatives(lab, 9, 2);
  for (std::size_t k = 0; k < reps.size(); ++k) CHECK(reps[k].x == again[k].x);
  CHECK(standard_representatives(lab, 10, 2).back().x != reps.back().x);
}
