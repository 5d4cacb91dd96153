#include "twistlab/experiment.hpp"

#include <charconv>
#include <sstream>

#include "twistlab/errors.hpp"

namespace twistlab::chevalley {

bool OrbitReport::consistent() const {
  return formula_dim.has_value() && involutive == (stabilizer.class_dim == *formula_dim);
}

OrbitReport analyze_orbit(const Lab& lab, const std::string& name, const Matrix& x, std::uint64_t seed,
                          std::size_t budget) {
  OrbitReport r;
  r.m = lab.m();
  r.p = lab.field().p();
  r.seed = seed;
  r.name = name;
  r.representative = x;
  r.stabilizer = stabilizer_dim(lab, x);

  Orbit orbit;
  try {
    orbit = twisted_orbit(lab, x, budget);
  } catch (const BudgetExceeded& e) {
    r.partial_size = e.partial_count();
    r.verdict = "advisory";
    return r;
  }
  r.complete = true;
  r.orbit_size = r.partial_size = orbit.size();

  auto cells = cells_hit(lab, orbit);
  const auto verdict = involutive_check(lab.setting(), cells);
  r.cells = std::move(cells.cells);
  r.cell_counts = std::move(cells.counts);
  r.involutive = verdict.involutive;
  r.w_max = verdict.w_max;
  if (r.w_max) r.formula_dim = weyl::length(*r.w_max) + twist::twisted_rank(lab.setting(), *r.w_max);

  if (r.stabilizer.advisory)
    r.verdict = "advisory";
  else if (!r.consistent())
    r.verdict = "counterexample";
  else
    r.verdict = r.involutive ? "spherical" : "non-spherical";
  return r;
}

namespace {

std::vector<int> parse_ints(std::string_view text, char sep) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == sep || text[pos] == ' ')) ++pos;
    if (pos >= text.size()) break;
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc()) throw DomainError("expected an integer in '" + std::string(text) + "'");
    out.push_back(v);
    pos = static_cast<std::size_t>(ptr - text.data());
  }
  return out;
}

Matrix parse_term(const Lab& lab, std::string_view term, std::mt19937_64& rng) {
  const int m = lab.m();
  const auto& f = lab.field();
  const auto& s = lab.setting();
  auto index = [&](std::string_view digits) {
    const auto v = parse_ints(digits, ',');
    if (v.size() != 1 || v[0] < 1 || v[0] >= m) throw DomainError("bad simple index in '" + std::string(term) + "'");
    return v[0];
  };
  if (term == "identity" || term == "1") return Matrix::identity(m);
  if (term == "-identity") return diagonal(std::vector<int>(m, -1), f);
  if (term == "random") return lab.random_element(rng);
  if (term == "w0") return lab.lift(s.w0());
  if (term.starts_with("wc:")) {
    auto pi = parse_ints(term.substr(3), ',');
    return lab.lift(weyl::mult(s.w0(), weyl::longest_element(s.rs(), pi)));
  }
  if (term.starts_with("diag:")) return diagonal(parse_ints(term.substr(5), ','), f);
  if (term.starts_with("rows:")) {
    std::vector<std::vector<int>> rows;
    std::size_t pos = 5;
    while (pos <= term.size()) {
      auto end = term.find(';', pos);
      if (end == std::string_view::npos) end = term.size();
      rows.push_back(parse_ints(term.substr(pos, end - pos), ','));
      pos = end + 1;
    }
    return Matrix::from_rows(rows, f);
  }
  if (term.starts_with("h")) return torus_element(m, index(term.substr(1)), f.primitive_root(), f);
  if (term.starts_with("x-")) return negative_root_element(m, index(term.substr(2)), 1, f);
  if (term.starts_with("x")) return root_element(m, index(term.substr(1)), 1, f);
  throw DomainError("unknown representative term '" + std::string(term) + "'");
}

}  // namespace

Matrix parse_representative(const Lab& lab, const std::string& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto x = Matrix::identity(lab.m());
  std::size_t pos = 0;
  std::string_view text(spec);
  while (pos <= text.size()) {
    auto end = text.find('*', pos);
    if (end == std::string_view::npos) end = text.size();
    x = mul(x, parse_term(lab, text.substr(pos, end - pos), rng), lab.field());
    pos = end + 1;
  }
  if (det(x, lab.field()) != 1) throw DomainError("representative '" + spec + "' does not have determinant 1");
  return x;
}

std::vector<Representative> standard_representatives(const Lab& lab, std::uint64_t seed, int random_count) {
  const int m = lab.m();
  std::vector<std::string> specs{"identity", "-identity"};
  for (const auto& row : twist::listed_pairs(lab.setting())) {
    std::string base = "w0";
    if (!row.pi.empty()) {
      base = "wc:";
      for (std::size_t k = 0; k < row.pi.size(); ++k) base += (k ? "," : "") + std::to_string(row.pi[k]);
    }
    specs.push_back(base);
    specs.push_back(base + "*h1");
    if (m > 2) specs.push_back(base + "*h2");
    if (m > 3) specs.push_back(base + "*h1*h" + std::to_string(m - 1));
  }
  if (lab.setting().theta().is_identity()) specs.push_back("w0");
  {
    // diag(c, .., c, c^-1, .., c^-1)
    std::ostringstream d;
    const int c = lab.field().primitive_root(), ci = lab.field().inv(c);
    d << "diag:";
    for (int k = 0; k < m; ++k) d << (k ? "," : "") << (k < m / 2 ? c : ci);
    specs.push_back(d.str());
  }
  specs.push_back("x1");
  if (m > 2) {
    specs.push_back("x2");
    specs.push_back("x1*x" + std::to_string(m - 1));
    specs.push_back("x-2*x1");
  }

  std::vector<Representative> out;
  for (const auto& spec : specs) out.push_back({spec, parse_representative(lab, spec, seed)});
  std::mt19937_64 rng(seed);
  for (int k = 0; k < random_count; ++k) out.push_back({"random#" + std::to_string(k), lab.random_element(rng)});
  return out;
}

}  // namespace twistlab::chevalley
