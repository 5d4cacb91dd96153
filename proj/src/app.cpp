#include "twistlab/app.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "twistlab/errors.hpp"

namespace twistlab::app {

using rootsys::CartanType;
using rootsys::DiagramAut;
using rootsys::IndexSet;
using rootsys::Root;
using rootsys::RootSystem;
using rootsys::RootSystemPtr;
using twist::TwistedSetting;
using weyl::WeylElement;

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Advisory: return "advisory";
  }
  return "?";
}

std::string Scope::label() const {
  if (kind == Kind::Lab) return "SL" + std::to_string(m) + "(F" + std::to_string(p) + ")";
  return type.name();
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw DomainError("not an index: '" + token + "'");
    out.push_back(v);
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '{' || c == '}') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return out;
}

std::vector<Scope> parse_scope(const std::string& spec) {
  if (spec == "none") return {};
  if (spec.starts_with("lab:")) {
    const auto rest = spec.substr(4);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw DomainError("lab scope needs lab:<m>:<p>, got '" + spec + "'");
    Scope s;
    s.kind = Scope::Kind::Lab;
    try {
      s.m = std::stoi(rest.substr(0, colon));
      s.p = std::stoi(rest.substr(colon + 1));
    } catch (const std::exception&) {
      throw DomainError("lab scope needs lab:<m>:<p>, got '" + spec + "'");
    }
    // Validates m and p.
    chevalley::Lab probe(s.m, s.p);
    return {s};
  }
  Scope s;
  const auto colon = spec.find(':');
  s.type = CartanType::parse(spec.substr(0, colon));
  const auto rs = RootSystem::build(s.type);
  if (colon == std::string::npos) {
    for (const auto& a : rootsys::diagram_auts(*rs))
      if (!a.is_identity()) s.thetas.push_back(a);
  } else {
    s.thetas.push_back(twist::parse_theta(rs, spec.substr(colon + 1)));
  }
  return {s};
}

std::vector<Scope> parse_scopes(const std::vector<std::string>& specs) {
  std::vector<Scope> out;
  for (const auto& spec : specs)
    for (auto& s : parse_scope(spec)) out.push_back(std::move(s));
  return out;
}

std::vector<Scope> default_scopes() {
  return parse_scopes({"A3", "A5", "D4", "D5", "D6", "E6", "lab:4:3"});
}

namespace {

// ---------------------------------------------------------------------------
// Small helpers

using Results = std::vector<CheckResult>;

CheckResult make(std::string id, std::string scope) {
  CheckResult r;
  r.check_id = std::move(id);
  r.scope = std::move(scope);
  return r;
}

void fail(CheckResult& r, const std::string& why) {
  r.status = Status::Fail;
  if (!r.details.empty()) r.details += "; ";
  r.details += why;
}

IndexSet all_nodes(int rank) {
  IndexSet out(rank);
  for (int i = 0; i < rank; ++i) out[i] = i + 1;
  return out;
}

/// Number of roots of an irreducible system, by family.
std::size_t root_count_oracle(const CartanType& ct) {
  const std::size_t n = ct.rank;
  switch (ct.family) {
    case 'A': return n * (n + 1);
    case 'B':
    case 'C': return 2 * n * n;
    case 'D': return 2 * n * (n - 1);
    case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
    case 'F': return 48;
    case 'G': return 12;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Root system and Weyl group checks

CheckResult check_rootsys(const RootSystemPtr& rs) {
  auto r = make("01-rootsys", rs->type().name());
  const auto expected = root_count_oracle(rs->type());
  if (rs->num_roots() != expected)
    fail(r, std::to_string(rs->num_roots()) + " roots, expected " + std::to_string(expected));
  if (2 * rs->num_positive() != rs->num_roots()) fail(r, "positive roots are not half of all roots");

  const int n = rs->rank();
  const auto& a = rs->cartan_matrix();
  const auto& g = rs->gram();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a(i, j) * g(i, i) != 2 * g(i, j)) fail(r, "Cartan matrix disagrees with the Gram matrix");

  for (std::size_t k = 0; k < rs->num_roots(); ++k) {
    const auto& b = rs->root(static_cast<rootsys::RootIndex>(k));
    const bool all_nonneg = std::all_of(b.coords.begin(), b.coords.end(), [](int c) { return c >= 0; });
    const bool all_nonpos = std::all_of(b.coords.begin(), b.coords.end(), [](int c) { return c <= 0; });
    if (!all_nonneg && !all_nonpos) fail(r, "root " + rootsys::to_string(b) + " has mixed signs");
    for (int i = 1; i <= n; ++i)
      if (!rs->find(rootsys::reflect(*rs, rs->root(rs->simple(i)), b)))
        fail(r, "not closed under s" + std::to_string(i));
  }
  // Coxeter number h = |Phi| / rank and the highest root has height h - 1.
  const auto& top = rootsys::highest_root(*rs);
  if (static_cast<std::size_t>(top.height() + 1) * n != rs->num_roots()) fail(r, "highest root height is not h - 1");

  r.data = Json{{"num_roots", rs->num_roots()},
                {"num_positive", rs->num_positive()},
                {"highest_root", report::to_json(top)},
                {"bad_primes", rootsys::bad_primes(*rs)}};
  if (r.status == Status::Pass) r.details = std::to_string(rs->num_roots()) + " roots";
  return r;
}

CheckResult check_weyl(const RootSystemPtr& rs, std::size_t budget) {
  auto r = make("02-weyl", rs->type().name());
  const auto oracle = weyl::order_from_degrees(rs->type());
  weyl::Enumeration e;
  try {
    e = weyl::enumerate(rs, budget);
  } catch (const BudgetExceeded& ex) {
    r.status = Status::Advisory;
    r.budget_exhausted = true;
    r.details = ex.what();
    r.data = Json{{"partial_count", ex.partial_count()}, {"degree_product", oracle}};
    return r;
  }
  if (e.size() != oracle) fail(r, "|W| = " + std::to_string(e.size()) + " but degrees give " + std::to_string(oracle));
  const auto w0 = weyl::longest_element(rs, all_nodes(rs->rank()));
  if (weyl::length(w0) != static_cast<int>(rs->num_positive())) fail(r, "l(w0) != |Phi+|");
  if (!(e.elements.back() == w0)) fail(r, "the last element in shortlex order is not w0");
  std::size_t bad_words = 0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const auto& w = e.elements[k];
    if (static_cast<int>(e.words[k].size()) != weyl::length(w) || !(weyl::from_word(rs, e.words[k]) == w))
      ++bad_words;
  }
  if (bad_words) fail(r, std::to_string(bad_words) + " reduced words do not round-trip");
  r.data = Json{{"order", e.size()}, {"degree_product", oracle}, {"longest_length", weyl::length(w0)}};
  if (r.status == Status::Pass) r.details = "|W| = " + std::to_string(e.size());
  return r;
}

// ---------------------------------------------------------------------------
// Twisted checks, one setting at a time

struct Row {
  twist::ListedPair pair;
  twist::ClassProfile profile;
};

std::vector<Row> instantiate(const TwistedSetting& s) {
  std::vector<Row> out;
  for (auto& pair : twist::listed_pairs(s)) {
    auto prof = twist::profile(s, pair.pi);
    out.push_back({std::move(pair), std::move(prof)});
  }
  return out;
}

CheckResult check_conditions(const TwistedSetting& s, const std::vector<Row>& rows) {
  auto r = make("03-list2-conditions", s.label());
  Json data_rows = Json::array();
  for (const auto& row : rows) {
    const auto c = twist::check_conditions(s, row.pair.pi, row.profile.w_c);
    if (!c.all()) fail(r, row.pair.row + " fails a necessary condition");
    data_rows.push_back(Json{{"row", row.pair.row}, {"Pi", report::to_json(row.pair.pi)}, {"conditions", report::to_json(c)}});
  }
  // Subsets outside the table that still pass all five conditions are reported, not judged.
  Json unlisted = Json::array();
  for (const auto& cand : twist::wc_candidates(s))
    if (cand.conditions.all() && cand.listed && !*cand.listed) unlisted.push_back(report::to_json(cand.pi));
  r.data = Json{{"rows", std::move(data_rows)}, {"unlisted_passing", unlisted}};
  if (r.status == Status::Pass) {
    r.details = std::to_string(rows.size()) + " table rows pass";
    if (rows.empty()) r.details = "no table rows for this automorphism";
    if (!unlisted.empty()) r.details += "; " + std::to_string(unlisted.size()) + " subsets outside the table also pass";
  }
  return r;
}

CheckResult check_real_roots(const TwistedSetting& s, const std::vector<Row>& rows) {
  auto r = make("04-real-roots", s.label());
  Json data_rows = Json::array();
  for (const auto& row : rows) {
    const auto& cl = row.profile.roots;
    std::set<rootsys::RootIndex> seen(cl.complex.begin(), cl.complex.end());
    seen.insert(cl.imaginary.begin(), cl.imaginary.end());
    seen.insert(cl.real.begin(), cl.real.end());
    const auto n = s.rs()->num_positive();
    const bool partition =
        seen.size() == n && cl.complex.size() + cl.imaginary.size() + cl.real.size() == n;
    if (!partition) fail(r, row.pair.row + ": C, I, R do not partition the positive roots");
    const auto formula = twist::real_roots_formula(s, row.pair.pi);
    Json entry{{"Pi", report::to_json(row.pair.pi)}, {"partition", partition}, {"real", cl.real.size()}};
    if (!formula) {
      if (r.status == Status::Pass) r.status = Status::Advisory;
      r.details += "w0 is neither -theta nor -1, no closed form; ";
      entry["formula"] = nullptr;
    } else {
      entry["formula"] = formula->size();
      if (*formula != cl.real) fail(r, row.pair.row + ": real roots differ from the closed form");
    }
    data_rows.push_back(std::move(entry));
  }
  r.data = Json{{"rows", std::move(data_rows)}};
  if (r.status == Status::Pass) r.details = "R_w matches the closed form on " + std::to_string(rows.size()) + " rows";
  return r;
}

/// rank - |Pi|, except rank - 1 for (D_{2n}, {}) with an involutive theta.
int expected_rank_term(const TwistedSetting& s, const IndexSet& pi) {
  const auto& ct = s.rs()->type();
  if (ct.family == 'D' && ct.rank % 2 == 0 && pi.empty() && s.theta().order() == 2) return ct.rank - 1;
  return ct.rank - static_cast<int>(pi.size());
}

CheckResult check_rank(const TwistedSetting& s, const std::vector<Row>& rows) {
  auto r = make("05-rank-identity", s.label());
  Json data_rows = Json::array();
  for (const auto& row : rows) {
    const int expected = expected_rank_term(s, row.pair.pi);
    if (row.profile.rank_term != expected)
      fail(r, row.pair.row + ": rk(1 - w_C theta) = " + std::to_string(row.profile.rank_term) + ", expected " +
                  std::to_string(expected));
    data_rows.push_back(Json{{"Pi", report::to_json(row.pair.pi)},
                             {"rank_term", row.profile.rank_term},
                             {"expected", expected},
                             {"dim", row.profile.dim_value}});
  }
  r.data = Json{{"rows", std::move(data_rows)}};
  if (r.status == Status::Pass) r.details = "rank identity holds on " + std::to_string(rows.size()) + " rows";
  return r;
}

/// Every root in the rational span of delta lies in the subsystem it generates.
bool q_closed(const RootSystem& rs, const std::vector<Root>& delta, std::size_t subsystem_size) {
  const int k = static_cast<int>(delta.size());
  std::size_t in_span = 0;
  for (const auto& b : rs.roots()) {
    IntMatrix m(k + 1, rs.rank());
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < rs.rank(); ++j) m(i, j) = delta[i].coords[j];
    for (int j = 0; j < rs.rank(); ++j) m(k, j) = b.coords[j];
    if (twistlab::rank(m) == k) ++in_span;
  }
  return in_span == subsystem_size;
}

CheckResult check_delta_r(const TwistedSetting& s, const std::vector<Row>& rows) {
  auto r = make("06-delta-r", s.label());
  const auto& rs = *s.rs();
  const auto& ct = rs.type();
  Json data_rows = Json::array();
  for (const auto& row : rows) {
    const auto& prof = row.profile;
    std::set<rootsys::RootIndex> real(prof.roots.real.begin(), prof.roots.real.end());
    for (const auto& b : prof.delta_r)
      if (!real.count(rs.index(b))) fail(r, row.pair.row + ": Delta_R has a root that is not real");
    std::vector<Root> symmetric;
    for (auto i : prof.roots.real) {
      symmetric.push_back(rs.root(i));
      symmetric.push_back(-rs.root(i));
    }
    const bool closed = q_closed(rs, prof.delta_r, symmetric.size());
    if (!closed) fail(r, row.pair.row + ": R is not Q-closed");

    Json entry{{"Pi", report::to_json(row.pair.pi)}, {"R_type", rootsys::type_name(prof.r_type)}, {"q_closed", closed}};
    Json delta = Json::array();
    for (const auto& b : prof.delta_r) delta.push_back(report::to_json(b));
    entry["delta_R"] = std::move(delta);

    if (ct.family == 'D' && ct.rank % 2 == 0 && row.pair.pi.empty() && s.theta().order() == 2) {
      // Type D_{2n-1} (D3 = A3).
      const int n = ct.rank;
      const auto expected_type = n - 1 == 3 ? CartanType{'A', 3} : CartanType{'D', n - 1};
      if (prof.r_type != std::vector<CartanType>{expected_type})
        fail(r, "R_type is " + rootsys::type_name(prof.r_type) + ", expected " + expected_type.name());
      entry["expected_R_type"] = expected_type.name();
      if (s.theta() == DiagramAut::parse_cycles("(" + std::to_string(n - 1) + " " + std::to_string(n) + ")", n)) {
        std::vector<Root> expected;
        for (int i = 1; i <= n - 2; ++i) expected.push_back(rs.root(rs.simple(i)));
        Root tail{std::vector<int>(n, 0)};
        tail.coords[n - 3] = tail.coords[n - 2] = tail.coords[n - 1] = 1;
        expected.push_back(tail);
        auto got = prof.delta_r;
        std::sort(got.begin(), got.end());
        std::sort(expected.begin(), expected.end());
        if (got != expected) fail(r, "Delta_R differs from {a1..a_{2n-2}, a_{2n-2}+a_{2n-1}+a_{2n}}");
        entry["expected_delta_R_matches"] = got == expected;
      }
    }
    data_rows.push_back(std::move(entry));
  }
  r.data = Json{{"rows", std::move(data_rows)}};
  if (r.status == Status::Pass) r.details = "Delta_R is real and Q-closed on " + std::to_string(rows.size()) + " rows";
  return r;
}

CheckResult check_triality(const TwistedSetting& s) {
  auto r = make("07-triality", s.label());
  const auto& ct = s.rs()->type();
  if (!(ct.family == 'D' && ct.rank == 4 && s.theta().order() == 3)) {
    r.details = "not applicable: needs an order-3 automorphism of D4";
    r.data = Json{{"applicable", false}};
    return r;
  }
  const auto& rs = s.rs();
  const auto s1 = weyl::simple_reflection(rs, 1);
  const auto base = weyl::mult(s1, s.w0());
  const std::vector<std::pair<std::string, WeylElement>> cases{
      {"s1 w0 s2 s3", weyl::mult(base, weyl::from_word(rs, {2, 3}))},
      {"s1 w0 s2", weyl::mult(base, weyl::simple_reflection(rs, 2))},
      {"s1 w0 s3", weyl::mult(base, weyl::simple_reflection(rs, 3))},
      {"s1 w0", base},
  };
  Json elems = Json::array();
  for (const auto& [name, w] : cases) {
    const bool ti = twist::is_twisted_involution(s, w);
    if (ti) fail(r, name + " is a twisted involution");
    elems.push_back(Json{{"element", name}, {"word", report::to_json(w)}, {"twisted_involution", ti}});
  }
  r.data = Json{{"applicable", true}, {"elements", std::move(elems)}};
  if (r.status == Status::Pass) r.details = "none of the four elements is a twisted involution";
  return r;
}

/// The explicit u with w_C = u theta(u)^{-1} for the three semisimple families.
std::optional<std::pair<std::string, WeylElement>> explicit_witness(const TwistedSetting& s, const IndexSet& pi) {
  const auto& rs = s.rs();
  const auto& ct = rs->type();
  const int n = ct.rank;
  const bool neg = s.theta() == twist::neg_w0(rs);
  auto root_of = [&](std::vector<int> coords) { return Root{std::move(coords)}; };
  if (ct.family == 'A' && n % 2 == 1 && neg && n >= 3) {
    IndexSet odd;
    for (int i = 1; i <= n; i += 2) odd.push_back(i);
    if (pi != odd) return std::nullopt;
    // Product of the transpositions (2k-1, n+2-2k) of the letters 1..n+1.
    auto u = WeylElement::identity(rs);
    std::string name;
    for (int k = 1; 2 * k - 1 < n + 2 - 2 * k; ++k) {
      const int a = 2 * k - 1, b = n + 2 - 2 * k;
      std::vector<int> c(n, 0);
      for (int j = a; j < b; ++j) c[j - 1] = 1;
      u = weyl::mult(u, weyl::reflection(rs, root_of(c)));
      name += "(" + std::to_string(a) + " " + std::to_string(b) + ")";
    }
    return std::pair{name, u};
  }
  if (ct.family == 'D' && s.theta() == DiagramAut::parse_cycles(
                                           "(" + std::to_string(n - 1) + " " + std::to_string(n) + ")", n)) {
    IndexSet tail;
    for (int i = 2; i <= n; ++i) tail.push_back(i);
    if (pi != tail) return std::nullopt;
    std::vector<int> c(n, 1);
    c[n - 1] = 0;
    return std::pair{"s_{a1+...+a_{n-1}}", weyl::reflection(rs, root_of(c))};
  }
  if (ct.family == 'E' && n == 6 && neg && pi == IndexSet{2, 3, 4, 5})
    return std::pair{"s_{a1+a2+a3+2a4+2a5+a6}", weyl::reflection(rs, root_of({1, 1, 1, 2, 2, 1}))};
  return std::nullopt;
}

CheckResult check_witnesses(const TwistedSetting& s, const std::vector<Row>& rows) {
  auto r = make("08-witnesses", s.label());
  Json data_rows = Json::array();
  int explicit_count = 0;
  for (const auto& row : rows) {
    const auto& w = row.profile.w_c;
    Json entry{{"Pi", report::to_json(row.pair.pi)}};
    if (auto pw = explicit_witness(s, row.pair.pi)) {
      ++explicit_count;
      const auto& u = pw->second;
      const bool ok = weyl::mult(u, weyl::inv(twist::theta_on_w(s, u))) == w;
      if (!ok) fail(r, row.pair.row + ": " + pw->first + " is not a witness");
      entry["explicit_witness"] = pw->first;
      entry["explicit_word"] = report::to_json(u);
      entry["explicit_verified"] = ok;
    }
    const auto found = twist::twisted_identity_witness(s, w);
    entry["twisted_identity"] = found.has_value();
    if (found) {
      entry["search_word"] = report::to_json(*found);
      if (!(weyl::mult(*found, weyl::inv(twist::theta_on_w(s, *found))) == w))
        fail(r, row.pair.row + ": search returned a bad witness");
    } else if (entry.contains("explicit_witness")) {
      fail(r, row.pair.row + ": search missed a known twisted identity");
    }
    data_rows.push_back(std::move(entry));
  }
  r.data = Json{{"applicable", explicit_count > 0}, {"rows", std::move(data_rows)}};
  if (r.status == Status::Pass)
    r.details = explicit_count ? std::to_string(explicit_count) + " explicit witnesses verify"
                               : "no explicit witness for this automorphism; search results recorded";
  return r;
}

CheckResult check_twisted_involutions(const TwistedSetting& s, std::size_t budget) {
  auto r = make("09-twisted-involutions", s.label());
  // The up/middle/down steps only close up when theta^2 = 1.
  const bool involutive_theta = s.theta().order() <= 2;
  std::vector<WeylElement> by_filter, by_steps;
  try {
    by_filter = twist::twisted_involutions_by_filter(s, budget);
    if (involutive_theta) by_steps = twist::twisted_involutions_by_steps(s, budget);
  } catch (const BudgetExceeded& ex) {
    r.status = Status::Advisory;
    r.budget_exhausted = true;
    r.details = ex.what();
    r.data = Json{{"partial_count", ex.partial_count()}};
    return r;
  }
  if (!involutive_theta) {
    r.data = Json{{"count", by_filter.size()}, {"steps_applicable", false}};
    r.details = std::to_string(by_filter.size()) + " twisted involutions; theta has order 3, no step search";
    return r;
  }
  if (by_filter != by_steps) fail(r, "the two enumerations disagree");

  const auto& rs = s.rs();
  std::size_t up = 0, middle = 0, down = 0, bad = 0;
  for (const auto& w : by_filter) {
    const int l = weyl::length(w);
    for (int i = 1; i <= rs->rank(); ++i) {
      const auto si = weyl::simple_reflection(rs, i);
      const auto sti = weyl::simple_reflection(rs, s.theta()(i));
      const auto conj = weyl::mult(weyl::mult(si, w), sti);
      const bool is_middle = weyl::mult(si, w) == weyl::mult(w, sti);
      const bool is_up = !is_middle && weyl::length(conj) == l + 2;
      const bool is_down = !is_middle && weyl::length(conj) == l - 2;
      const auto t = twist::step_type(s, w, i);
      const bool exclusive = (is_up ? 1 : 0) + (is_middle ? 1 : 0) + (is_down ? 1 : 0) == 1;
      const bool agrees = (t == twist::StepType::Up && is_up) || (t == twist::StepType::Middle && is_middle) ||
                          (t == twist::StepType::Down && is_down);
      const bool closes = is_middle ? twist::is_twisted_involution(s, weyl::mult(si, w))
                                    : twist::is_twisted_involution(s, conj);
      if (!exclusive || !agrees || !closes) ++bad;
      up += is_up;
      middle += is_middle;
      down += is_down;
    }
  }
  if (bad) fail(r, std::to_string(bad) + " (w, i) pairs break the up/middle/down trichotomy");
  r.data = Json{{"count", by_filter.size()}, {"steps_applicable", true}, {"up", up}, {"middle", middle}, {"down", down}};
  if (r.status == Status::Pass)
    r.details = std::to_string(by_filter.size()) + " twisted involutions, both methods agree";
  return r;
}

// ---------------------------------------------------------------------------
// Matrix lab checks

using chevalley::Lab;
using chevalley::Matrix;

Matrix random_upper(const Lab& lab, std::mt19937_64& rng) {
  const int m = lab.m();
  const auto& f = lab.field();
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

/// Exact group orders when they fit in 128 bits.
std::optional<unsigned __int128> sl_order(int m, int p) {
  unsigned __int128 q = p, out = 1;
  const unsigned __int128 cap = static_cast<unsigned __int128>(1) << 120;
  for (int k = 0; k < m * (m - 1) / 2; ++k) {
    out *= q;
    if (out > cap) return std::nullopt;
  }
  for (int k = 2; k <= m; ++k) {
    unsigned __int128 qk = 1;
    for (int j = 0; j < k; ++j) qk *= q;
    out *= qk - 1;
    if (out > cap) return std::nullopt;
  }
  return out;
}

std::optional<unsigned __int128> sp_order(int m, int p) {
  const int n = m / 2;
  unsigned __int128 q = p, out = 1;
  for (int k = 0; k < n * n; ++k) out *= q;
  for (int i = 1; i <= n; ++i) {
    unsigned __int128 q2i = 1;
    for (int j = 0; j < 2 * i; ++j) q2i *= q;
    out *= q2i - 1;
  }
  return out;
}

std::string u128_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s += static_cast<char>('0' + static_cast<int>(v % 10));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

CheckResult check_involution(const Lab& lab, const std::string& label, std::uint64_t seed) {
  auto r = make("10-chevalley-involution", label);
  const int m = lab.m();
  const auto& f = lab.field();
  const auto& th = lab.theta();
  for (int i = 1; i < m; ++i)
    for (int t = 0; t < f.p(); ++t)
      if (!(th.apply(chevalley::root_element(m, i, t, f)) == chevalley::root_element(m, m - i, t, f)))
        fail(r, "pinning fails at alpha_" + std::to_string(i));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> unit(1, f.p() - 1);
  int involution_errors = 0, torus_errors = 0, identity_errors = 0, cell_errors = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto g = lab.random_element(rng);
    if (!(th.apply(th.apply(g)) == g)) ++involution_errors;
  }
  for (int k = 0; k < 100; ++k) {
    std::vector<int> d(m);
    int prod = 1;
    for (int i = 0; i + 1 < m; ++i) prod = f.mul(prod, d[i] = unit(rng));
    d[m - 1] = f.inv(prod);
    std::vector<int> expected(m);
    for (int i = 0; i < m; ++i) expected[i] = f.inv(d[m - 1 - i]);
    if (!(th.apply(chevalley::diagonal(d, f)) == chevalley::diagonal(expected, f))) ++torus_errors;

    const auto g = lab.random_element(rng);
    const auto x = chevalley::mul(g, th.apply_inverse(g), f);
    if (!(th.apply(x) == chevalley::inverse(x, f))) ++identity_errors;

    const auto b1 = random_upper(lab, rng), b2 = random_upper(lab, rng);
    const auto cell = chevalley::bruhat_cell(g, f);
    if (cell != chevalley::bruhat_cell(chevalley::mul(chevalley::mul(b1, g, f), b2, f), f) ||
        cell != chevalley::bruhat_cell_by_ranks(g, f))
      ++cell_errors;
  }
  if (involution_errors) fail(r, "theta^2 != 1 on " + std::to_string(involution_errors) + " of 1000 elements");
  if (torus_errors) fail(r, "theta acts wrongly on the torus");
  if (identity_errors) fail(r, "theta(g theta(g)^-1) != (g theta(g)^-1)^-1");
  if (cell_errors) fail(r, "Bruhat cells are not B-bi-invariant or the two methods disagree");
  r.data = Json{{"J", report::to_json(th.j())}, {"separable", lab.separable()}};
  if (r.status == Status::Pass) r.details = "pinned involution, theta^2 = 1, Bruhat cells B-bi-invariant";
  return r;
}

CheckResult check_identity_orbit(const Lab& lab, const std::string& label, const VerifyOptions& opt) {
  auto r = make("11-identity-orbit", label);
  const auto report = chevalley::analyze_orbit(lab, "identity", Matrix::identity(lab.m()), opt.seed, opt.orbit_budget);
  r.data = report::to_json(report);
  if (!report.complete) {
    r.status = Status::Advisory;
    r.budget_exhausted = true;
    r.details = "orbit exceeds the budget";
    return r;
  }
  const auto& s = lab.setting();
  IndexSet odd;
  for (int i = 1; i < lab.m(); i += 2) odd.push_back(i);
  const auto expected_max = weyl::mult(s.w0(), weyl::longest_element(s.rs(), odd));
  if (!report.involutive) fail(r, "a cell outside the twisted involutions is hit");
  if (!report.w_max || !(*report.w_max == expected_max)) fail(r, "w_max is not w0 w_Pi for the odd nodes");
  if (!report.stabilizer.advisory && !report.consistent()) fail(r, "class_dim differs from the formula");
  const auto j = lab.theta().j();
  const bool alternating = transpose(j) == chevalley::mul(chevalley::diagonal(std::vector<int>(lab.m(), -1), lab.field()), j, lab.field());
  const auto sl = sl_order(lab.m(), lab.field().p());
  if (alternating && sl) {
    const auto expected = *sl / *sp_order(lab.m(), lab.field().p());
    r.data["expected_size"] = u128_string(expected);
    if (report.orbit_size != expected)
      fail(r, "orbit size " + std::to_string(report.orbit_size) + ", expected |SL|/|Sp| = " + u128_string(expected));
  }
  if (r.status == Status::Pass)
    r.details = "size " + std::to_string(report.orbit_size) + ", w_max = w0 w_Pi, class_dim " +
                std::to_string(report.stabilizer.class_dim);
  return r;
}

Results check_representatives(const Lab& lab, const std::string& label, const VerifyOptions& opt) {
  Results out;
  for (const auto& rep : chevalley::standard_representatives(lab, opt.seed, opt.random_count)) {
    auto r = make("12-orbit-biconditional", label + " " + rep.name);
    const auto report = chevalley::analyze_orbit(lab, rep.name, rep.x, opt.seed, opt.orbit_budget);
    r.data = report::to_json(report);
    if (!report.complete) {
      r.status = Status::Advisory;
      r.budget_exhausted = true;
      r.details = "orbit exceeds the budget after " + std::to_string(report.partial_size) + " elements";
    } else if (report.verdict == "counterexample") {
      fail(r, "involutive = " + std::string(report.involutive ? "true" : "false") + " but class_dim " +
                  std::to_string(report.stabilizer.class_dim) + " vs formula " +
                  (report.formula_dim ? std::to_string(*report.formula_dim) : std::string("undefined")));
    } else if (report.verdict == "advisory") {
      r.status = Status::Advisory;
      r.details = "p divides m, tangent-space dimension is only advisory";
    } else {
      r.details = report.verdict + ", class_dim " + std::to_string(report.stabilizer.class_dim);
    }
    // B-orbit structure for orbits small enough to split.
    if (report.complete && report.orbit_size <= 250'000) {
      const auto orbit = chevalley::twisted_orbit(lab, rep.x, opt.orbit_budget);
      const auto sizes = chevalley::borel_orbit_sizes(lab, orbit);
      const auto b = chevalley::borel_order(lab.m(), lab.field().p());
      std::size_t total = 0;
      bool divides_b = true;
      for (auto n : sizes) {
        total += n;
        divides_b = divides_b && b % n == 0;
      }
      const bool divisible = report.orbit_size % sizes.front() == 0;
      if (total != report.orbit_size || !divides_b) fail(r, "B-orbit sizes are inconsistent");
      if (!divisible) fail(r, "orbit size is not a multiple of the smallest B-orbit");
      r.data["borel_orbits"] = Json{{"count", sizes.size()}, {"smallest", sizes.front()}, {"largest", sizes.back()}};
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<CheckResult> verify_all(const std::vector<Scope>& scopes, const VerifyOptions& options) {
  Results all;
  for (const auto& scope : scopes) {
    if (scope.kind == Scope::Kind::Lab) {
      const Lab lab(scope.m, scope.p);
      const auto label = scope.label();
      all.push_back(check_involution(lab, label, options.seed));
      all.push_back(check_identity_orbit(lab, label, options));
      for (auto& r : check_representatives(lab, label, options)) all.push_back(std::move(r));
      continue;
    }
    const auto rs = RootSystem::build(scope.type);
    all.push_back(check_rootsys(rs));
    all.push_back(check_weyl(rs, options.weyl_budget));
    for (const auto& theta : scope.thetas) {
      const TwistedSetting s(rs, theta);
      const auto rows = instantiate(s);
      all.push_back(check_conditions(s, rows));
      all.push_back(check_real_roots(s, rows));
      all.push_back(check_rank(s, rows));
      all.push_back(check_delta_r(s, rows));
      all.push_back(check_triality(s));
      all.push_back(check_witnesses(s, rows));
      all.push_back(check_twisted_involutions(s, options.weyl_budget));
    }
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.check_id < b.check_id; });
  return all;
}

int exit_code(const std::vector<CheckResult>& results) {
  bool budget = false;
  for (const auto& r : results) {
    if (r.status == Status::Fail) return 1;
    budget = budget || r.budget_exhausted;
  }
  return budget ? 3 : 0;
}

Json to_json(const CheckResult& r) {
  return Json{{"check_id", r.check_id},
              {"scope", r.scope},
              {"status", to_string(r.status)},
              {"budget_exhausted", r.budget_exhausted},
              {"details", r.details},
              {"data", r.data}};
}

Json verify_report(const std::vector<Scope>& scopes, const VerifyOptions& options,
                   const std::vector<CheckResult>& results) {
  Json labels = Json::array();
  for (const auto& s : scopes) {
    if (s.kind == Scope::Kind::Lab) {
      labels.push_back(s.label());
      continue;
    }
    std::vector<std::string> thetas;
    for (const auto& t : s.thetas) thetas.push_back(t.cycles());
    labels.push_back(Json{{"type", s.label()}, {"thetas", thetas}});
  }
  std::map<std::string, int> counts{{"pass", 0}, {"fail", 0}, {"advisory", 0}};
  Json items = Json::array();
  for (const auto& r : results) {
    ++counts[to_string(r.status)];
    items.push_back(to_json(r));
  }
  return Json{{"seed", options.seed},
              {"weyl_budget", options.weyl_budget},
              {"orbit_budget", options.orbit_budget},
              {"random_representatives", options.random_count},
              {"scopes", std::move(labels)},
              {"summary", Json{{"pass", counts["pass"]}, {"fail", counts["fail"]}, {"advisory", counts["advisory"]}}},
              {"exit_code", exit_code(results)},
              {"results", std::move(items)}};
}

std::string verify_text(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  int pass = 0, failed = 0, advisory = 0;
  for (const auto& r : results) {
    std::string tag = r.status == Status::Pass ? "PASS" : r.status == Status::Fail ? "FAIL" : "ADVISORY";
    (r.status == Status::Pass ? pass : r.status == Status::Fail ? failed : advisory)++;
    out << tag << "  " << r.check_id << "  " << r.scope << "  " << r.details << "\n";
  }
  out << pass << " passed, " << failed << " failed, " << advisory << " advisory\n";
  return out.str();
}

}  // namespace twistlab::app
