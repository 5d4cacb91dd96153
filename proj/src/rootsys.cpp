#include "twistlab/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

#include "twistlab/errors.hpp"

namespace twistlab::rootsys {

// ---------------------------------------------------------------------------
// CartanType

CartanType CartanType::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.size() < 2) throw DomainError("bad Cartan type '" + std::string(text) + "'");
  CartanType ct;
  ct.family = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  auto digits = text.substr(1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), ct.rank);
  if (ec != std::errc() || ptr != digits.data() + digits.size())
    throw DomainError("bad Cartan type '" + std::string(text) + "'");
  if (!ct.admissible()) throw DomainError("inadmissible Cartan type '" + std::string(text) + "'");
  return ct;
}

bool CartanType::admissible() const {
  if (rank < 1 || rank > 64) return false;
  switch (family) {
    case 'A': return true;
    case 'B':
    case 'C': return rank >= 2;
    case 'D': return rank >= 3;
    case 'E': return rank >= 6 && rank <= 8;
    case 'F': return rank == 4;
    case 'G': return rank == 2;
    default: return false;
  }
}

std::string CartanType::name() const { return std::string(1, family) + std::to_string(rank); }

// ---------------------------------------------------------------------------
// Root

int Root::height() const { return std::accumulate(coords.begin(), coords.end(), 0); }

bool Root::is_positive() const {
  return std::any_of(coords.begin(), coords.end(), [](int c) { return c > 0; });
}

Root Root::operator-() const {
  Root r = *this;
  for (auto& c : r.coords) c = -c;
  return r;
}

Root Root::operator+(const Root& other) const {
  Root r = *this;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += other.coords[i];
  return r;
}

std::string to_string(const Root& r) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < r.coords.size(); ++i) out << (i ? "," : "") << r.coords[i];
  out << ']';
  return out.str();
}

// ---------------------------------------------------------------------------
// Construction

namespace {

IntMatrix gram_for(const CartanType& ct) {
  const int n = ct.rank;
  IntMatrix g(n, n);
  auto edge = [&](int i, int j, int v) {
    g(i - 1, j - 1) = v;
    g(j - 1, i - 1) = v;
  };
  for (int i = 0; i < n; ++i) g(i, i) = 2;
  switch (ct.family) {
    case 'A':
      for (int i = 1; i < n; ++i) edge(i, i + 1, -1);
      break;
    case 'B':
      for (int i = 0; i < n - 1; ++i) g(i, i) = 4;
      for (int i = 1; i < n; ++i) edge(i, i + 1, -2);
      break;
    case 'C':
      g(n - 1, n - 1) = 4;
      for (int i = 1; i < n - 1; ++i) edge(i, i + 1, -1);
      edge(n - 1, n, -2);
      break;
    case 'D':
      for (int i = 1; i < n - 1; ++i) edge(i, i + 1, -1);
      edge(n - 2, n, -1);
      break;
    case 'E':
      edge(1, 3, -1);
      edge(2, 4, -1);
      for (int i = 3; i < n; ++i) edge(i, i + 1, -1);
      break;
    case 'F':
      g(0, 0) = g(1, 1) = 4;
      edge(1, 2, -2);
      edge(2, 3, -2);
      edge(3, 4, -1);
      break;
    case 'G':
      g(1, 1) = 6;
      edge(1, 2, -3);
      break;
    default:
      throw DomainError("unknown family");
  }
  return g;
}

IntMatrix cartan_from_gram(const IntMatrix& g) {
  IntMatrix a(g.rows, g.cols);
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j) a(i, j) = 2 * g(i, j) / g(i, i);
  return a;
}

bool root_order(const Root& a, const Root& b) {
  const int ha = a.height(), hb = b.height();
  if (ha != hb) return ha < hb;
  return a.coords > b.coords;
}

}  // namespace

RootSystemPtr RootSystem::build(CartanType ct) {
  if (!ct.admissible()) throw DomainError("inadmissible Cartan type " + ct.name());
  std::shared_ptr<RootSystem> rs(new RootSystem());
  const int n = ct.rank;
  rs->type_ = ct;
  rs->gram_ = gram_for(ct);
  rs->cartan_ = cartan_from_gram(rs->gram_);

  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> queue;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    found.insert(e);
    queue.push_back(e);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto cur = queue[head];
    for (int i = 0; i < n; ++i) {
      // <cur, alpha_i^vee> = sum_j c_j A_ij
      int pair = 0;
      for (int j = 0; j < n; ++j) pair += cur[j] * static_cast<int>(rs->cartan_(i, j));
      if (pair == 0) continue;
      auto next = cur;
      next[i] -= pair;
      if (found.insert(next).second) queue.push_back(std::move(next));
    }
  }

  std::vector<Root> positive;
  for (const auto& c : found) {
    Root r{c};
    if (r.is_positive()) positive.push_back(std::move(r));
  }
  std::sort(positive.begin(), positive.end(), root_order);
  rs->num_positive_ = positive.size();
  rs->roots_ = positive;
  for (const auto& r : positive) rs->roots_.push_back(-r);
  if (rs->roots_.size() != found.size()) throw ConstructionError("root set is not symmetric");
  if (rs->roots_.size() > 65535) throw ConstructionError("root system too large");

  for (std::size_t i = 0; i < rs->roots_.size(); ++i)
    rs->lookup_.emplace(rs->roots_[i].coords, static_cast<RootIndex>(i));

  rs->reflections_.resize(n);
  for (int i = 0; i < n; ++i) {
    auto& perm = rs->reflections_[i];
    perm.resize(rs->roots_.size());
    for (std::size_t k = 0; k < rs->roots_.size(); ++k) {
      auto c = rs->roots_[k].coords;
      int pair = 0;
      for (int j = 0; j < n; ++j) pair += c[j] * static_cast<int>(rs->cartan_(i, j));
      c[i] -= pair;
      perm[k] = rs->lookup_.at(c);
    }
  }
  return rs;
}

std::optional<RootIndex> RootSystem::find(const Root& r) const {
  auto it = lookup_.find(r.coords);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

RootIndex RootSystem::index(const Root& r) const {
  if (auto i = find(r)) return *i;
  throw DomainError(to_string(r) + " is not a root of " + type_.name());
}

int RootSystem::inner(const std::vector<int>& a, const std::vector<int>& b) const {
  if (static_cast<int>(a.size()) != rank() || static_cast<int>(b.size()) != rank())
    throw DomainError("vector length does not match rank");
  int s = 0;
  for (int i = 0; i < rank(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank(); ++j) s += a[i] * static_cast<int>(gram_(i, j)) * b[j];
  }
  return s;
}

int RootSystem::pairing(const Root& g, const Root& b) const { return 2 * inner(g, b) / inner(b, b); }

Root reflect(const RootSystem& rs, const Root& b, const Root& g) {
  rs.index(b);
  rs.index(g);
  const int k = rs.pairing(g, b);
  Root out = g;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] -= k * b.coords[i];
  return out;
}

const Root& highest_root(const RootSystem& rs) { return rs.root(static_cast<RootIndex>(rs.num_positive() - 1)); }

std::vector<int> bad_primes(const RootSystem& rs) {
  std::set<int> primes;
  for (int c : highest_root(rs).coords) {
    for (int q = 2; c > 1; ++q)
      while (c % q == 0) {
        primes.insert(q);
        c /= q;
      }
  }
  return {primes.begin(), primes.end()};
}

bool is_good_prime(const RootSystem& rs, int p) {
  const auto bad = bad_primes(rs);
  return !std::binary_search(bad.begin(), bad.end(), p);
}

// ---------------------------------------------------------------------------
// DiagramAut

DiagramAut::DiagramAut(std::vector<int> images) : images_(std::move(images)) {
  const int n = rank();
  std::vector<bool> seen(n, false);
  for (int v : images_) {
    if (v < 1 || v > n || seen[v - 1]) throw DomainError("diagram automorphism is not a permutation");
    seen[v - 1] = true;
  }
  std::vector<bool> visited(n, false);
  for (int i = 1; i <= n; ++i) {
    if (visited[i - 1]) continue;
    int len = 0;
    for (int j = i; !visited[j - 1]; j = images_[j - 1]) {
      visited[j - 1] = true;
      ++len;
    }
    order_ = std::lcm(order_, len);
  }
}

DiagramAut DiagramAut::identity(int rank) {
  std::vector<int> v(rank);
  std::iota(v.begin(), v.end(), 1);
  return DiagramAut(std::move(v));
}

DiagramAut DiagramAut::parse_cycles(std::string_view text, int rank) {
  std::vector<int> images(rank);
  std::iota(images.begin(), images.end(), 1);
  std::vector<bool> used(rank, false);
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
      ++pos;
  };
  auto bad = [&](const std::string& why) {
    return DomainError("bad cycle notation '" + std::string(text) + "': " + why);
  };
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') throw bad("expected '('");
    ++pos;
    std::vector<int> cycle;
    for (;;) {
      skip_space();
      if (pos >= text.size()) throw bad("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      int v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
      if (ec != std::errc()) throw bad("expected an index");
      pos = static_cast<std::size_t>(ptr - text.data());
      if (v < 1 || v > rank) throw bad("index out of range");
      if (used[v - 1]) throw bad("index repeated");
      used[v - 1] = true;
      cycle.push_back(v);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) images[cycle[k] - 1] = cycle[(k + 1) % cycle.size()];
    skip_space();
  }
  return DiagramAut(std::move(images));
}

DiagramAut DiagramAut::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 1; i <= rank(); ++i) inv[images_[i - 1] - 1] = i;
  return DiagramAut(std::move(inv));
}

std::vector<int> DiagramAut::apply(const std::vector<int>& coords) const {
  if (coords.size() != images_.size()) throw DomainError("vector length does not match rank");
  std::vector<int> out(coords.size());
  for (std::size_t j = 0; j < coords.size(); ++j) out[images_[j] - 1] = coords[j];
  return out;
}

bool DiagramAut::preserves(const RootSystem& rs) const {
  if (rank() != rs.rank()) return false;
  const auto& a = rs.cartan_matrix();
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j)
      if (a(images_[i] - 1, images_[j] - 1) != a(i, j)) return false;
  return true;
}

bool DiagramAut::stabilizes(const IndexSet& s) const {
  return std::all_of(s.begin(), s.end(), [&](int i) {
    return std::find(s.begin(), s.end(), (*this)(i)) != s.end();
  });
}

std::string DiagramAut::cycles() const {
  std::string out;
  std::vector<bool> visited(images_.size(), false);
  for (int i = 1; i <= rank(); ++i) {
    if (visited[i - 1] || images_[i - 1] == i) continue;
    out += '(';
    for (int j = i; !visited[j - 1]; j = images_[j - 1]) {
      if (out.back() != '(') out += ' ';
      out += std::to_string(j);
      visited[j - 1] = true;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::vector<DiagramAut> diagram_auts(const RootSystem& rs) {
  std::vector<int> perm(rs.rank());
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<DiagramAut> out;
  do {
    DiagramAut a(perm);
    if (a.preserves(rs)) out.push_back(std::move(a));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Subsystems

namespace {

bool match_from(const IntMatrix& a, const IntMatrix& t, std::vector<int>& sigma, std::vector<bool>& used,
                int k) {
  const int n = a.rows;
  if (k == n) return true;
  for (int c = 0; c < n; ++c) {
    if (used[c]) continue;
    bool ok = a(c, c) == t(k, k);
    for (int j = 0; ok && j < k; ++j) ok = a(c, sigma[j]) == t(k, j) && a(sigma[j], c) == t(j, k);
    if (!ok) continue;
    sigma[k] = c;
    used[c] = true;
    if (match_from(a, t, sigma, used, k + 1)) return true;
    used[c] = false;
  }
  return false;
}

bool permutation_equivalent(const IntMatrix& a, const IntMatrix& t) {
  if (a.rows != t.rows) return false;
  std::vector<int> sigma(a.rows, -1);
  std::vector<bool> used(a.rows, false);
  return match_from(a, t, sigma, used, 0);
}

}  // namespace

CartanType classify_cartan(const IntMatrix& cartan) {
  const int k = cartan.rows;
  std::vector<CartanType> candidates{{'A', k}, {'B', k}, {'C', k}, {'D', k}, {'E', k}, {'F', k}, {'G', k}};
  for (const auto& ct : candidates) {
    // B2 and C2 coincide, as do A3 and D3; report the first family.
    if (!ct.admissible() || (ct.family == 'C' && k < 3) || (ct.family == 'D' && k < 4)) continue;
    if (permutation_equivalent(cartan, cartan_from_gram(gram_for(ct)))) return ct;
  }
  throw DomainError("Cartan matrix is not of finite type or not indecomposable");
}

Subsystem subsystem(const RootSystem& rs, std::span<const Root> generators) {
  std::set<RootIndex> members;
  bool all_positive = true;
  for (const auto& g : generators) {
    const auto i = rs.index(g);
    members.insert(i);
    all_positive = all_positive && rs.is_positive(i);
  }
  if (!all_positive)
    for (auto i : members)
      if (!members.count(rs.negative(i))) throw DomainError("generator set is neither symmetric nor positive");
  for (auto i : std::vector<RootIndex>(members.begin(), members.end())) members.insert(rs.negative(i));

  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<RootIndex> cur(members.begin(), members.end());
    for (std::size_t x = 0; x < cur.size(); ++x)
      for (std::size_t y = x + 1; y < cur.size(); ++y) {
        auto s = rs.find(rs.root(cur[x]) + rs.root(cur[y]));
        if (s && members.insert(*s).second) grew = true;
      }
  }

  Subsystem out;
  std::vector<RootIndex> pos;
  for (auto i : members) {
    out.roots.push_back(rs.root(i));
    if (rs.is_positive(i)) pos.push_back(i);
  }
  std::set<RootIndex> decomposable;
  for (std::size_t x = 0; x < pos.size(); ++x)
    for (std::size_t y = x; y < pos.size(); ++y)
      if (auto s = rs.find(rs.root(pos[x]) + rs.root(pos[y])); s && members.count(*s)) decomposable.insert(*s);
  std::vector<RootIndex> simple;
  for (auto i : pos)
    if (!decomposable.count(i)) simple.push_back(i);
  for (auto i : simple) out.simple_system.push_back(rs.root(i));

  const auto n = simple.size();
  std::vector<int> component(n, -1);
  int ncomp = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (component[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    component[s] = ncomp;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v)
        if (component[v] < 0 && rs.inner(rs.root(simple[u]), rs.root(simple[v])) != 0) {
          component[v] = ncomp;
          stack.push_back(v);
        }
    }
    ++ncomp;
  }
  for (int c = 0; c < ncomp; ++c) {
    std::vector<std::size_t> idx;
    for (std::size_t s = 0; s < n; ++s)
      if (component[s] == c) idx.push_back(s);
    IntMatrix a(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) {
        const auto& gi = rs.root(simple[idx[i]]);
        const auto& gj = rs.root(simple[idx[j]]);
        a(static_cast<int>(i), static_cast<int>(j)) = 2 * rs.inner(gi, gj) / rs.inner(gi, gi);
      }
    out.components.push_back(classify_cartan(a));
  }
  std::sort(out.components.begin(), out.components.end());
  return out;
}

std::string type_name(const std::vector<CartanType>& components) {
  std::string out;
  for (const auto& c : components) out += (out.empty() ? "" : "x") + c.name();
  return out;
}

std::vector<Root> perp(const RootSystem& rs, const IndexSet& pi) {
  for (int i : pi)
    if (i < 1 || i > rs.rank()) throw DomainError("simple index out of range");
  std::vector<Root> out;
  for (const auto& r : rs.roots()) {
    const bool orthogonal = std::all_of(pi.begin(), pi.end(), [&](int i) {
      return rs.inner(r, rs.root(rs.simple(i))) == 0;
    });
    if (orthogonal) out.push_back(r);
  }
  return out;
}

}  // namespace twistlab::rootsys
