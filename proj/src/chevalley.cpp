#include "twistlab/chevalley.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "twistlab/errors.hpp"
#include "twistlab/linalg.hpp"

namespace twistlab::chevalley {

// ---------------------------------------------------------------------------
// Field and matrices

FieldPrime::FieldPrime(int p) : p_(p), magic_((std::uint64_t{1} << 32) / static_cast<std::uint64_t>(p) + 1) {
  if (p < 3 || p > 251 || p % 2 == 0) throw DomainError("need an odd prime below 256, got " + std::to_string(p));
  for (int q = 3; q * q <= p; q += 2)
    if (p % q == 0) throw DomainError(std::to_string(p) + " is not prime");
  for (int g = 2; g < p; ++g) {
    int order = 1;
    for (int x = g; x != 1; x = x * g % p) ++order;
    if (order == p - 1) {
      primitive_root_ = g;
      break;
    }
  }
}

int FieldPrime::inv(int a) const {
  if (a % p_ == 0) throw DomainError("zero has no inverse");
  int result = 1, base = a % p_, e = p_ - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return result;
}

Matrix Matrix::identity(int m) {
  Matrix a(m);
  for (int i = 0; i < m; ++i) a.set(i, i, 1);
  return a;
}

Matrix Matrix::from_rows(const std::vector<std::vector<int>>& rows, const FieldPrime& f) {
  const int m = static_cast<int>(rows.size());
  if (m < 1 || m > kMaxSize) throw DomainError("matrix size out of range");
  Matrix a(m);
  for (int r = 0; r < m; ++r) {
    if (static_cast<int>(rows[r].size()) != m) throw DomainError("matrix is not square");
    for (int c = 0; c < m; ++c) a.set(r, c, ((rows[r][c] % f.p()) + f.p()) % f.p());
  }
  return a;
}

std::vector<std::vector<int>> Matrix::rows() const {
  std::vector<std::vector<int>> out(m_, std::vector<int>(m_));
  for (int r = 0; r < m_; ++r)
    for (int c = 0; c < m_; ++c) out[r][c] = (*this)(r, c);
  return out;
}

Matrix mul(const Matrix& a, const Matrix& b, const FieldPrime& f) {
  const int m = a.size();
  Matrix c(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int s = 0;
      for (int k = 0; k < m; ++k) s += a(i, k) * b(k, j);
      c.set(i, j, f.reduce(s));
    }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) t.set(j, i, a(i, j));
  return t;
}

int det(const Matrix& a, const FieldPrime& f) {
  const int m = a.size();
  std::vector<int> w(a.size() * a.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) w[i * m + j] = a(i, j);
  int d = 1;
  for (int c = 0; c < m; ++c) {
    int piv = c;
    while (piv < m && w[piv * m + c] == 0) ++piv;
    if (piv == m) return 0;
    if (piv != c) {
      for (int j = 0; j < m; ++j) std::swap(w[piv * m + j], w[c * m + j]);
      d = f.neg(d);
    }
    d = f.mul(d, w[c * m + c]);
    const int inv = f.inv(w[c * m + c]);
    for (int r = c + 1; r < m; ++r) {
      const int k = f.mul(w[r * m + c], inv);
      if (k == 0) continue;
      for (int j = c; j < m; ++j) w[r * m + j] = f.sub(w[r * m + j], f.mul(k, w[c * m + j]));
    }
  }
  return d;
}

Matrix inverse(const Matrix& a, const FieldPrime& f) {
  const int m = a.size();
  std::vector<int> w(m * 2 * m, 0);
  auto at = [&](int r, int c) -> int& { return w[r * 2 * m + c]; };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) at(i, j) = a(i, j);
    at(i, m + i) = 1;
  }
  for (int c = 0; c < m; ++c) {
    int piv = c;
    while (piv < m && at(piv, c) == 0) ++piv;
    if (piv == m) throw DomainError("matrix is singular");
    if (piv != c)
      for (int j = 0; j < 2 * m; ++j) std::swap(at(piv, j), at(c, j));
    const int inv = f.inv(at(c, c));
    for (int j = 0; j < 2 * m; ++j) at(c, j) = f.mul(at(c, j), inv);
    for (int r = 0; r < m; ++r) {
      if (r == c || at(r, c) == 0) continue;
      const int k = at(r, c);
      for (int j = 0; j < 2 * m; ++j) at(r, j) = f.sub(at(r, j), f.mul(k, at(c, j)));
    }
  }
  Matrix out(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out.set(i, j, at(i, m + j));
  return out;
}

bool is_upper_triangular(const Matrix& a) {
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < i; ++j)
      if (a(i, j) != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Encoding

Encoder::Encoder(int m, int p) : m_(m), p_(p), digits_per_word_(0) {
  std::uint64_t pow = 1;
  while (pow <= std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(p)) {
    pow *= static_cast<std::uint64_t>(p);
    ++digits_per_word_;
  }
  if (m * m > 2 * digits_per_word_)
    throw DomainError("SL_" + std::to_string(m) + "(F_" + std::to_string(p) + ") elements do not fit the encoding");
}

Code Encoder::encode(const Matrix& a) const {
  Code c;
  const int total = m_ * m_;
  const int split = std::min(total, digits_per_word_);
  for (int k = split - 1; k >= 0; --k) c.lo = c.lo * p_ + a(k / m_, k % m_);
  for (int k = total - 1; k >= split; --k) c.hi = c.hi * p_ + a(k / m_, k % m_);
  return c;
}

Matrix Encoder::decode(const Code& c) const {
  Matrix a(m_);
  const int total = m_ * m_;
  const int split = std::min(total, digits_per_word_);
  auto lo = c.lo, hi = c.hi;
  for (int k = 0; k < split; ++k) {
    a.set(k / m_, k % m_, static_cast<int>(lo % p_));
    lo /= p_;
  }
  for (int k = split; k < total; ++k) {
    a.set(k / m_, k % m_, static_cast<int>(hi % p_));
    hi /= p_;
  }
  return a;
}

// ---------------------------------------------------------------------------
// Involution

Involution::Involution(Matrix j, const FieldPrime& f) : f_(f), j_(j), j_inv_(inverse(j, f)) {}

Matrix Involution::apply(const Matrix& g) const {
  return mul(mul(j_, transpose(inverse(g, f_)), f_), j_inv_, f_);
}

Matrix Involution::apply_inverse(const Matrix& g) const { return mul(mul(j_, transpose(g), f_), j_inv_, f_); }

Matrix Involution::differential(const Matrix& x) const {
  const auto y = mul(mul(j_, transpose(x), f_), j_inv_, f_);
  Matrix out(y.size());
  for (int r = 0; r < y.size(); ++r)
    for (int c = 0; c < y.size(); ++c) out.set(r, c, f_.neg(y(r, c)));
  return out;
}

Matrix root_element(int m, int i, int t, const FieldPrime& f) {
  auto a = Matrix::identity(m);
  a.set(i - 1, i, ((t % f.p()) + f.p()) % f.p());
  return a;
}

Matrix negative_root_element(int m, int i, int t, const FieldPrime& f) {
  auto a = Matrix::identity(m);
  a.set(i, i - 1, ((t % f.p()) + f.p()) % f.p());
  return a;
}

Matrix torus_element(int m, int i, int c, const FieldPrime& f) {
  auto a = Matrix::identity(m);
  a.set(i - 1, i - 1, c % f.p());
  a.set(i, i, f.inv(c));
  return a;
}

Matrix diagonal(const std::vector<int>& entries, const FieldPrime& f) {
  Matrix a(static_cast<int>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i)
    a.set(static_cast<int>(i), static_cast<int>(i), ((entries[i] % f.p()) + f.p()) % f.p());
  return a;
}

Involution make_involution(int m, const FieldPrime& f) {
  if (m < 2 || m > kMaxSize || m % 2 != 0) throw DomainError("matrix size must be even and at most 8");
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    Matrix j(m);
    for (int k = 0; k < m; ++k) j.set(k, m - 1 - k, (mask >> k) & 1u ? f.p() - 1 : 1);
    Involution theta(j, f);
    bool ok = true;
    for (int i = 1; ok && i < m; ++i)
      for (int t = 1; ok && t < f.p(); ++t) {
        const auto img = theta.apply(root_element(m, i, t, f));
        ok = img == root_element(m, m - i, t, f) && is_upper_triangular(img);
      }
    for (int i = 1; ok && i < m; ++i) {
      for (const auto& g : {root_element(m, i, 1, f), negative_root_element(m, i, 1, f),
                            torus_element(m, i, f.primitive_root(), f)})
        ok = ok && theta.apply(theta.apply(g)) == g;
      ok = ok && is_upper_triangular(theta.apply(torus_element(m, i, f.primitive_root(), f)));
    }
    if (ok) return theta;
  }
  throw ConstructionError("no antidiagonal sign matrix realizes the pinned involution");
}

// ---------------------------------------------------------------------------
// Lab

namespace {

TwistedSetting a_type_setting(int m) {
  auto rs = rootsys::RootSystem::build({'A', m - 1});
  return TwistedSetting(rs, twist::neg_w0(rs));
}

}  // namespace

Lab::Lab(int m, int p)
    : m_(m),
      field_(p),
      theta_(make_involution(m, field_)),
      setting_(a_type_setting(m)),
      encoder_(m, p),
      separable_(m % p != 0) {
  // x_a(1)^t = x_a(t), so t = 1 already generates each root subgroup.
  for (int i = 1; i < m; ++i) {
    generators_.push_back(root_element(m, i, 1, field_));
    generators_.push_back(negative_root_element(m, i, 1, field_));
    borel_generators_.push_back(root_element(m, i, 1, field_));
    generators_.push_back(torus_element(m, i, field_.primitive_root(), field_));
    borel_generators_.push_back(torus_element(m, i, field_.primitive_root(), field_));
  }
}

Matrix Lab::lift(const WeylElement& w) const {
  auto g = Matrix::identity(m_);
  for (int i : weyl::reduced_word(w)) {
    const auto x = root_element(m_, i, 1, field_);
    const auto s = mul(mul(x, negative_root_element(m_, i, -1, field_), field_), x, field_);
    g = mul(g, s, field_);
  }
  return g;
}

Matrix Lab::random_element(std::mt19937_64& rng) const {
  for (;;) {
    Matrix a(m_);
    for (int r = 0; r < m_; ++r)
      for (int c = 0; c < m_; ++c) a.set(r, c, static_cast<int>(rng() % static_cast<std::uint64_t>(field_.p())));
    const int d = det(a, field_);
    if (d == 0) continue;
    const int k = field_.inv(d);
    for (int c = 0; c < m_; ++c) a.set(0, c, field_.mul(a(0, c), k));
    return a;
  }
}

// ---------------------------------------------------------------------------
// Bruhat decomposition

std::vector<int> bruhat_cell(const Matrix& g, const FieldPrime& f) {
  const int m = g.size();
  std::vector<int> a(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a[i * m + j] = g(i, j);
  std::vector<int> w(m, 0);
  for (int j = 0; j < m; ++j) {
    int piv = m - 1;
    while (piv >= 0 && a[piv * m + j] == 0) --piv;
    if (piv < 0) throw DomainError("matrix is singular");
    w[j] = piv + 1;
    const int inv = f.inv(a[piv * m + j]);
    // Rows above the pivot: add multiples of the pivot row (left multiplication by B).
    for (int r = 0; r < piv; ++r) {
      const int k = f.mul(a[r * m + j], inv);
      if (k == 0) continue;
      for (int c = j; c < m; ++c) a[r * m + c] = f.sub(a[r * m + c], f.mul(k, a[piv * m + c]));
    }
    // Columns to the right: add multiples of column j (right multiplication by B).
    for (int c = j + 1; c < m; ++c) {
      const int k = f.mul(a[piv * m + c], inv);
      if (k == 0) continue;
      for (int r = 0; r < m; ++r) a[r * m + c] = f.sub(a[r * m + c], f.mul(k, a[r * m + j]));
    }
  }
  return w;
}

std::vector<int> bruhat_cell_by_ranks(const Matrix& g, const FieldPrime& f) {
  const int m = g.size();
  if (det(g, f) == 0) throw DomainError("matrix is singular");
  // r[i][j]: rank of rows i..m, columns 1..j (1-based), zero outside.
  std::vector<std::vector<int>> r(m + 2, std::vector<int>(m + 1, 0));
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      IntMatrix sub(m - i + 1, j);
      for (int a = i; a <= m; ++a)
        for (int b = 1; b <= j; ++b) sub(a - i, b - 1) = g(a - 1, b - 1);
      r[i][j] = rank_mod_p(sub, f.p());
    }
  std::vector<int> w(m, 0);
  for (int j = 1; j <= m; ++j)
    for (int i = 1; i <= m; ++i)
      if (r[i][j] - r[i + 1][j] - r[i][j - 1] + r[i + 1][j - 1] == 1) w[j - 1] = i;
  return w;
}

WeylElement permutation_to_weyl(const rootsys::RootSystemPtr& rs, const std::vector<int>& perm) {
  const int n = rs->rank();
  if (static_cast<int>(perm.size()) != n + 1 || rs->type().family != 'A')
    throw DomainError("permutation does not match the type A root system");
  // alpha_i = e_i - e_{i+1}; e_a - e_b = +-(alpha_min + ... + alpha_{max-1}).
  auto root_of = [&](int a, int b) {
    rootsys::Root r{std::vector<int>(n, 0)};
    const int lo = std::min(a, b), hi = std::max(a, b), sign = a < b ? 1 : -1;
    for (int k = lo; k < hi; ++k) r.coords[k - 1] = sign;
    return rs->index(r);
  };
  std::vector<rootsys::RootIndex> perm_roots(rs->num_roots());
  for (std::size_t k = 0; k < rs->num_roots(); ++k) {
    const auto& c = rs->root(static_cast<rootsys::RootIndex>(k)).coords;
    int lo = 0, hi = 0;
    const bool positive = rs->is_positive(static_cast<rootsys::RootIndex>(k));
    for (int i = 1; i <= n; ++i)
      if (c[i - 1] != 0) {
        if (!lo) lo = i;
        hi = i + 1;
      }
    const int a = positive ? lo : hi, b = positive ? hi : lo;
    perm_roots[k] = root_of(perm[a - 1], perm[b - 1]);
  }
  return WeylElement(rs, std::move(perm_roots));
}

// ---------------------------------------------------------------------------
// Orbits

namespace {

std::uint64_t mix(const Code& c) {
  std::uint64_t z = c.lo ^ (c.hi * 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Open-addressing set that appends new codes to a vector. The zero code
/// (the zero matrix) never occurs in SL_m, so it marks empty slots.
class CodeIndex {
 public:
  explicit CodeIndex(std::vector<Code>& store) : store_(store), slots_(1 << 12) {}

  bool insert(const Code& c) {
    if (2 * (store_.size() + 1) > slots_.size()) grow();
    auto& slot = probe(c);
    if (slot != Code{}) return false;
    slot = c;
    store_.push_back(c);
    return true;
  }

 private:
  Code& probe(const Code& c) {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t h = mix(c) & mask;; h = (h + 1) & mask) {
      auto& s = slots_[h];
      if (s == Code{} || s == c) return s;
    }
  }

  void grow() {
    std::vector<Code> old(slots_.size() * 2);
    slots_.swap(old);
    for (const auto& c : old)
      if (c != Code{}) probe(c) = c;
  }

  std::vector<Code>& store_;
  std::vector<Code> slots_;
};

}  // namespace

namespace {

/// Nonzero entries of a generator, so that g x h costs O(m * nnz) instead of O(m^3).
struct SparseMatrix {
  struct Entry {
    int r, c, v;
  };
  std::vector<Entry> entries;

  explicit SparseMatrix(const Matrix& a) {
    for (int r = 0; r < a.size(); ++r)
      for (int c = 0; c < a.size(); ++c)
        if (a(r, c)) entries.push_back({r, c, a(r, c)});
  }
};

Matrix sandwich(const SparseMatrix& g, const Matrix& x, const SparseMatrix& h, const FieldPrime& f) {
  const int m = x.size();
  int t[kMaxSize][kMaxSize] = {};
  for (const auto& e : g.entries)
    for (int j = 0; j < m; ++j) t[e.r][j] += e.v * x(e.c, j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t[i][j] = f.reduce(t[i][j]);
  int u[kMaxSize][kMaxSize] = {};
  for (const auto& e : h.entries)
    for (int i = 0; i < m; ++i) u[i][e.c] += t[i][e.r] * e.v;
  Matrix out(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out.set(i, j, f.reduce(u[i][j]));
  return out;
}

}  // namespace

Orbit twisted_orbit(const Lab& lab, const Matrix& x, std::size_t budget) {
  const auto& f = lab.field();
  if (x.size() != lab.m() || det(x, f) != 1) throw DomainError("representative is not in SL_m(F_p)");
  std::vector<SparseMatrix> left, right;
  for (const auto& g : lab.generators()) {
    left.emplace_back(g);
    right.emplace_back(lab.theta().apply_inverse(g));
  }

  Orbit out;
  CodeIndex index(out.elements);
  index.insert(lab.encoder().encode(x));
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    const auto cur = lab.encoder().decode(out.elements[head]);
    for (std::size_t k = 0; k < left.size(); ++k) {
      const auto y = sandwich(left[k], cur, right[k], f);
      if (index.insert(lab.encoder().encode(y)) && out.elements.size() > budget)
        throw BudgetExceeded("twisted orbit exceeds budget of " + std::to_string(budget) + " elements",
                             out.elements.size());
    }
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

CellSummary cells_hit(const Lab& lab, const Orbit& orbit) {
  std::map<std::vector<int>, std::size_t> counts;
  for (const auto& c : orbit.elements) ++counts[bruhat_cell(lab.encoder().decode(c), lab.field())];
  std::vector<std::pair<weyl::Word, std::size_t>> keyed;
  std::vector<WeylElement> elems;
  std::vector<std::size_t> n;
  for (const auto& [perm, count] : counts) {
    elems.push_back(permutation_to_weyl(lab.setting().rs(), perm));
    n.push_back(count);
    keyed.emplace_back(weyl::reduced_word(elems.back()), keyed.size());
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return weyl::shortlex_less(a.first, b.first); });
  CellSummary out;
  for (const auto& [word, k] : keyed) {
    out.cells.push_back(elems[k]);
    out.counts.push_back(n[k]);
  }
  return out;
}

InvolutiveVerdict involutive_check(const TwistedSetting& s, const CellSummary& cells) {
  InvolutiveVerdict v;
  for (const auto& w : cells.cells)
    if (!twist::is_twisted_involution(s, w)) v.non_involution_cells.push_back(w);
  v.involutive = v.non_involution_cells.empty();
  if (cells.cells.empty()) return v;
  // Cells are shortlex sorted, so the last one is as long as any.
  const auto& top = cells.cells.back();
  const bool maximum = std::all_of(cells.cells.begin(), cells.cells.end(),
                                   [&](const WeylElement& w) { return weyl::bruhat_leq(w, top); });
  if (maximum) v.w_max = top;
  return v;
}

StabilizerDim stabilizer_dim(const Lab& lab, const Matrix& x) {
  const int m = lab.m();
  const auto& f = lab.field();
  IntMatrix system(m * m + 1, m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Matrix e(m);
      e.set(a, b, 1);
      const auto lhs = mul(e, x, f);
      const auto rhs = mul(x, lab.theta().differential(e), f);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) system(i * m + j, a * m + b) = f.sub(lhs(i, j), rhs(i, j));
      if (a == b) system(m * m, a * m + b) = 1;
    }
  StabilizerDim out;
  out.stabilizer_dim = m * m - rank_mod_p(system, f.p());
  out.class_dim = m * m - 1 - out.stabilizer_dim;
  out.advisory = !lab.separable();
  return out;
}

std::vector<std::size_t> borel_orbit_sizes(const Lab& lab, const Orbit& orbit) {
  const auto& f = lab.field();
  const auto n = orbit.elements.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  const auto& gens = lab.borel_generators();
  std::vector<Matrix> theta_inv;
  for (const auto& g : gens) theta_inv.push_back(lab.theta().apply_inverse(g));
  for (std::size_t k = 0; k < n; ++k) {
    const auto x = lab.encoder().decode(orbit.elements[k]);
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const auto y = lab.encoder().encode(mul(mul(gens[g], x, f), theta_inv[g], f));
      auto it = std::lower_bound(orbit.elements.begin(), orbit.elements.end(), y);
      if (it == orbit.elements.end() || *it != y) throw ConstructionError("orbit is not closed under B");
      const auto a = find(k), b = find(static_cast<std::size_t>(it - orbit.elements.begin()));
      if (a != b) parent[a] = b;
    }
  }
  std::map<std::size_t, std::size_t> sizes;
  for (std::size_t k = 0; k < n; ++k) ++sizes[find(k)];
  std::vector<std::size_t> out;
  for (const auto& [root, size] : sizes) out.push_back(size);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t borel_order(int m, int p) {
  std::uint64_t order = 1;
  for (int k = 0; k < m - 1; ++k) order *= static_cast<std::uint64_t>(p - 1);
  for (int k = 0; k < m * (m - 1) / 2; ++k) order *= static_cast<std::uint64_t>(p);
  return order;
}

}  // namespace twistlab::chevalley
