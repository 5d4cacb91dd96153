#include "twistlab/weyl.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "twistlab/errors.hpp"

namespace twistlab::weyl {

namespace {

void require_same(const WeylElement& a, const WeylElement& b) {
  if (a.root_system_ptr() != b.root_system_ptr() && a.root_system().type() != b.root_system().type())
    throw DomainError("Weyl elements belong to different root systems");
}

std::vector<RootIndex> inverse_perm(const std::vector<RootIndex>& p) {
  std::vector<RootIndex> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<RootIndex>(i);
  return inv;
}

WeylElement left_simple(const WeylElement& w, int i) {
  const auto& s = w.root_system().simple_reflection(i);
  std::vector<RootIndex> out(w.permutation().size());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = s[w.permutation()[r]];
  return WeylElement(w.root_system_ptr(), std::move(out));
}

}  // namespace

WeylElement::WeylElement(RootSystemPtr rs, std::vector<RootIndex> perm) : rs_(std::move(rs)), perm_(std::move(perm)) {
  if (perm_.size() != rs_->num_roots()) throw DomainError("permutation size does not match root system");
}

WeylElement WeylElement::identity(RootSystemPtr rs) {
  std::vector<RootIndex> perm(rs->num_roots());
  std::iota(perm.begin(), perm.end(), RootIndex{0});
  return WeylElement(std::move(rs), std::move(perm));
}

Root WeylElement::apply(const Root& r) const { return rs_->root(perm_[rs_->index(r)]); }

std::vector<RootIndex> WeylElement::key() const {
  return std::vector<RootIndex>(perm_.begin(), perm_.begin() + rs_->rank());
}

IntMatrix WeylElement::matrix() const {
  const int n = rs_->rank();
  IntMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    const auto& img = rs_->root(perm_[j]);
    for (int i = 0; i < n; ++i) m(i, j) = img.coords[i];
  }
  return m;
}

bool WeylElement::is_identity() const {
  for (std::size_t i = 0; i < static_cast<std::size_t>(rs_->rank()); ++i)
    if (perm_[i] != i) return false;
  return true;
}

std::size_t WeylElementHash::operator()(const WeylElement& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int i = 0; i < w.root_system().rank(); ++i) h = (h ^ w.permutation()[i]) * 1099511628211ull;
  return h;
}

WeylElement simple_reflection(const RootSystemPtr& rs, int i) {
  if (i < 1 || i > rs->rank()) throw DomainError("simple index out of range");
  return WeylElement(rs, rs->simple_reflection(i));
}

WeylElement reflection(const RootSystemPtr& rs, const Root& root) {
  rs->index(root);
  std::vector<RootIndex> perm(rs->num_roots());
  for (std::size_t k = 0; k < perm.size(); ++k)
    perm[k] = rs->index(rootsys::reflect(*rs, root, rs->root(static_cast<RootIndex>(k))));
  return WeylElement(rs, std::move(perm));
}

WeylElement from_word(const RootSystemPtr& rs, const Word& word) {
  auto w = WeylElement::identity(rs);
  for (int i : word) {
    if (i < 1 || i > rs->rank()) throw DomainError("letter out of range");
    // w * s_i: apply s_i first.
    const auto& s = rs->simple_reflection(i);
    std::vector<RootIndex> out(s.size());
    for (std::size_t r = 0; r < s.size(); ++r) out[r] = w.permutation()[s[r]];
    w = WeylElement(rs, std::move(out));
  }
  return w;
}

WeylElement mult(const WeylElement& u, const WeylElement& w) {
  require_same(u, w);
  std::vector<RootIndex> out(w.permutation().size());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = u.permutation()[w.permutation()[r]];
  return WeylElement(u.root_system_ptr(), std::move(out));
}

WeylElement inv(const WeylElement& w) { return WeylElement(w.root_system_ptr(), inverse_perm(w.permutation())); }

Root apply(const WeylElement& w, const Root& r) { return w.apply(r); }

int length(const WeylElement& w) {
  const auto n = w.root_system().num_positive();
  int l = 0;
  for (std::size_t r = 0; r < n; ++r)
    if (w.permutation()[r] >= n) ++l;
  return l;
}

int first_left_descent(const WeylElement& w) {
  // s_i is a left descent iff w^{-1}(alpha_i) < 0.
  const auto& rs = w.root_system();
  const auto& p = w.permutation();
  std::vector<int> pre(rs.rank(), -1);
  for (std::size_t r = 0; r < p.size(); ++r)
    if (p[r] < static_cast<std::size_t>(rs.rank())) pre[p[r]] = static_cast<int>(r);
  for (int i = 1; i <= rs.rank(); ++i)
    if (!rs.is_positive(static_cast<RootIndex>(pre[i - 1]))) return i;
  return 0;
}

Word reduced_word(const WeylElement& w) {
  Word out;
  auto cur = w;
  while (int i = first_left_descent(cur)) {
    out.push_back(i);
    cur = left_simple(cur, i);
  }
  return out;
}

WeylElement longest_element(const RootSystemPtr& rs, const IndexSet& pi) {
  for (int i : pi)
    if (i < 1 || i > rs->rank()) throw DomainError("simple index out of range");
  auto w = WeylElement::identity(rs);
  for (bool grew = true; grew;) {
    grew = false;
    for (int i : pi)
      if (rs->is_positive(w.image_of_simple(i))) {
        w = mult(w, simple_reflection(rs, i));
        grew = true;
      }
  }
  return w;
}

bool bruhat_leq(const WeylElement& u0, const WeylElement& w0) {
  require_same(u0, w0);
  auto u = u0;
  auto w = w0;
  for (;;) {
    if (u.is_identity()) return true;
    const int lu = length(u);
    if (lu > length(w)) return false;
    const int s = first_left_descent(w);
    w = left_simple(w, s);
    auto su = left_simple(u, s);
    if (length(su) < lu) u = std::move(su);
  }
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Enumeration enumerate(const RootSystemPtr& rs, std::size_t budget) {
  Enumeration out;
  std::unordered_map<WeylElement, std::size_t, WeylElementHash> index;
  out.elements.push_back(WeylElement::identity(rs));
  out.words.emplace_back();
  index.emplace(out.elements.front(), 0);

  std::size_t layer_begin = 0;
  std::size_t layer_end = 1;
  while (layer_begin < layer_end) {
    std::vector<std::pair<Word, WeylElement>> next;
    for (std::size_t k = layer_begin; k < layer_end; ++k) {
      const auto inv_x = inverse_perm(out.elements[k].permutation());
      for (int i = 1; i <= rs->rank(); ++i) {
        // s_i x is longer iff x^{-1}(alpha_i) > 0.
        if (!rs->is_positive(inv_x[rs->simple(i)])) continue;
        auto y = left_simple(out.elements[k], i);
        if (index.count(y)) continue;
        const int d = first_left_descent(y);
        const auto parent = index.at(left_simple(y, d));
        Word word{d};
        word.insert(word.end(), out.words[parent].begin(), out.words[parent].end());
        index.emplace(y, std::numeric_limits<std::size_t>::max());
        next.emplace_back(std::move(word), std::move(y));
        if (index.size() > budget)
          throw BudgetExceeded("Weyl group of " + rs->type().name() + " exceeds budget of " +
                                   std::to_string(budget) + " elements",
                               index.size());
      }
    }
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    layer_begin = layer_end;
    for (auto& [word, y] : next) {
      index[y] = out.elements.size();
      out.elements.push_back(std::move(y));
      out.words.push_back(std::move(word));
    }
    layer_end = out.elements.size();
  }
  return out;
}

std::size_t order_from_degrees(const rootsys::CartanType& ct) {
  std::vector<std::size_t> degrees;
  const auto n = static_cast<std::size_t>(ct.rank);
  switch (ct.family) {
    case 'A':
      for (std::size_t d = 2; d <= n + 1; ++d) degrees.push_back(d);
      break;
    case 'B':
    case 'C':
      for (std::size_t k = 1; k <= n; ++k) degrees.push_back(2 * k);
      break;
    case 'D':
      for (std::size_t k = 1; k < n; ++k) degrees.push_back(2 * k);
      degrees.push_back(n);
      break;
    case 'E':
      if (n == 6) degrees = {2, 5, 6, 8, 9, 12};
      if (n == 7) degrees = {2, 6, 8, 10, 12, 14, 18};
      if (n == 8) degrees = {2, 8, 12, 14, 18, 20, 24, 30};
      break;
    case 'F': degrees = {2, 6, 8, 12}; break;
    case 'G': degrees = {2, 6}; break;
    default: throw DomainError("unknown family");
  }
  return std::accumulate(degrees.begin(), degrees.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace twistlab::weyl
