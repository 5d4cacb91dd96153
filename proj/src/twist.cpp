#include "twistlab/twist.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "twistlab/errors.hpp"

namespace twistlab::twist {

using weyl::length;
using weyl::mult;

namespace {

std::vector<WeylElement> sorted_shortlex(std::vector<WeylElement> elems) {
  std::vector<std::pair<Word, std::size_t>> keyed;
  keyed.reserve(elems.size());
  for (std::size_t k = 0; k < elems.size(); ++k) keyed.emplace_back(weyl::reduced_word(elems[k]), k);
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return weyl::shortlex_less(a.first, b.first); });
  std::vector<WeylElement> out;
  out.reserve(elems.size());
  for (const auto& [word, k] : keyed) out.push_back(elems[k]);
  return out;
}

bool same_set(const IndexSet& a, const IndexSet& b) {
  IndexSet x = a, y = b;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

}  // namespace

// ---------------------------------------------------------------------------
// Setting

TwistedSetting::TwistedSetting(RootSystemPtr rs, DiagramAut theta)
    : rs_(std::move(rs)), theta_(std::move(theta)), w0_(weyl::WeylElement::identity(rs_)) {
  if (!theta_.preserves(*rs_))
    throw DomainError(theta_.cycles() + " is not a diagram automorphism of " + rs_->type().name());
  theta_perm_.resize(rs_->num_roots());
  theta_inv_perm_.resize(rs_->num_roots());
  for (std::size_t r = 0; r < rs_->num_roots(); ++r) {
    const auto img = rs_->index(theta_.apply(rs_->root(static_cast<RootIndex>(r))));
    theta_perm_[r] = img;
    theta_inv_perm_[img] = static_cast<RootIndex>(r);
  }
  IndexSet all(rs_->rank());
  for (int i = 0; i < rs_->rank(); ++i) all[i] = i + 1;
  w0_ = weyl::longest_element(rs_, all);
}

IntMatrix TwistedSetting::theta_matrix() const {
  const int n = rs_->rank();
  IntMatrix m(n, n);
  for (int j = 1; j <= n; ++j) m(theta_(j) - 1, j - 1) = 1;
  return m;
}

std::string TwistedSetting::label() const { return rs_->type().name() + " theta=" + theta_.cycles(); }

DiagramAut neg_w0(const RootSystemPtr& rs) {
  IndexSet all(rs->rank());
  for (int i = 0; i < rs->rank(); ++i) all[i] = i + 1;
  const auto w0 = weyl::longest_element(rs, all);
  std::vector<int> images(rs->rank());
  for (int i = 1; i <= rs->rank(); ++i) {
    const auto img = rs->negative(w0.image_of_simple(i));
    if (img >= static_cast<RootIndex>(rs->rank())) throw ConstructionError("-w0 does not permute the simple roots");
    images[i - 1] = img + 1;
  }
  return DiagramAut(std::move(images));
}

DiagramAut parse_theta(const RootSystemPtr& rs, const std::string& spec) {
  const auto& ct = rs->type();
  if (spec == "id" || spec == "identity") return DiagramAut::identity(rs->rank());
  if (spec == "neg-w0") return neg_w0(rs);
  const auto auts = rootsys::diagram_auts(*rs);
  if (spec == "swap-last") {
    if (ct.family != 'D') throw DomainError("swap-last needs type D");
    const int n = ct.rank;
    for (const auto& a : auts) {
      bool ok = a(n - 1) == n && a(n) == n - 1;
      for (int i = 1; ok && i < n - 1; ++i) ok = a(i) == i;
      if (ok) return a;
    }
    throw DomainError("swap-last is ambiguous or missing for " + ct.name());
  }
  if (spec == "triality-a" || spec == "triality-b") {
    if (ct.family != 'D' || ct.rank != 4) throw DomainError(spec + " needs type D4");
    std::vector<DiagramAut> order3;
    for (const auto& a : auts)
      if (a.order() == 3) order3.push_back(a);
    if (order3.size() != 2) throw DomainError("triality aliases are ambiguous");
    return order3[spec == "triality-a" ? 0 : 1];
  }
  auto a = DiagramAut::parse_cycles(spec, rs->rank());
  if (!a.preserves(*rs)) throw DomainError(spec + " is not a diagram automorphism of " + ct.name());
  return a;
}

// ---------------------------------------------------------------------------
// Twisted involutions

WeylElement theta_on_w(const TwistedSetting& s, const WeylElement& w) {
  if (w.root_system().type() != s.rs()->type()) throw DomainError("element is not in this Weyl group");
  const auto& p = w.permutation();
  std::vector<RootIndex> out(p.size());
  for (std::size_t r = 0; r < p.size(); ++r) out[r] = s.theta_perm_[p[s.theta_inv_perm_[r]]];
  return WeylElement(w.root_system_ptr(), std::move(out));
}

bool is_twisted_involution(const TwistedSetting& s, const WeylElement& w) {
  return mult(w, theta_on_w(s, w)).is_identity();
}

std::optional<WeylElement> twisted_identity_witness(const TwistedSetting& s, const WeylElement& w) {
  const auto& rs = s.rs();
  std::unordered_map<WeylElement, WeylElement, weyl::WeylElementHash> witness;
  std::deque<WeylElement> queue;
  const auto id = WeylElement::identity(rs);
  witness.emplace(id, id);
  queue.push_back(id);
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    const auto u = witness.at(x);
    if (x == w) return u;
    for (int i = 1; i <= rs->rank(); ++i) {
      const auto si = weyl::simple_reflection(rs, i);
      // s_i u theta(s_i u)^{-1} = s_i x theta(s_i).
      auto y = mult(mult(si, x), weyl::simple_reflection(rs, s.theta()(i)));
      if (witness.count(y)) continue;
      witness.emplace(y, mult(si, u));
      queue.push_back(std::move(y));
    }
  }
  return std::nullopt;
}

std::string to_string(StepType t) {
  switch (t) {
    case StepType::Up: return "UP";
    case StepType::Middle: return "MIDDLE";
    case StepType::Down: return "DOWN";
  }
  return "?";
}

StepType step_type(const TwistedSetting& s, const WeylElement& w, int i) {
  if (!is_twisted_involution(s, w)) throw DomainError("step_type needs a twisted involution");
  const auto& rs = s.rs();
  const auto si = weyl::simple_reflection(rs, i);
  const auto st = weyl::simple_reflection(rs, s.theta()(i));
  const auto siw = mult(si, w);
  if (siw == mult(w, st)) return StepType::Middle;
  const int l = length(w);
  const int l2 = length(mult(siw, st));
  if (l2 == l + 2) return StepType::Up;
  if (l2 == l - 2) return StepType::Down;
  throw ConstructionError("step from a twisted involution fits none of the three cases");
}

std::vector<WeylElement> twisted_involutions_by_filter(const TwistedSetting& s, std::size_t budget) {
  const auto all = weyl::enumerate(s.rs(), budget);
  std::vector<WeylElement> out;
  for (const auto& w : all.elements)
    if (is_twisted_involution(s, w)) out.push_back(w);
  return out;
}

std::vector<WeylElement> twisted_involutions_by_steps(const TwistedSetting& s, std::size_t budget) {
  if (s.theta().order() > 2) throw DomainError("step search needs theta^2 = 1, " + s.label() + " has order 3");
  const auto& rs = s.rs();
  std::unordered_set<WeylElement, weyl::WeylElementHash> seen;
  std::vector<WeylElement> order;
  const auto id = WeylElement::identity(rs);
  seen.insert(id);
  order.push_back(id);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const auto w = order[head];
    for (int i = 1; i <= rs->rank(); ++i) {
      const auto t = step_type(s, w, i);
      if (t == StepType::Down) continue;
      auto next = mult(weyl::simple_reflection(rs, i), w);
      if (t == StepType::Up) next = mult(next, weyl::simple_reflection(rs, s.theta()(i)));
      if (seen.insert(next).second) {
        order.push_back(std::move(next));
        if (order.size() > budget)
          throw BudgetExceeded("twisted involutions of " + s.label() + " exceed budget", order.size());
      }
    }
  }
  return sorted_shortlex(std::move(order));
}

// ---------------------------------------------------------------------------
// Roots attached to w theta

RootClassification roots_classification(const TwistedSetting& s, const WeylElement& w) {
  const auto& rs = *s.rs();
  RootClassification out;
  for (std::size_t k = 0; k < rs.num_positive(); ++k) {
    const auto r = static_cast<RootIndex>(k);
    const auto b = w.apply(s.theta_root(r));
    if (b == r)
      out.imaginary.push_back(r);
    else if (b == rs.negative(r))
      out.real.push_back(r);
    else if (!rs.is_positive(b))
      out.complex.push_back(r);
  }
  return out;
}

IndexSet pi_of(const TwistedSetting& s, const WeylElement& w) {
  IndexSet out;
  for (int i = 1; i <= s.rs()->rank(); ++i) {
    const auto a = s.rs()->simple(i);
    if (w.apply(s.theta_root(a)) == a) out.push_back(i);
  }
  return out;
}

int twisted_rank(const TwistedSetting& s, const WeylElement& w) {
  const int n = s.rs()->rank();
  return rank(IntMatrix::identity(n) - w.matrix() * s.theta_matrix());
}

LongestKind longest_kind(const TwistedSetting& s) {
  const int n = s.rs()->rank();
  const auto w0 = s.w0().matrix();
  IntMatrix minus_theta = IntMatrix(n, n) - s.theta_matrix();
  IntMatrix minus_one = IntMatrix(n, n) - IntMatrix::identity(n);
  if (w0 == minus_theta) return LongestKind::MinusTheta;
  if (w0 == minus_one) return LongestKind::MinusOne;
  return LongestKind::Other;
}

std::optional<std::vector<RootIndex>> real_roots_formula(const TwistedSetting& s, const IndexSet& pi) {
  const auto kind = longest_kind(s);
  if (kind == LongestKind::Other) return std::nullopt;
  const auto& rs = *s.rs();
  std::vector<RootIndex> out;
  for (const auto& r : rootsys::perp(rs, pi)) {
    const auto idx = rs.index(r);
    if (!rs.is_positive(idx)) continue;
    if (kind == LongestKind::MinusOne && s.theta_root(idx) != idx) continue;
    out.push_back(idx);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Profiles and candidates

ClassProfile profile(const TwistedSetting& s, const IndexSet& pi_in) {
  IndexSet pi = pi_in;
  std::sort(pi.begin(), pi.end());
  pi.erase(std::unique(pi.begin(), pi.end()), pi.end());
  for (int i : pi)
    if (i < 1 || i > s.rs()->rank()) throw DomainError("simple index out of range");
  if (!s.theta().stabilizes(pi)) throw DomainError("Pi is not theta-invariant");

  const auto& rs = *s.rs();
  auto w_c = mult(s.w0(), weyl::longest_element(s.rs(), pi));
  auto roots = roots_classification(s, w_c);
  std::vector<Root> real;
  for (auto r : roots.real) real.push_back(rs.root(r));
  rootsys::Subsystem sub;
  if (!real.empty()) sub = rootsys::subsystem(rs, real);

  ClassProfile p{s, pi, w_c, weyl::reduced_word(w_c), length(w_c), twisted_rank(s, w_c), 0, std::move(roots),
                 std::move(sub.simple_system), std::move(sub.components)};
  p.dim_value = p.length + p.rank_term;
  return p;
}

Conditions check_conditions(const TwistedSetting& s, const IndexSet& pi, const WeylElement& w) {
  Conditions c;
  c.twisted_involution = is_twisted_involution(s, w);
  c.involution = mult(w, w).is_identity();
  c.theta_fixed = theta_on_w(s, w) == w;
  c.commutes_w0 = mult(w, s.w0()) == mult(s.w0(), w);
  c.pi_recovered = same_set(pi_of(s, w), pi);
  return c;
}

std::vector<IndexSet> theta_stable_subsets(const TwistedSetting& s) {
  const int n = s.rs()->rank();
  std::vector<IndexSet> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    IndexSet pi;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) pi.push_back(i + 1);
    if (s.theta().stabilizes(pi)) out.push_back(std::move(pi));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Candidate> wc_candidates(const TwistedSetting& s) {
  std::vector<IndexSet> listed;
  for (auto& row : listed_pairs(s)) listed.push_back(row.pi);
  std::vector<Candidate> out;
  for (auto& pi : theta_stable_subsets(s)) {
    auto prof = profile(s, pi);
    auto cond = check_conditions(s, pi, prof.w_c);
    std::optional<bool> in_list;
    if (!s.theta().is_identity()) in_list = std::find(listed.begin(), listed.end(), pi) != listed.end();
    out.push_back(Candidate{pi, std::move(prof), cond, in_list});
  }
  return out;
}

std::vector<ListedPair> listed_pairs(const TwistedSetting& s) {
  std::vector<ListedPair> out;
  const auto& theta = s.theta();
  if (theta.is_identity()) return out;
  const auto ct = s.rs()->type();
  const int n = ct.rank;
  const bool is_neg_w0 = theta == neg_w0(s.rs());
  auto range = [](int from, int to) {
    IndexSet r;
    for (int i = from; i <= to; ++i) r.push_back(i);
    return r;
  };

  out.push_back({"(Phi, {})", {}});

  if (ct.family == 'A' && n % 2 == 1 && is_neg_w0) {
    IndexSet odd;
    for (int i = 1; i <= n; i += 2) odd.push_back(i);
    out.push_back({"(A_{2n+1}, {a1,a3,...,a_{2n+1}}), theta=-w0", odd});
  }
  if (ct.family == 'D' && n == 4) {
    if (theta.order() == 3) out.push_back({"(D4, {a2}), theta^3=1", {2}});
    if (theta.order() == 2) {
      IndexSet pi{2};
      for (int i = 1; i <= 4; ++i)
        if (theta(i) != i) pi.push_back(i);
      std::sort(pi.begin(), pi.end());
      out.push_back({"(D4, {a2, ai, theta ai}), theta^2=1", pi});
    }
  }
  if (ct.family == 'D' && n % 2 == 0 && n / 2 > 2 && theta(n - 1) == n) {
    for (int l = 1; l <= n / 2 - 1; ++l)
      out.push_back({"(D_{2n}, {a_{2l},...,a_{2n}}), l=" + std::to_string(l), range(2 * l, n)});
  }
  if (ct.family == 'D' && n % 2 == 1 && (n - 1) / 2 >= 2 && is_neg_w0) {
    for (int l = 1; l <= (n - 1) / 2; ++l)
      out.push_back({"(D_{2n+1}, {a_{2l},...,a_{2n+1}}), l=" + std::to_string(l), range(2 * l, n)});
  }
  if (ct.family == 'E' && n == 6 && is_neg_w0) out.push_back({"(E6, {a2,a3,a4,a5}), theta=-w0", {2, 3, 4, 5}});
  return out;
}

}  // namespace twistlab::twist
