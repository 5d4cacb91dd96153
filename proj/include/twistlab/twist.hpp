#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twistlab/rootsys.hpp"
#include "twistlab/weyl.hpp"

namespace twistlab::twist {

using rootsys::CartanType;
using rootsys::DiagramAut;
using rootsys::IndexSet;
using rootsys::Root;
using rootsys::RootIndex;
using rootsys::RootSystemPtr;
using weyl::WeylElement;
using weyl::Word;

/// A root system together with a diagram automorphism theta.
class TwistedSetting {
 public:
  /// Throws DomainError when theta does not preserve the Cartan matrix.
  TwistedSetting(RootSystemPtr rs, DiagramAut theta);

  const RootSystemPtr& rs() const { return rs_; }
  const DiagramAut& theta() const { return theta_; }
  RootIndex theta_root(RootIndex r) const { return theta_perm_[r]; }
  const WeylElement& w0() const { return w0_; }

  /// Permutation matrix of theta on simple-root coordinates.
  IntMatrix theta_matrix() const;

  std::string label() const;

 private:
  RootSystemPtr rs_;
  DiagramAut theta_;
  std::vector<RootIndex> theta_perm_;
  std::vector<RootIndex> theta_inv_perm_;
  WeylElement w0_;

  friend WeylElement theta_on_w(const TwistedSetting&, const WeylElement&);
};

/// The diagram automorphism i -> j where w0(alpha_i) = -alpha_j.
DiagramAut neg_w0(const RootSystemPtr& rs);

/// Resolves "(1 3)", "neg-w0", "swap-last", "triality-a", "triality-b", "id".
DiagramAut parse_theta(const RootSystemPtr& rs, const std::string& spec);

/// theta w theta^{-1}; on words, relabels each letter i as theta(i).
WeylElement theta_on_w(const TwistedSetting& s, const WeylElement& w);

/// w theta(w) = 1.
bool is_twisted_involution(const TwistedSetting& s, const WeylElement& w);

/// Returns u with w = u theta(u)^{-1}, or nothing. Searches the orbit of the
/// identity under x -> s_i x theta(s_i).
std::optional<WeylElement> twisted_identity_witness(const TwistedSetting& s, const WeylElement& w);
inline bool is_twisted_identity(const TwistedSetting& s, const WeylElement& w) {
  return twisted_identity_witness(s, w).has_value();
}

enum class StepType { Up, Middle, Down };
std::string to_string(StepType t);

/// Classifies s_i w s_{theta i} against w. Throws DomainError unless w is a twisted involution.
StepType step_type(const TwistedSetting& s, const WeylElement& w, int i);

/// Enumerates W and keeps the twisted involutions. Sorted shortlex by reduced word.
std::vector<WeylElement> twisted_involutions_by_filter(const TwistedSetting& s,
                                                       std::size_t budget = weyl::kDefaultBudget);
/// Breadth-first search from the identity along Up and Middle steps. Same order.
/// Only valid when theta is an involution; throws DomainError otherwise.
std::vector<WeylElement> twisted_involutions_by_steps(const TwistedSetting& s,
                                                      std::size_t budget = weyl::kDefaultBudget);

/// Positive roots split by the action of w theta. Index lists ascend.
struct RootClassification {
  std::vector<RootIndex> complex;
  std::vector<RootIndex> imaginary;
  std::vector<RootIndex> real;
};

RootClassification roots_classification(const TwistedSetting& s, const WeylElement& w);

/// Simple indices i with w theta(alpha_i) = alpha_i.
IndexSet pi_of(const TwistedSetting& s, const WeylElement& w);

/// Exact rank of 1 - M(w) M(theta) on the root lattice.
int twisted_rank(const TwistedSetting& s, const WeylElement& w);

enum class LongestKind { MinusTheta, MinusOne, Other };
/// Compares w0 with -theta and with -1 as linear maps.
LongestKind longest_kind(const TwistedSetting& s);

/// Closed form for the real roots of w0 w_pi: pi-perp positive roots, keeping
/// only theta-fixed ones when w0 = -1. Empty optional when neither case applies.
std::optional<std::vector<RootIndex>> real_roots_formula(const TwistedSetting& s, const IndexSet& pi);

struct ClassProfile {
  TwistedSetting setting;
  IndexSet pi;
  WeylElement w_c;
  Word w_c_word;
  int length = 0;
  int rank_term = 0;
  int dim_value = 0;
  RootClassification roots;
  std::vector<Root> delta_r;
  std::vector<CartanType> r_type;
};

/// Data attached to w_C = w0 w_pi. Throws DomainError unless pi is theta-stable.
ClassProfile profile(const TwistedSetting& s, const IndexSet& pi);

struct Conditions {
  bool twisted_involution = false;
  bool involution = false;
  bool theta_fixed = false;
  bool commutes_w0 = false;
  bool pi_recovered = false;

  bool all() const { return twisted_involution && involution && theta_fixed && commutes_w0 && pi_recovered; }
};

Conditions check_conditions(const TwistedSetting& s, const IndexSet& pi, const WeylElement& w);

struct Candidate {
  IndexSet pi;
  ClassProfile profile;
  Conditions conditions;
  /// Empty when theta is trivial (the table only covers non-trivial theta).
  std::optional<bool> listed;

  /// The condition filter and the table say the same thing.
  bool agrees() const { return !listed || *listed == conditions.all(); }
};

/// Every theta-stable subset of the simple indices, in lexicographic order.
std::vector<IndexSet> theta_stable_subsets(const TwistedSetting& s);

std::vector<Candidate> wc_candidates(const TwistedSetting& s);

/// A row of the table of admissible pairs (Phi, Pi) for non-trivial theta.
struct ListedPair {
  std::string row;
  IndexSet pi;
};

/// Rows of the table that apply to this setting, instantiated at its rank.
std::vector<ListedPair> listed_pairs(const TwistedSetting& s);

}  // namespace twistlab::twist
