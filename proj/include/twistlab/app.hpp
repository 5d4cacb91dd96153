#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/report.hpp"

/// The verification suite and report assembly behind the command line.
namespace twistlab::app {

using report::Json;

enum class Status { Pass, Fail, Advisory };
std::string to_string(Status s);

struct CheckResult {
  std::string check_id;
  /// "D4", "D4 theta=(3 4)" or "SL4(F3)".
  std::string scope;
  Status status = Status::Pass;
  std::string details;
  Json data = Json::object();
  /// Advisory because a budget ran out (as opposed to a separability caveat).
  bool budget_exhausted = false;
};

/// Either a root system with some diagram automorphisms, or a matrix lab.
struct Scope {
  enum class Kind { RootSystem, Lab };
  Kind kind = Kind::RootSystem;
  rootsys::CartanType type{};
  /// Automorphisms to twist by; by default every non-trivial one.
  std::vector<rootsys::DiagramAut> thetas;
  int m = 0;
  int p = 0;

  std::string label() const;
};

/// Parses "A3", "A3:(1 3)", "D4:triality-a", "lab:4:3"; "none" yields nothing.
/// Throws DomainError for anything unresolvable.
std::vector<Scope> parse_scope(const std::string& spec);
std::vector<Scope> parse_scopes(const std::vector<std::string>& specs);
/// A3, A5, D4, D5, D6, E6 with every non-trivial theta, and SL4(F3).
std::vector<Scope> default_scopes();

struct VerifyOptions {
  std::size_t weyl_budget = weyl::kDefaultBudget;
  std::size_t orbit_budget = chevalley::kDefaultOrbitBudget;
  std::uint64_t seed = 1;
  /// Random representatives per lab, on top of the fixed ones.
  int random_count = 3;
};

/// Runs every applicable check on every scope. Results are ordered by check id,
/// then by scope order.
std::vector<CheckResult> verify_all(const std::vector<Scope>& scopes, const VerifyOptions& options);

/// 1 if anything failed, else 3 if a budget ran out, else 0.
int exit_code(const std::vector<CheckResult>& results);

Json to_json(const CheckResult& r);
Json verify_report(const std::vector<Scope>& scopes, const VerifyOptions& options,
                   const std::vector<CheckResult>& results);
std::string verify_text(const std::vector<CheckResult>& results);

/// "1,3" or "1 3" or "" (empty set). Throws DomainError on junk.
std::vector<int> parse_index_list(const std::string& text);

}  // namespace twistlab::app
