// Command-line front end: twistlab <command> [options]. Exit codes 0 pass, 1 fail, 2 usage, 3 budget.
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "twistlab/app.hpp"
#include "twistlab/errors.hpp"

namespace {

using namespace twistlab;
using report::Json;

struct Globals {
  bool json = false;
  std::optional<std::size_t> budget;
  std::uint64_t seed = 1;
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string word_string(const weyl::Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? " " : "") + std::string("s") + std::to_string(w[k]);
  return s;
}

std::string set_string(const rootsys::IndexSet& pi) {
  std::string s = "{";
  for (std::size_t k = 0; k < pi.size(); ++k) s += (k ? "," : "") + std::to_string(pi[k]);
  return s + "}";
}

std::string kind_string(twist::LongestKind k) {
  switch (k) {
    case twist::LongestKind::MinusTheta: return "-theta";
    case twist::LongestKind::MinusOne: return "-1";
    case twist::LongestKind::Other: return "other";
  }
  return "?";
}

rootsys::RootSystemPtr build(const std::string& type) {
  return rootsys::RootSystem::build(rootsys::CartanType::parse(type));
}

twist::TwistedSetting setting(const std::string& type, const std::string& theta) {
  const auto rs = build(type);
  return twist::TwistedSetting(rs, twist::parse_theta(rs, theta));
}

weyl::WeylElement element(const rootsys::RootSystemPtr& rs, const std::string& word) {
  const auto letters = app::parse_index_list(word);
  for (int i : letters)
    if (i < 1 || i > rs->rank()) throw DomainError("letter " + std::to_string(i) + " is not a simple index");
  return weyl::from_word(rs, letters);
}

int cmd_roots(const Globals& g, const std::string& type) {
  const auto rs = build(type);
  if (g.json) {
    emit(report::to_json(*rs));
    return 0;
  }
  std::cout << rs->type().name() << ": " << rs->num_roots() << " roots, " << rs->num_positive() << " positive\n";
  std::cout << "Cartan matrix:\n";
  const auto& a = rs->cartan_matrix();
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) std::cout << (j ? " " : "  ") << std::setw(2) << a(i, j);
    std::cout << "\n";
  }
  std::cout << "positive roots:\n";
  for (const auto& r : rs->positive_roots()) std::cout << "  " << rootsys::to_string(r) << "\n";
  return 0;
}

int cmd_weyl_count(const Globals& g, const std::string& type) {
  const auto rs = build(type);
  const auto e = weyl::enumerate(rs, g.budget.value_or(weyl::kDefaultBudget));
  const auto oracle = weyl::order_from_degrees(rs->type());
  if (g.json) {
    emit(Json{{"type", rs->type().name()}, {"order", e.size()}, {"degree_product", oracle}});
  } else {
    std::cout << "|W(" << rs->type().name() << ")| = " << e.size() << " (product of degrees " << oracle << ")\n";
  }
  return e.size() == oracle ? 0 : 1;
}

int cmd_weyl_word(const Globals& g, const std::string& type, const std::string& word) {
  const auto rs = build(type);
  const auto w = element(rs, word);
  const auto red = weyl::reduced_word(w);
  if (g.json) {
    emit(Json{{"input", app::parse_index_list(word)}, {"reduced_word", red}, {"length", weyl::length(w)}});
  } else {
    std::cout << word_string(red) << "  (length " << weyl::length(w) << ")\n";
  }
  return 0;
}

int cmd_weyl_bruhat(const Globals& g, const std::string& type, const std::string& u, const std::string& w) {
  const auto rs = build(type);
  const auto a = element(rs, u), b = element(rs, w);
  const bool leq = weyl::bruhat_leq(a, b);
  if (g.json) {
    emit(Json{{"u", report::to_json(a)}, {"w", report::to_json(b)}, {"leq", leq}});
  } else {
    std::cout << word_string(weyl::reduced_word(a)) << (leq ? " <= " : " is not <= ")
              << word_string(weyl::reduced_word(b)) << "\n";
  }
  return 0;
}

int cmd_twinv(const Globals& g, const std::string& type, const std::string& theta, bool list) {
  const auto s = setting(type, theta);
  const auto budget = g.budget.value_or(weyl::kDefaultBudget);
  const auto by_filter = twist::twisted_involutions_by_filter(s, budget);
  if (list) {
    if (g.json) {
      Json elems = Json::array();
      for (const auto& w : by_filter) elems.push_back(report::to_json(w));
      emit(Json{{"setting", s.label()}, {"count", by_filter.size()}, {"elements", std::move(elems)}});
    } else {
      for (const auto& w : by_filter) std::cout << word_string(weyl::reduced_word(w)) << "\n";
      std::cout << by_filter.size() << " twisted involutions in " << s.label() << "\n";
    }
    return 0;
  }
  // The step search only closes up for involutive theta.
  if (s.theta().order() > 2) {
    if (g.json) {
      emit(Json{{"setting", s.label()}, {"by_filter", by_filter.size()}, {"by_steps", nullptr}, {"agree", nullptr}});
    } else {
      std::cout << s.label() << ": " << by_filter.size() << " by filtering (no step search, theta has order "
                << s.theta().order() << ")\n";
    }
    return 0;
  }
  const auto by_steps = twist::twisted_involutions_by_steps(s, budget);
  const bool agree = by_filter == by_steps;
  if (g.json) {
    emit(Json{{"setting", s.label()}, {"by_filter", by_filter.size()}, {"by_steps", by_steps.size()}, {"agree", agree}});
  } else {
    std::cout << s.label() << ": " << by_filter.size() << " by filtering, " << by_steps.size() << " by steps"
              << (agree ? ", sets agree" : ", SETS DIFFER") << "\n";
  }
  return agree ? 0 : 1;
}

int cmd_classify(const Globals& g, const std::string& type, const std::string& theta) {
  const auto s = setting(type, theta);
  const auto cands = twist::wc_candidates(s);
  const auto kind = kind_string(twist::longest_kind(s));
  bool listed_ok = true;
  for (const auto& c : cands)
    if (c.listed && *c.listed && !c.conditions.all()) listed_ok = false;
  if (g.json) {
    Json items = Json::array();
    for (const auto& c : cands) items.push_back(report::to_json(c));
    emit(Json{{"setting", s.label()}, {"w0", kind}, {"candidates", std::move(items)}});
    return listed_ok ? 0 : 1;
  }
  std::cout << s.label() << " (w0 = " << kind << ")\n";
  std::cout << "  Pi                conds  listed  agrees  length  rank  dim  R_type\n";
  for (const auto& c : cands) {
    const auto& p = c.profile;
    std::string conds;
    for (bool b : {c.conditions.twisted_involution, c.conditions.involution, c.conditions.theta_fixed,
                   c.conditions.commutes_w0, c.conditions.pi_recovered})
      conds += b ? '+' : '-';
    const std::string listed = c.listed ? (*c.listed ? "yes" : "no") : "n/a";
    const auto rt = rootsys::type_name(p.r_type);
    std::cout << "  " << std::left << std::setw(18) << set_string(c.pi) << std::setw(7) << conds << std::setw(8)
              << listed << std::setw(8) << (c.agrees() ? "yes" : "NO") << std::setw(8) << p.length << std::setw(6)
              << p.rank_term << std::setw(5) << p.dim_value << (rt.empty() ? "-" : rt) << std::right << "\n";
  }
  return listed_ok ? 0 : 1;
}

int cmd_dim(const Globals& g, const std::string& type, const std::string& theta, const std::string& pi_text) {
  const auto s = setting(type, theta);
  auto pi = app::parse_index_list(pi_text);
  std::sort(pi.begin(), pi.end());
  const auto p = twist::profile(s, pi);
  const auto c = twist::check_conditions(s, pi, p.w_c);
  if (g.json) {
    auto j = report::to_json(p);
    j["conditions"] = report::to_json(c);
    emit(j);
    return 0;
  }
  const auto rt = rootsys::type_name(p.r_type);
  std::cout << s.label() << ", Pi = " << set_string(pi) << "\n"
            << "  w_C = " << word_string(p.w_c_word) << "\n"
            << "  l(w_C) = " << p.length << ", rk(1 - w_C theta) = " << p.rank_term << ", dim = " << p.dim_value << "\n"
            << "  |C| = " << p.roots.complex.size() << ", |I| = " << p.roots.imaginary.size()
            << ", |R| = " << p.roots.real.size() << ", R_type = " << (rt.empty() ? "-" : rt) << "\n"
            << "  Delta_R:";
  for (const auto& r : p.delta_r) std::cout << " " << rootsys::to_string(r);
  std::cout << "\n  conditions " << (c.all() ? "all pass" : "NOT all pass") << "\n";
  return 0;
}

int cmd_verify(const Globals& g, const std::vector<std::string>& scope_specs, int random_count,
               const std::string& out_path) {
  const auto scopes = scope_specs.empty() ? app::default_scopes() : app::parse_scopes(scope_specs);
  app::VerifyOptions opt;
  if (g.budget) opt.weyl_budget = opt.orbit_budget = *g.budget;
  opt.seed = g.seed;
  opt.random_count = random_count;
  const auto results = app::verify_all(scopes, opt);
  const auto report = app::verify_report(scopes, opt, results);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw DomainError("cannot write " + out_path);
    out << report.dump(2) << "\n";
  }
  if (g.json)
    emit(report);
  else
    std::cout << app::verify_text(results);
  return app::exit_code(results);
}

int cmd_orbit(const Globals& g, int m, int p, const std::string& rep) {
  const chevalley::Lab lab(m, p);
  const auto x = chevalley::parse_representative(lab, rep, g.seed);
  const auto r = chevalley::analyze_orbit(lab, rep, x, g.seed, g.budget.value_or(chevalley::kDefaultOrbitBudget));
  if (g.json) {
    emit(report::to_json(r));
  } else {
    std::cout << "SL" << m << "(F" << p << "), representative " << rep << "\n";
    if (!r.complete) {
      std::cout << "  orbit exceeds the budget after " << r.partial_size << " elements\n";
    } else {
      std::cout << "  orbit size " << r.orbit_size << ", " << r.cells.size() << " Bruhat cells, "
                << (r.involutive ? "involutive" : "not involutive") << "\n";
      std::cout << "  w_max = " << (r.w_max ? word_string(weyl::reduced_word(*r.w_max)) : "none") << "\n";
    }
    std::cout << "  stabilizer dim " << r.stabilizer.stabilizer_dim << ", class dim " << r.stabilizer.class_dim;
    if (r.formula_dim) std::cout << ", formula " << *r.formula_dim;
    std::cout << "\n  verdict: " << r.verdict << "\n";
  }
  if (!r.complete) return 3;
  return r.verdict == "counterexample" ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Twisted involutions, twisted conjugacy classes and their Bruhat cells"};
  cli.require_subcommand(1);
  cli.fallthrough();
  Globals g;
  std::size_t budget = 0;
  cli.add_flag("--json", g.json, "Machine-readable output");
  auto* budget_opt = cli.add_option("--budget", budget, "Element budget for enumerations and orbits");
  cli.add_option("--seed", g.seed, "Seed for random representatives");

  std::function<int()> run;
  std::string type, theta, word, u, w, pi, rep, out_path;
  std::vector<std::string> scopes;
  int m = 4, p = 3, random_count = 3;

  auto* roots = cli.add_subcommand("roots", "Root system data");
  roots->add_option("--type", type, "Cartan type, e.g. D4")->required();
  roots->callback([&] { run = [&] { return cmd_roots(g, type); }; });

  auto* weylc = cli.add_subcommand("weyl", "Weyl group computations");
  weylc->require_subcommand(1);
  auto* count = weylc->add_subcommand("count", "Enumerate W and compare with the degrees");
  count->add_option("--type", type)->required();
  count->callback([&] { run = [&] { return cmd_weyl_count(g, type); }; });
  auto* wordc = weylc->add_subcommand("word", "Canonical reduced word of a product of simple reflections");
  wordc->add_option("--type", type)->required();
  wordc->add_option("--word", word, "Letters, e.g. 1,2,1")->required();
  wordc->callback([&] { run = [&] { return cmd_weyl_word(g, type, word); }; });
  auto* bruhat = weylc->add_subcommand("bruhat", "Is u <= w in the Bruhat order");
  bruhat->add_option("--type", type)->required();
  bruhat->add_option("--u", u)->required();
  bruhat->add_option("--w", w)->required();
  bruhat->callback([&] { run = [&] { return cmd_weyl_bruhat(g, type, u, w); }; });

  auto* twinv = cli.add_subcommand("twinv", "Twisted involutions");
  twinv->require_subcommand(1);
  for (const bool list : {true, false}) {
    auto* sub = twinv->add_subcommand(list ? "list" : "count", list ? "List them" : "Count them both ways");
    sub->add_option("--type", type)->required();
    sub->add_option("--theta", theta, "Cycle notation or an alias")->required();
    sub->callback([&, list] { run = [&, list] { return cmd_twinv(g, type, theta, list); }; });
  }

  auto* classify = cli.add_subcommand("classify", "All theta-stable Pi against the necessary conditions");
  classify->add_option("--type", type)->required();
  classify->add_option("--theta", theta)->required();
  classify->callback([&] { run = [&] { return cmd_classify(g, type, theta); }; });

  auto* dim = cli.add_subcommand("dim", "Profile of w_C = w0 w_Pi");
  dim->add_option("--type", type)->required();
  dim->add_option("--theta", theta)->required();
  dim->add_option("--pi", pi, "Comma-separated simple indices")->required();
  dim->callback([&] { run = [&] { return cmd_dim(g, type, theta, pi); }; });

  auto* verify = cli.add_subcommand("verify", "Run the check suite");
  verify->add_option("--scope", scopes, "A3, D4:triality-a, lab:4:3, none; repeatable");
  verify->add_option("--random", random_count, "Random orbit representatives per lab")->check(CLI::NonNegativeNumber);
  verify->add_option("--out", out_path, "Also write the JSON report here");
  verify->callback([&] { run = [&] { return cmd_verify(g, scopes, random_count, out_path); }; });

  auto* orbit = cli.add_subcommand("orbit", "Twisted orbit of one element in SL_m(F_p)");
  orbit->add_option("--m", m)->required();
  orbit->add_option("--p", p)->required();
  orbit->add_option("--rep", rep, "identity, w0, wc:1,3, x1*h2, diag:..., rows:..., random")->required();
  orbit->callback([&] { run = [&] { return cmd_orbit(g, m, p, rep); }; });

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (budget_opt->count() > 0) g.budget = budget;

  try {
    return run();
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << " (" << e.partial_count() << " so far)\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
