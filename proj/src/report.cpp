#include "twistlab/report.hpp"

namespace twistlab::report {

Json to_json(const rootsys::Root& r) { return Json(r.coords); }

Json to_json(const rootsys::RootSystem& rs) {
  Json cartan = Json::array();
  const auto& a = rs.cartan_matrix();
  for (int i = 0; i < a.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < a.cols; ++j) row.push_back(a(i, j));
    cartan.push_back(std::move(row));
  }
  Json positive = Json::array();
  for (const auto& r : rs.positive_roots()) positive.push_back(to_json(r));
  Json all = Json::array();
  for (const auto& r : rs.roots()) all.push_back(to_json(r));
  return Json{{"type", rs.type().name()},
              {"rank", rs.rank()},
              {"cartan_matrix", std::move(cartan)},
              {"positive_roots", std::move(positive)},
              {"roots", std::move(all)}};
}

Json to_json(const rootsys::IndexSet& s) { return Json(std::vector<int>(s.begin(), s.end())); }

Json to_json(const weyl::WeylElement& w) { return Json(weyl::reduced_word(w)); }

Json to_json(const twist::Conditions& c) {
  return Json{{"twisted_involution", c.twisted_involution},
              {"involution", c.involution},
              {"theta_fixed", c.theta_fixed},
              {"commutes_w0", c.commutes_w0},
              {"pi_recovered", c.pi_recovered}};
}

Json to_json(const twist::ClassProfile& p) {
  Json delta = Json::array();
  for (const auto& r : p.delta_r) delta.push_back(to_json(r));
  std::vector<std::string> types;
  for (const auto& t : p.r_type) types.push_back(t.name());
  return Json{{"type", p.setting.rs()->type().name()},
              {"theta", p.setting.theta().cycles()},
              {"Pi", to_json(p.pi)},
              {"w_C_word", Json(p.w_c_word)},
              {"length", p.length},
              {"rank_term", p.rank_term},
              {"dim", p.dim_value},
              {"sizes", Json{{"C", p.roots.complex.size()},
                             {"I", p.roots.imaginary.size()},
                             {"R", p.roots.real.size()}}},
              {"delta_R", std::move(delta)},
              {"R_type", types}};
}

Json to_json(const twist::Candidate& c) {
  auto j = to_json(c.profile);
  j["conditions"] = to_json(c.conditions);
  j["passes"] = c.conditions.all();
  j["listed"] = c.listed ? Json(*c.listed) : Json(nullptr);
  j["agrees"] = c.agrees();
  return j;
}

Json to_json(const chevalley::Matrix& x) { return Json(x.rows()); }

Json to_json(const chevalley::OrbitReport& r) {
  Json cells = Json::array();
  for (std::size_t k = 0; k < r.cells.size(); ++k)
    cells.push_back(Json{{"word", to_json(r.cells[k])}, {"count", r.cell_counts[k]}});
  Json j{{"m", r.m},
         {"p", r.p},
         {"seed", r.seed},
         {"name", r.name},
         {"representative", to_json(r.representative)},
         {"complete", r.complete}};
  j["orbit_size"] = r.complete ? Json(r.orbit_size) : Json(nullptr);
  if (!r.complete) j["partial_size"] = r.partial_size;
  j["cells"] = std::move(cells);
  j["w_max"] = r.w_max ? to_json(*r.w_max) : Json(nullptr);
  j["involutive"] = r.complete ? Json(r.involutive) : Json(nullptr);
  j["stabilizer_dim"] = r.stabilizer.stabilizer_dim;
  j["class_dim"] = r.stabilizer.class_dim;
  j["formula_dim"] = r.formula_dim ? Json(*r.formula_dim) : Json(nullptr);
  j["separable"] = !r.stabilizer.advisory;
  j["verdict"] = r.verdict;
  return j;
}

}  // namespace twistlab::report
