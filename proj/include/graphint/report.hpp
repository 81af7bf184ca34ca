#pragma once

// JSON reports assembled from every module. Cross-oracle disagreements are
// collected in `mismatches` instead of aborting, so the report is still written.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphint/axioms.hpp"
#include "graphint/dynamics.hpp"
#include "graphint/ktheory.hpp"
#include "graphint/rational_matrix.hpp"
#include "graphint/representation.hpp"
#include "graphint/structure.hpp"

namespace graphint {

inline constexpr const char* kReportSchema = "graphint-report/1";

struct ReportOptions {
  unsigned max_power = 6;
  std::size_t level = 2;  // axiom suite runs on F_1 .. F_level
  std::size_t depth = 4;  // truncated representation depth
};

struct Report {
  nlohmann::ordered_json json;
  std::vector<std::string> mismatches;  // cross-oracle disagreements
  std::vector<std::string> failures;    // failed exact checks
};

namespace detail {

inline nlohmann::ordered_json names(const Graph& g, const VertexSet& vs) {
  auto a = nlohmann::ordered_json::array();
  for (VertexId v : vs) a.push_back(g.vertex_name(v));
  return a;
}

inline nlohmann::ordered_json uints(const std::vector<unsigned>& xs) {
  auto a = nlohmann::ordered_json::array();
  for (unsigned x : xs) a.push_back(x);
  return a;
}

}  // namespace detail

inline nlohmann::ordered_json graph_summary(const Graph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = g.vertex_count();
  j["edges"] = g.edge_count();
  j["sinks"] = g.sinks().size();
  j["sources"] = g.sources().size();
  j["vertex_names"] = g.vertex_names();
  auto es = nlohmann::ordered_json::array();
  for (const auto& e : g.edges())
    es.push_back({{"name", e.name}, {"src", g.vertex_name(e.src)}, {"dst", g.vertex_name(e.dst)}});
  j["edge_list"] = std::move(es);
  return j;
}

/// Interaction powers with the two combinatorial oracles and the truncated
/// partial-isometry check (depth n + 1 suffices: the window then holds every
/// vertex, and S^n (S^n)^* S^n delta_alpha is S^n delta_alpha scaled by the
/// s(alpha)-column sum of P^n).
inline nlohmann::ordered_json powers_fragment(const Graph& g, unsigned max_power, Report& rep) {
  PowerOracles o = interaction_power_oracles(g, max_power);
  std::vector<unsigned> iso;
  for (unsigned n = 1; n <= max_power; ++n)
    if (power_partial_isometry_check(g, n, n + 1)) iso.push_back(n);
  bool agree = o.stochastic == o.path_condition && o.stochastic == iso;
  if (!agree) rep.mismatches.push_back("interaction powers: membership oracles disagree");
  std::vector<unsigned> missing;
  for (unsigned n = 1; n <= max_power; ++n)
    if (!std::binary_search(o.stochastic.begin(), o.stochastic.end(), n)) missing.push_back(n);
  nlohmann::ordered_json j;
  j["max_power"] = max_power;
  j["powers"] = detail::uints(o.stochastic);
  j["excluded"] = detail::uints(missing);
  j["oracles"] = {{"partially_stochastic", detail::uints(o.stochastic)},
                  {"path_condition", detail::uints(o.path_condition)},
                  {"partial_isometry_window", detail::uints(iso)}};
  j["oracles_agree"] = agree;
  return j;
}

inline nlohmann::ordered_json structure_fragment(const Graph& g, unsigned max_power, Report& rep) {
  nlohmann::ordered_json j;
  ConditionKOracles k = condition_K_oracles(g);
  if (k.hereditary_saturated != k.return_paths) rep.mismatches.push_back("condition K: formulations disagree");
  bool L = condition_L(g);
  auto lattice = all_hereditary_saturated(g);
  j["condition_L"] = L;
  j["condition_K"] = k.hereditary_saturated;
  j["condition_K_oracles"] = {{"hereditary_saturated", k.hereditary_saturated}, {"return_paths", k.return_paths}};
  auto lat = nlohmann::ordered_json::array();
  for (const auto& h : lattice) lat.push_back(detail::names(g, h));
  j["hereditary_saturated_lattice"] = std::move(lat);
  if (k.hereditary_saturated == k.return_paths) {
    Verdicts v = verdicts(g);
    j["simple"] = v.simple ? "criteria-met" : "criteria-not-met";
    j["simple_reason"] = v.simple_reason;
    j["purely_infinite"] = v.purely_infinite;
    j["purely_infinite_reason"] = v.purely_infinite_reason;
    j["minimal"] = v.minimal;
    j["topologically_free"] = v.topologically_free;
    j["free"] = v.free;
  }
  bool dyn = is_cstar_dynamical(g);
  j["cstar_dynamical"] = dyn;
  j["H_multiplicative"] = is_H_multiplicative(g);
  j["interaction_powers"] = powers_fragment(g, max_power, rep);
  bool full = j["interaction_powers"]["excluded"].empty();
  if (dyn != full) rep.mismatches.push_back("C*-dynamical verdict disagrees with the interaction powers");
  return j;
}

inline nlohmann::ordered_json dynamics_fragment(const Graph& g) {
  nlohmann::ordered_json j;
  DichotomyWitness w = dichotomy_witness(g);
  auto loops = nlohmann::ordered_json::array();
  for (const auto& l : exit_free_loops(g)) loops.push_back(path_to_string(g, l));
  j["exit_free_loops"] = std::move(loops);
  auto orbits = nlohmann::ordered_json::array();
  for (const auto& o : w.orbits) {
    auto cs = nlohmann::ordered_json::array();
    for (const auto& c : o.classes) cs.push_back(to_string(g, c.representative()));
    orbits.push_back({{"loop", path_to_string(g, o.loop)}, {"length", o.classes.size()}, {"classes", std::move(cs)}});
  }
  j["periodic_orbits"] = std::move(orbits);
  auto exits = nlohmann::ordered_json::array();
  for (const auto& [loop, e] : w.loop_exits) exits.push_back({{"loop", path_to_string(g, loop)}, {"exit", g.edge(e).name}});
  j["loop_exits"] = std::move(exits);
  j["topologically_free"] = w.topologically_free;
  return j;
}

inline nlohmann::ordered_json ktheory_fragment(const Graph& g, Report& rep) {
  KGroups k = k_groups(g);
  PVResult pv = pv_truncated_oracle(g, g.vertex_count() + 2);
  if (!pv.agrees) rep.mismatches.push_back("K-theory: truncated presentation disagrees with Delta_E");
  return to_json(k, delta_matrix(g), pv);
}

inline nlohmann::ordered_json verification_fragment(const Graph& g, std::size_t level, std::size_t depth, Report& rep) {
  nlohmann::ordered_json j;
  auto levels = nlohmann::ordered_json::array();
  for (std::size_t n = 1; n <= level; ++n) {
    AxiomReport a = verify_interaction_axioms(g, n);
    nlohmann::ordered_json lj;
    lj["level"] = n;
    lj["basis_size"] = a.basis_size;
    lj["passed"] = a.passed();
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : a.checks) {
      checks.push_back({{"name", c.name}, {"instances", c.instances}, {"failures", c.failures}});
      if (c.failures) rep.failures.push_back("axiom " + c.name + " at level " + std::to_string(n));
    }
    lj["checks"] = std::move(checks);
    levels.push_back(std::move(lj));
  }
  j["axioms"] = std::move(levels);

  nlohmann::ordered_json r;
  r["depth"] = depth;
  auto vh = nlohmann::ordered_json::array();
  for (std::size_t n = 0; n <= level && n + 1 <= depth; ++n) {
    bool ok = oracle_check_VH(g, n, depth);
    vh.push_back({{"level", n}, {"passed", ok}});
    if (!ok) rep.failures.push_back("operator oracle for V and H at level " + std::to_string(n));
  }
  r["VH"] = std::move(vh);
  bool ck = depth >= 2 && ck_window_check(g, depth);
  if (!ck) rep.failures.push_back("Cuntz-Krieger relations on the truncation window");
  r["ck_window"] = ck;
  r["ck_full_space"] = ck_full_space_check(g, depth);
  r["ck_full_space_note"] = "expected to fail exactly when paths of length depth+1 exist";
  PositivityReport pos = positivity_spot_check(g, std::min<std::size_t>(level, 2), 5);
  r["positivity"] = {{"samples", pos.samples}, {"tolerance", "1e-9"}, {"passed", pos.passed()}};
  if (!pos.passed()) rep.failures.push_back("positivity spot check");
  j["rep_oracle"] = std::move(r);
  return j;
}

inline Report analyze(const Graph& g, const ReportOptions& opt) {
  Report rep;
  auto& j = rep.json;
  j["schema"] = kReportSchema;
  j["graph"] = graph_summary(g);
  j["matrices"] = {{"adjacency", adjacency_matrix(g).to_json()}, {"transition", transition_matrix(g).to_json()}};
  j["structure"] = structure_fragment(g, opt.max_power, rep);
  j["dynamics"] = dynamics_fragment(g);
  j["ktheory"] = ktheory_fragment(g, rep);
  j["verification"] = verification_fragment(g, opt.level, opt.depth, rep);
  j["oracle_mismatches"] = rep.mismatches;
  j["check_failures"] = rep.failures;
  return rep;
}

/// Short human-readable summary of a full report.
inline std::string render_text(const nlohmann::ordered_json& j) {
  std::ostringstream os;
  const auto& gs = j["graph"];
  os << "graph: " << gs["vertices"] << " vertices, " << gs["edges"] << " edges, " << gs["sinks"] << " sinks, "
     << gs["sources"] << " sources\n";
  const auto& s = j["structure"];
  os << "condition L: " << s["condition_L"] << "\ncondition K: " << s["condition_K"] << "\n";
  if (s.contains("simple")) {
    os << "simple: " << s["simple"].get<std::string>() << " (" << s["simple_reason"].get<std::string>() << ")\n";
    os << "purely infinite: " << s["purely_infinite"] << "\n";
  }
  os << "hereditary saturated sets: " << s["hereditary_saturated_lattice"].size() << "\n";
  os << "C*-dynamical: " << s["cstar_dynamical"] << "\nH multiplicative: " << s["H_multiplicative"] << "\n";
  os << "interaction powers: " << s["interaction_powers"]["powers"].dump() << " (oracles agree: "
     << s["interaction_powers"]["oracles_agree"] << ")\n";
  os << "periodic orbits: " << j["dynamics"]["periodic_orbits"].size() << "\n";
  const auto& k = j["ktheory"];
  os << "K0 = " << k["K0_text"].get<std::string>() << ", K1 = " << k["K1_text"].get<std::string>()
     << " (truncated presentation agrees: " << k["pv_oracle_agrees"] << ")\n";
  for (const auto& a : j["verification"]["axioms"])
    os << "axioms at level " << a["level"] << ": " << (a["passed"].get<bool>() ? "pass" : "FAIL") << "\n";
  os << "Cuntz-Krieger window: " << (j["verification"]["rep_oracle"]["ck_window"].get<bool>() ? "pass" : "FAIL") << "\n";
  for (const auto& m : j["oracle_mismatches"]) os << "ORACLE MISMATCH: " << m.get<std::string>() << "\n";
  for (const auto& m : j["check_failures"]) os << "CHECK FAILED: " << m.get<std::string>() << "\n";
  return os.str();
}

}  // namespace graphint
