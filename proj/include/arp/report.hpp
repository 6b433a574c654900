#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "arp/pcalc.hpp"
#include "arp/problem.hpp"
#include "arp/unify.hpp"

namespace arp {

struct ResultReport {
  std::vector<Solution> solutions;
  SolveStats stats;
  std::vector<std::string> trace;
};

inline std::string render_solution(const Solution& s, std::size_t index) {
  std::string out;
  out += "solution " + std::to_string(index + 1) + " (cost " +
         std::to_string(s.cost) + ")\n";
  for (const auto& [k, v] : s.bindings) out += "  " + k + " := " + term_str(v) + "\n";
  for (const auto& [k, v] : s.color_bindings) out += "  " + k + " := " + v.str() + "\n";
  if (!s.readings.empty()) {
    out += "  readings:\n";
    for (const auto& r : s.readings) out += "    " + term_str(r) + "\n";
  }
  if (!s.abducibles.empty()) {
    out += "  assumptions:\n";
    for (const auto& a : s.abducibles) out += "    " + a.str() + "\n";
  }
  for (const auto& e : s.residual) out += "  residual: " + e.str() + "\n";
  return out;
}

inline std::string render_report(const ResultReport& r, bool with_trace) {
  std::string out;
  if (r.solutions.empty()) {
    out += "no solutions\n";
  } else {
    for (std::size_t i = 0; i < r.solutions.size(); ++i)
      out += render_solution(r.solutions[i], i);
  }
  out += "explored " + std::to_string(r.stats.states_explored) + " states, pruned " +
         std::to_string(r.stats.branches_pruned) + "\n";
  if (r.stats.depth_limit_hit) out += "note: depth limit reached, search incomplete\n";
  if (with_trace) {
    out += "trace:\n";
    for (const auto& line : r.trace) out += "  " + line + "\n";
  }
  return out;
}

inline nlohmann::json solution_json(const Solution& s) {
  nlohmann::json j;
  j["cost"] = s.cost;
  j["bindings"] = nlohmann::json::object();
  for (const auto& [k, v] : s.bindings) j["bindings"][k] = term_str(v);
  j["color_bindings"] = nlohmann::json::object();
  for (const auto& [k, v] : s.color_bindings) j["color_bindings"][k] = v.str();
  j["readings"] = nlohmann::json::array();
  for (const auto& r : s.readings) j["readings"].push_back(term_str(r));
  j["assumptions"] = nlohmann::json::array();
  for (const auto& a : s.abducibles) {
    nlohmann::json ja;
    ja["kind"] = a.kind == Abducible::Kind::JustS ? "just-s" : "just-c";
    ja["left"] = term_str(a.left);
    ja["right"] = term_str(a.right);
    ja["common"] = sorts_str(a.common);
    if (!a.distinguishing.empty()) ja["distinguishing"] = sorts_str(a.distinguishing);
    ja["cost"] = a.cost;
    j["assumptions"].push_back(ja);
  }
  j["residual"] = nlohmann::json::array();
  for (const auto& e : s.residual) j["residual"].push_back(e.str());
  return j;
}

inline nlohmann::json report_json(const ResultReport& r, bool with_trace) {
  nlohmann::json j;
  j["solutions"] = nlohmann::json::array();
  for (const auto& s : r.solutions) j["solutions"].push_back(solution_json(s));
  j["stats"]["states_explored"] = r.stats.states_explored;
  j["stats"]["branches_pruned"] = r.stats.branches_pruned;
  j["stats"]["depth_limit_hit"] = r.stats.depth_limit_hit;
  if (with_trace) j["trace"] = r.trace;
  return j;
}

inline ResultReport run_problem(const Problem& p) {
  ResultReport r;
  Solver solver(p.hierarchy, p.options);
  r.solutions = solver.solve(p.equations, p.vars, p.readings);
  r.stats = solver.stats();
  r.trace = solver.trace();
  return r;
}

}  // namespace arp
