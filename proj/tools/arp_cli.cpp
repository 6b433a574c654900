#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "arp/certificate.hpp"
#include "arp/error.hpp"
#include "arp/hierarchy.hpp"
#include "arp/pcalc.hpp"
#include "arp/problem.hpp"
#include "arp/report.hpp"
#include "arp/unify.hpp"

namespace {

struct SolveFlags {
  std::string path;
  int threshold = -1;
  int max_solutions = -1;
  int max_depth = -1;
  bool trace = false;
  bool json = false;
  bool no_copying = false;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("problem", f.path, "problem file")->required();
  cmd->add_option("--threshold", f.threshold, "cost threshold");
  cmd->add_option("--max-solutions", f.max_solutions, "maximum solutions reported");
  cmd->add_option("--max-depth", f.max_depth, "maximum rule applications per branch");
  cmd->add_flag("--trace", f.trace, "print one line per rule application");
  cmd->add_flag("--json", f.json, "machine-readable output");
  cmd->add_flag("--no-copying-constraint", f.no_copying,
                "allow non-strict imitation at any head color");
}

arp::Problem load_with_flags(const SolveFlags& f) {
  arp::Problem p = arp::load_problem(f.path);
  if (f.threshold >= 0) p.options.cost_threshold = f.threshold;
  if (f.max_solutions >= 0) p.options.max_solutions = static_cast<std::size_t>(f.max_solutions);
  if (f.max_depth >= 0) p.options.max_depth = f.max_depth;
  if (f.no_copying) p.options.copying_constraint = false;
  return p;
}

int cmd_solve(const SolveFlags& f) {
  arp::Problem p = load_with_flags(f);
  arp::ResultReport r = arp::run_problem(p);
  if (f.json)
    std::cout << arp::report_json(r, f.trace).dump(2) << "\n";
  else
    std::cout << arp::render_report(r, f.trace);
  return r.solutions.empty() ? 1 : 0;
}

int cmd_check(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw arp::LoadError("cannot open file: " + path);
  bool is_problem = false;
  for (std::string line; std::getline(probe, line);) {
    std::size_t b = line.find_first_not_of(" \t");
    if (b != std::string::npos && line.compare(b, 10, "hierarchy:") == 0) {
      is_problem = true;
      break;
    }
  }
  probe.close();
  if (is_problem) {
    arp::Problem p = arp::load_problem(path);
    std::cout << "OK: " << p.equations.size() << " equations, " << p.vars.size()
              << " variables, " << p.hierarchy.atom_count() << " atoms\n";
  } else {
    arp::SortHierarchy h = arp::SortHierarchy::load_file(path);
    std::cout << "OK: " << h.atom_count() << " atoms, " << h.edge_count()
              << " edges, " << h.constants().size() << " constants\n";
  }
  return 0;
}

int cmd_explain(const SolveFlags& f, int index) {
  arp::Problem p = load_with_flags(f);
  arp::ResultReport r = arp::run_problem(p);
  if (index < 1 || static_cast<std::size_t>(index) > r.solutions.size())
    throw arp::Error("solution index " + std::to_string(index) + " out of range (" +
                     std::to_string(r.solutions.size()) + " solutions)");
  const arp::Solution& s = r.solutions[index - 1];
  std::cout << arp::render_solution(s, index - 1);
  std::cout << "rule applications:\n";
  for (const auto& line : s.rule_log) std::cout << "  " << line << "\n";

  // Derivation trees for the parallelism equations, restricted
  // to the assumptions this solution certifies.
  std::string pool;
  for (const auto& a : s.abducibles) pool += a.str() + "\n";
  for (const auto& e : p.equations) {
    if (e.rel == arp::Rel::EQ) continue;
    arp::Equation inst{s.subst.apply(e.lhs), s.subst.apply(e.rhs), e.rel};
    arp::DeriveOptions dopts;
    dopts.cost_threshold = p.options.cost_threshold;
    for (const auto& d : arp::derive(p.hierarchy, inst, dopts)) {
      bool all = true;
      for (const auto& a : d.abducibles)
        if (pool.find(a.str()) == std::string::npos) all = false;
      if (!all) continue;
      std::string tree;
      arp::render_derivation(d.root, tree);
      std::cout << "derivation (cost " << d.cost << "):\n" << tree;
      break;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"abductive reconstruction of parallelism and ellipsis"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  CLI::App* solve = app.add_subcommand("solve", "solve a reconstruction problem");
  add_solve_flags(solve, solve_flags);

  std::string check_path;
  CLI::App* check = app.add_subcommand("check", "validate a hierarchy or problem file");
  check->add_option("file", check_path, "hierarchy (.srt) or problem (.arp) file")
      ->required();

  SolveFlags explain_flags;
  int solution_index = 1;
  CLI::App* explain = app.add_subcommand("explain", "show the derivation of a solution");
  add_solve_flags(explain, explain_flags);
  explain->add_option("--solution", solution_index, "1-based solution index");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(solve_flags);
    if (check->parsed()) return cmd_check(check_path);
    if (explain->parsed()) return cmd_explain(explain_flags, solution_index);
  } catch (const arp::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const arp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
