#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "arp/error.hpp"
#include "arp/hierarchy.hpp"
#include "arp/infer.hpp"
#include "arp/parser.hpp"
#include "arp/pcalc.hpp"
#include "arp/term.hpp"
#include "arp/unify.hpp"

namespace arp {

// A reconstruction problem: a sort hierarchy, free variables to solve for,
// the parallelism equations, optional reading templates, and search options.
struct Problem {
  SortHierarchy hierarchy;
  std::map<std::string, Sort> vars;
  std::vector<Equation> equations;
  std::vector<std::string> reading_sources;
  std::vector<TermPtr> readings;
  SolveOptions options;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::string problem_dir(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

}  // namespace detail

// Sectioned problem format:
//   hierarchy: <path relative to the problem file>
//   signature:            var/const declarations
//   equations:            LHS ==|=s|=p RHS, one per line
//   readings:             terms built from the problem variables
//   options:              key = value search settings
inline Problem parse_problem(std::istream& in, const std::string& base_dir) {
  Problem p;
  bool have_hierarchy = false;
  std::string section;
  std::string line;
  int lineno = 0;
  std::vector<std::pair<std::string, int>> equation_lines, reading_lines;

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string t = detail::trim(line);
    if (t.empty()) continue;

    if (t.rfind("hierarchy:", 0) == 0) {
      std::string rel = detail::trim(t.substr(10));
      if (rel.empty()) throw ParseError("hierarchy: needs a path", lineno, 1);
      std::string path = rel[0] == '/' ? rel : base_dir + "/" + rel;
      p.hierarchy = SortHierarchy::load_file(path);
      have_hierarchy = true;
      section.clear();
      continue;
    }
    if (t == "signature:" || t == "equations:" || t == "readings:" || t == "options:") {
      section = t.substr(0, t.size() - 1);
      continue;
    }
    if (section.empty())
      throw ParseError("directive outside any section: " + t, lineno, 1);
    if (!have_hierarchy)
      throw ParseError("hierarchy: must come before " + section + " entries", lineno, 1);

    if (section == "signature") {
      std::istringstream ls(t);
      std::string kw, name, colon;
      ls >> kw >> name >> colon;
      std::string rest;
      std::getline(ls, rest);
      if (colon != ":" || name.empty())
        throw ParseError("expected 'var NAME : SORT' or 'const NAME : SORT'", lineno, 1);
      if (kw == "var") {
        p.vars.insert_or_assign(name, p.hierarchy.parse_sort(detail::trim(rest)));
      } else if (kw == "const") {
        // "Sort1 & Sort2" at top level declares a set of least sorts
        SortSet least;
        std::string expr = detail::trim(rest);
        std::size_t depth = 0, start = 0;
        for (std::size_t i = 0; i <= expr.size(); ++i) {
          if (i < expr.size() && expr[i] == '(') ++depth;
          if (i < expr.size() && expr[i] == ')') --depth;
          if (i == expr.size() || (expr[i] == '&' && depth == 0)) {
            std::string part = detail::trim(expr.substr(start, i - start));
            if (part.empty()) throw ParseError("empty sort in const", lineno, 1);
            least.push_back(p.hierarchy.parse_sort(part));
            start = i + 1;
          }
        }
        p.hierarchy.declare_constant(name, std::move(least));
      } else {
        throw ParseError("unknown signature entry: " + kw, lineno, 1);
      }
    } else if (section == "equations") {
      equation_lines.push_back({t, lineno});
    } else if (section == "readings") {
      reading_lines.push_back({t, lineno});
    } else {
      auto eq = t.find('=');
      if (eq == std::string::npos)
        throw ParseError("expected 'key = value'", lineno, 1);
      std::string key = detail::trim(t.substr(0, eq));
      std::string val = detail::trim(t.substr(eq + 1));
      if (key == "copying_constraint")
        p.options.copying_constraint = val == "on" || val == "true";
      else if (key == "primary_color")
        p.options.primary_color = val;
      else if (key == "threshold")
        p.options.cost_threshold = std::stoi(val);
      else if (key == "max_solutions")
        p.options.max_solutions = static_cast<std::size_t>(std::stoul(val));
      else if (key == "max_depth")
        p.options.max_depth = std::stoi(val);
      else
        throw ParseError("unknown option: " + key, lineno, 1);
    }
  }
  if (!have_hierarchy) throw ParseError("missing hierarchy: directive", lineno, 1);

  TermParser tp(p.hierarchy, p.vars);
  for (const auto& [src, ln] : equation_lines) {
    Rel rel;
    std::size_t at, w;
    if ((at = src.find(" =p ")) != std::string::npos) {
      rel = Rel::CPAR;
      w = 4;
    } else if ((at = src.find(" =s ")) != std::string::npos) {
      rel = Rel::SIM;
      w = 4;
    } else if ((at = src.find(" == ")) != std::string::npos) {
      rel = Rel::EQ;
      w = 4;
    } else {
      throw ParseError("equation needs ==, =s or =p: " + src, ln, 1);
    }
    TermPtr l = tp.parse(src.substr(0, at), ln);
    TermPtr r = tp.parse(src.substr(at + w), ln);
    // reject ill-sorted inputs up front
    infer_sorts(p.hierarchy, l);
    infer_sorts(p.hierarchy, r);
    p.equations.push_back(mk_equation(std::move(l), std::move(r), rel));
  }
  for (const auto& [src, ln] : reading_lines) {
    p.reading_sources.push_back(src);
    p.readings.push_back(tp.parse(src, ln));
  }
  if (p.equations.empty()) throw ParseError("no equations given", lineno, 1);
  return p;
}

inline Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open problem file: " + path);
  return parse_problem(in, detail::problem_dir(path));
}

}  // namespace arp
