#pragma once

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "arp/error.hpp"
#include "arp/simple_type.hpp"
#include "arp/sort.hpp"

namespace arp {

// A sort hierarchy: atoms per simple type, subsort edges (atom <= atom and
// atom <= !atom), disjointness declarations, declared arrow supersorts of
// functional base sorts, and a constant signature with least sorts.
// Immutable after load; all closures are precomputed or derived from the
// precomputed atom closure.
class SortHierarchy {
 public:
  SortHierarchy() = default;

  static SortHierarchy load(std::istream& in) {
    SortHierarchy h;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::vector<std::string> toks = tokenize(line, lineno);
      if (toks.empty()) continue;
      h.directive(toks, lineno);
    }
    h.finalize();
    return h;
  }

  static SortHierarchy load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open hierarchy file: " + path);
    return load(in);
  }

  // -- signature ------------------------------------------------------------

  bool has_type(const std::string& name) const { return types_.count(name) > 0; }
  SimpleType type(const std::string& name) const {
    auto it = types_.find(name);
    if (it == types_.end()) throw LoadError("unknown type: " + name);
    return it->second;
  }
  Sort top(const SimpleType& t) const { return Sort::top(t); }

  bool has_atom(const std::string& name) const { return atoms_.count(name) > 0; }
  Sort atom(const std::string& name) const {
    auto it = atoms_.find(name);
    if (it == atoms_.end()) throw SortError("unknown sort atom: " + name);
    return Sort::atom(name, it->second.type);
  }

  bool has_constant(const std::string& name) const { return consts_.count(name) > 0; }
  const SortSet& sorts_of_constant(const std::string& name) const {
    auto it = consts_.find(name);
    if (it == consts_.end()) throw SortError("undeclared constant: " + name);
    return it->second;
  }
  const std::map<std::string, SortSet>& constants() const { return consts_; }

  // Declared arrow sorts (edge targets and constant declarations) of a type.
  SortSet arrow_sorts(const SimpleType& t) const {
    SortSet out;
    for (const auto& w : arrow_nodes_)
      if (w.type() == t) out.push_back(w);
    return out;
  }

  std::vector<std::string> atom_names(const SimpleType& t) const {
    std::vector<std::string> out;
    for (const auto& [n, info] : atoms_)
      if (info.type == t) out.push_back(n);
    return out;
  }

  // Copy with one more constant declared (problem signatures extend the
  // bundled hierarchy).
  SortHierarchy with_constant(const std::string& name, SortSet least) const {
    SortHierarchy h = *this;
    h.declare_constant(name, std::move(least));
    return h;
  }

  // -- subsumption ----------------------------------------------------------

  bool is_subsort(const Sort& s_in, const Sort& t_in) const {
    if (s_in.type() != t_in.type())
      throw TypeError("is_subsort: type mismatch " + s_in.type().str() + " vs " +
                      t_in.type().str());
    Sort s = resolve(s_in);
    Sort t = resolve(t_in);
    if (s == t) return true;
    if (sort_empty(s)) return true;
    if (t.kind() == Sort::Kind::Top) return true;
    if (t.kind() == Sort::Kind::Inter) {
      for (const auto& m : t.members())
        if (!is_subsort(s, m)) return false;
      return true;
    }
    switch (s.kind()) {
      case Sort::Kind::Inter:
        for (const auto& m : s.members())
          if (is_subsort(m, t)) return true;
        return false;
      case Sort::Kind::Atom: {
        const std::string& a = s.atom_name();
        if (t.kind() == Sort::Kind::Atom) return up(a).count(t.atom_name()) > 0;
        if (t.kind() == Sort::Kind::Neg)
          return neg_entails(a, t.negated_atom().atom_name());
        if (t.kind() == Sort::Kind::Arrow) {
          for (const auto& u : up(a))
            for (const auto& w : atoms_.at(u).arrow_supers)
              if (is_subsort(w, t)) return true;
          return false;
        }
        return false;
      }
      case Sort::Kind::Neg:
        if (t.kind() == Sort::Kind::Neg)
          return up(t.negated_atom().atom_name()).count(s.negated_atom().atom_name()) > 0;
        return false;
      case Sort::Kind::Arrow:
        if (t.kind() == Sort::Kind::Arrow)
          return is_subsort(t.dom(), s.dom()) && is_subsort(s.cod(), t.cod());
        return false;
      case Sort::Kind::Top:
        return false;
    }
    return false;
  }

  bool entails(const SortSet& ss, const Sort& t) const {
    for (const auto& s : ss)
      if (s.type() == t.type() && is_subsort(s, t)) return true;
    return false;
  }

  // -- parallelism queries --------------------------------------------------

  // Minimal sorts above some member of s1 and some member of s2. The top
  // sort always qualifies, so the result is never empty.
  SortSet common_sorts(const SortSet& s1, const SortSet& s2) const {
    SimpleType ty = common_type(s1, s2);
    SortSet common;
    for (const auto& c : candidates(ty))
      if (entails(s1, c) && entails(s2, c)) common.push_back(c);
    Sort t = Sort::top(ty);
    if (common.empty()) return {t};
    SortSet minimal = minimize(common);
    return minimal;
  }

  // Atoms d such that one side entails d and the other entails !d.
  SortSet distinguishing_sorts(const SortSet& s1, const SortSet& s2) const {
    SimpleType ty = common_type(s1, s2);
    SortSet out;
    for (const auto& name : atom_names(ty)) {
      Sort d = atom(name);
      Sort nd = Sort::neg(d);
      if ((entails(s1, d) && entails(s2, nd)) || (entails(s2, d) && entails(s1, nd)))
        out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Conceptual distance: minimum over common sorts g of the edge counts from
  // the least sorts on each side up to g. One unit per subsort edge crossed;
  // the constant-to-sort membership link does not count.
  int distance(const SortSet& s1, const SortSet& s2) const {
    SimpleType ty = common_type(s1, s2);
    auto d1 = reach_costs(s1, ty);
    auto d2 = reach_costs(s2, ty);
    int best = std::numeric_limits<int>::max();
    for (const auto& [node, c1] : d1) {
      auto it = d2.find(node);
      if (it != d2.end()) best = std::min(best, c1 + it->second);
    }
    if (best == std::numeric_limits<int>::max())
      throw SortError("distance: no common sort");
    return best;
  }

  // Resolve !a to its declared complement atom, if any.
  Sort resolve(const Sort& s) const {
    if (s.kind() == Sort::Kind::Neg) {
      auto it = complement_.find(s.negated_atom().atom_name());
      if (it != complement_.end()) return atom(it->second);
    }
    return s;
  }

  bool declared_disjoint(const std::string& a, const std::string& b) const {
    return disjoint_.count({a, b}) > 0 || disjoint_.count({b, a}) > 0;
  }

  std::size_t atom_count() const { return atoms_.size(); }
  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& [name, info] : atoms_)
      n += info.parents.size() + info.neg_parents.size() + info.arrow_supers.size();
    return n;
  }

  void declare_constant(const std::string& name, SortSet least) {
    if (least.empty()) throw LoadError("constant with no sorts: " + name);
    for (const auto& s : least) {
      if (s.type() != least.front().type())
        throw TypeError("constant " + name + ": least sorts of mixed type");
      if (sort_empty(s)) throw LoadError("constant " + name + " declared at empty sort");
    }
    for (std::size_t i = 0; i < least.size(); ++i)
      for (std::size_t j = i + 1; j < least.size(); ++j) {
        const Sort &a = least[i], &b = least[j];
        if (a.kind() == Sort::Kind::Atom && b.kind() == Sort::Kind::Atom &&
            atoms_disjoint(a.atom_name(), b.atom_name()))
          throw LoadError("constant " + name + " declared at disjoint sorts " +
                          a.str() + ", " + b.str());
        if (a.kind() == Sort::Kind::Atom && b.kind() == Sort::Kind::Neg &&
            is_subsort(a, Sort::neg(b)))
          throw LoadError("constant " + name + " declared at contradictory sorts");
      }
    std::sort(least.begin(), least.end());
    least.erase(std::unique(least.begin(), least.end()), least.end());
    consts_[name] = std::move(least);
  }

  // -- sort expression parsing (shared with the problem-file parser) --------

  Sort parse_sort(const std::string& text) const {
    std::vector<std::string> toks = tokenize(text, 0);
    std::size_t pos = 0;
    Sort s = parse_sort_expr(toks, pos, 0);
    if (pos != toks.size()) throw LoadError("trailing tokens in sort: " + text);
    return s;
  }

  Sort parse_sort_expr(const std::vector<std::string>& toks, std::size_t& pos,
                       int lineno) const {
    std::vector<Sort> members;
    members.push_back(parse_sort_primary(toks, pos, lineno));
    while (pos < toks.size() && toks[pos] == "&") {
      ++pos;
      members.push_back(parse_sort_primary(toks, pos, lineno));
    }
    if (members.size() == 1) return members.front();
    return Sort::inter(std::move(members));
  }

  Sort parse_sort_primary(const std::vector<std::string>& toks, std::size_t& pos,
                          int lineno) const {
    if (pos >= toks.size()) throw LoadError(at("missing sort expression", lineno));
    if (toks[pos] == "!") {
      ++pos;
      if (pos >= toks.size() || !is_ident(toks[pos]))
        throw LoadError(at("expected atom after '!'", lineno));
      return Sort::neg(atom(toks[pos++]));
    }
    if (toks[pos] == "(") {
      ++pos;
      Sort dom = parse_sort_expr(toks, pos, lineno);
      expect(toks, pos, "->", lineno);
      Sort cod = parse_sort_expr(toks, pos, lineno);
      expect(toks, pos, ")", lineno);
      return Sort::arrow(std::move(dom), std::move(cod));
    }
    const std::string& name = toks[pos];
    if (!is_ident(name)) throw LoadError(at("expected sort, got '" + name + "'", lineno));
    ++pos;
    if (has_type(name)) return Sort::top(type(name));
    return atom(name);
  }

 private:
  struct AtomInfo {
    SimpleType type = SimpleType::base("?");
    std::set<std::string> parents;
    std::set<std::string> neg_parents;  // a <= !b
    std::vector<Sort> arrow_supers;
  };

  std::map<std::string, SimpleType> types_;
  std::map<std::string, AtomInfo> atoms_;
  std::set<std::pair<std::string, std::string>> disjoint_;
  std::map<std::string, std::string> complement_;
  std::map<std::string, SortSet> consts_;
  std::map<std::string, std::set<std::string>> up_;  // reflexive-transitive closure
  std::vector<Sort> arrow_nodes_;                    // declared arrow sorts

  static std::string at(const std::string& msg, int lineno) {
    return lineno > 0 ? msg + " (line " + std::to_string(lineno) + ")" : msg;
  }

  static bool is_ident(const std::string& t) {
    return !t.empty() && (std::isalpha(static_cast<unsigned char>(t[0])) || t[0] == '_');
  }

  static void expect(const std::vector<std::string>& toks, std::size_t& pos,
                     const std::string& tok, int lineno) {
    if (pos >= toks.size() || toks[pos] != tok)
      throw LoadError(at("expected '" + tok + "'", lineno));
    ++pos;
  }

  static std::vector<std::string> tokenize(const std::string& line, int lineno) {
    std::vector<std::string> toks;
    std::size_t i = 0;
    while (i < line.size()) {
      char c = line[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) ||
                                   line[j] == '_' || line[j] == '\''))
          ++j;
        toks.push_back(line.substr(i, j - i));
        i = j;
      } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
        toks.push_back("->");
        i += 2;
      } else if (c == '<' && i + 1 < line.size() && line[i + 1] == '=') {
        toks.push_back("<=");
        i += 2;
      } else if (c == '(' || c == ')' || c == '!' || c == '&' || c == ':') {
        toks.push_back(std::string(1, c));
        ++i;
      } else {
        throw LoadError(at(std::string("unexpected character '") + c + "'", lineno));
      }
    }
    return toks;
  }

  void directive(const std::vector<std::string>& toks, int lineno) {
    const std::string& head = toks[0];
    std::size_t pos = 1;
    if (head == "type") {
      if (toks.size() != 2) throw LoadError(at("type <name>", lineno));
      if (types_.count(toks[1])) throw LoadError(at("duplicate type " + toks[1], lineno));
      types_.emplace(toks[1], SimpleType::base(toks[1]));
    } else if (head == "sort") {
      if (toks.size() < 4 || toks[2] != ":")
        throw LoadError(at("sort <atom> : <type>", lineno));
      const std::string& name = toks[1];
      if (atoms_.count(name)) throw LoadError(at("duplicate atom " + name, lineno));
      if (types_.count(name)) throw LoadError(at("atom shadows type " + name, lineno));
      pos = 3;
      SimpleType ty = parse_type(toks, pos, lineno);
      if (pos != toks.size()) throw LoadError(at("trailing tokens", lineno));
      AtomInfo info;
      info.type = ty;
      atoms_.emplace(name, std::move(info));
    } else if (head == "edge") {
      if (toks.size() < 4 || !is_ident(toks[1]) || toks[2] != "<=")
        throw LoadError(at("edge <atom> <= <sort>", lineno));
      auto it = atoms_.find(toks[1]);
      if (it == atoms_.end()) throw LoadError(at("unknown atom " + toks[1], lineno));
      pos = 3;
      Sort super = parse_sort_expr(toks, pos, lineno);
      if (pos != toks.size()) throw LoadError(at("trailing tokens", lineno));
      switch (super.kind()) {
        case Sort::Kind::Atom:
          if (super.type() != it->second.type)
            throw TypeError(at("edge across types", lineno));
          it->second.parents.insert(super.atom_name());
          break;
        case Sort::Kind::Neg:
          if (super.type() != it->second.type)
            throw TypeError(at("edge across types", lineno));
          it->second.neg_parents.insert(super.negated_atom().atom_name());
          break;
        case Sort::Kind::Arrow:
          if (super.type() != it->second.type)
            throw TypeError(at("arrow supersort of wrong type", lineno));
          it->second.arrow_supers.push_back(super);
          register_arrow(super);
          break;
        default:
          throw LoadError(at("unsupported edge target", lineno));
      }
    } else if (head == "disjoint") {
      if (toks.size() < 3) throw LoadError(at("disjoint <atom> <atom>", lineno));
      for (int k = 1; k <= 2; ++k)
        if (!atoms_.count(toks[k])) throw LoadError(at("unknown atom " + toks[k], lineno));
      if (atoms_.at(toks[1]).type != atoms_.at(toks[2]).type)
        throw TypeError(at("disjoint across types", lineno));
      disjoint_.insert({toks[1], toks[2]});
      if (toks.size() == 4 && toks[3] == "complementary") {
        complement_[toks[1]] = toks[2];
        complement_[toks[2]] = toks[1];
      } else if (toks.size() > 3) {
        throw LoadError(at("disjoint <a> <b> [complementary]", lineno));
      }
    } else if (head == "const") {
      if (toks.size() < 4 || toks[2] != ":")
        throw LoadError(at("const <name> : <sort> { & <sort> }", lineno));
      pos = 3;
      SortSet least;
      least.push_back(parse_sort_primary_registering(toks, pos, lineno));
      while (pos < toks.size() && toks[pos] == "&") {
        ++pos;
        least.push_back(parse_sort_primary_registering(toks, pos, lineno));
      }
      if (pos != toks.size()) throw LoadError(at("trailing tokens", lineno));
      if (consts_.count(toks[1]))
        throw LoadError(at("duplicate constant " + toks[1], lineno));
      pending_consts_.emplace_back(toks[1], std::move(least));
    } else {
      throw LoadError(at("unknown directive '" + head + "'", lineno));
    }
  }

  Sort parse_sort_primary_registering(const std::vector<std::string>& toks,
                                      std::size_t& pos, int lineno) {
    Sort s = parse_sort_primary(toks, pos, lineno);
    if (s.kind() == Sort::Kind::Arrow) register_arrow(s);
    return s;
  }

  SimpleType parse_type(const std::vector<std::string>& toks, std::size_t& pos,
                        int lineno) const {
    if (pos >= toks.size()) throw LoadError(at("missing type", lineno));
    if (toks[pos] == "(") {
      ++pos;
      SimpleType dom = parse_type(toks, pos, lineno);
      expect(toks, pos, "->", lineno);
      SimpleType cod = parse_type(toks, pos, lineno);
      expect(toks, pos, ")", lineno);
      return SimpleType::arrow(dom, cod);
    }
    auto it = types_.find(toks[pos]);
    if (it == types_.end()) throw LoadError(at("unknown type " + toks[pos], lineno));
    ++pos;
    return it->second;
  }

  void register_arrow(const Sort& s) {
    for (const auto& w : arrow_nodes_)
      if (w == s) return;
    arrow_nodes_.push_back(s);
  }

  void finalize() {
    // reflexive-transitive closure of the atom order; reject cycles
    for (const auto& [name, info] : atoms_) {
      for (const auto& p : info.parents)
        if (!atoms_.count(p)) throw LoadError("unknown atom in edge: " + p);
      for (const auto& p : info.neg_parents)
        if (!atoms_.count(p)) throw LoadError("unknown atom in edge: !" + p);
    }
    for (const auto& [name, info] : atoms_) {
      std::set<std::string> seen;
      std::deque<std::string> work{name};
      while (!work.empty()) {
        std::string cur = work.front();
        work.pop_front();
        if (!seen.insert(cur).second) continue;
        const AtomInfo& ci = atoms_.at(cur);
        if (ci.type != info.type) throw TypeError("edge across types at " + cur);
        for (const auto& p : ci.parents) work.push_back(p);
      }
      up_[name] = std::move(seen);
    }
    for (const auto& [a, ua] : up_)
      for (const auto& b : ua)
        if (a != b && up_.at(b).count(a))
          throw LoadError("cycle in sort hierarchy through " + a + " and " + b);
    // declared-disjoint atoms may not share a subsort atom
    for (const auto& [a, b] : disjoint_)
      for (const auto& [z, uz] : up_)
        if (uz.count(a) && uz.count(b))
          throw LoadError("disjointness contradiction: " + z + " below both " + a +
                          " and " + b);
    for (auto& [name, least] : pending_consts_) declare_constant(name, std::move(least));
    pending_consts_.clear();
  }

  const std::set<std::string>& up(const std::string& a) const {
    auto it = up_.find(a);
    if (it == up_.end()) throw SortError("unknown sort atom: " + a);
    return it->second;
  }

  // a <= !b ?
  bool neg_entails(const std::string& a, const std::string& b) const {
    for (const auto& u : up(a)) {
      for (const auto& v : atoms_.at(u).neg_parents)
        if (up(b).count(v)) return true;
    }
    return atoms_disjoint_upward(a, b);
  }

  bool atoms_disjoint(const std::string& a, const std::string& b) const {
    return atoms_disjoint_upward(a, b);
  }

  bool atoms_disjoint_upward(const std::string& a, const std::string& b) const {
    for (const auto& x : up(a))
      for (const auto& y : up(b))
        if (declared_disjoint(x, y)) return true;
    return false;
  }

  bool sort_empty(const Sort& s) const {
    if (s.syntactically_empty()) return true;
    if (s.kind() != Sort::Kind::Inter) return false;
    const auto& ms = s.members();
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t j = i + 1; j < ms.size(); ++j) {
        const Sort &x = ms[i], &y = ms[j];
        if (x.kind() == Sort::Kind::Atom && y.kind() == Sort::Kind::Atom &&
            atoms_disjoint(x.atom_name(), y.atom_name()))
          return true;
        // a & !b with a <= b is empty
        if (x.kind() == Sort::Kind::Atom && y.kind() == Sort::Kind::Neg &&
            up(x.atom_name()).count(y.negated_atom().atom_name()))
          return true;
        if (y.kind() == Sort::Kind::Atom && x.kind() == Sort::Kind::Neg &&
            up(y.atom_name()).count(x.negated_atom().atom_name()))
          return true;
      }
    return false;
  }

  SimpleType common_type(const SortSet& s1, const SortSet& s2) const {
    if (s1.empty() || s2.empty()) throw SortError("empty sort set");
    SimpleType ty = s1.front().type();
    for (const auto& s : s1)
      if (s.type() != ty) throw TypeError("sort set of mixed type");
    for (const auto& s : s2)
      if (s.type() != ty) throw TypeError("sort sets of different types");
    return ty;
  }

  SortSet candidates(const SimpleType& ty) const {
    SortSet out;
    for (const auto& name : atom_names(ty)) out.push_back(atom(name));
    for (const auto& w : arrow_nodes_)
      if (w.type() == ty) out.push_back(w);
    out.push_back(Sort::top(ty));
    return out;
  }

  SortSet minimize(const SortSet& in) const {
    SortSet out;
    for (const auto& c : in) {
      bool minimal = true;
      for (const auto& o : in) {
        if (o == c) continue;
        if (is_subsort(o, c) && !is_subsort(c, o)) {
          minimal = false;
          break;
        }
      }
      if (minimal) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Shortest upward edge counts from a least-sort set to every node of the
  // per-type sort graph. Node keys: "a:<atom>", "w:<arrow>", "T".
  std::map<std::string, int> reach_costs(const SortSet& least, const SimpleType& ty) const {
    // graph edges
    std::map<std::string, std::vector<std::string>> succ;
    auto akey = [](const std::string& n) { return "a:" + n; };
    auto wkey = [](const Sort& w) { return "w:" + w.str(); };
    std::vector<Sort> warrows;
    for (const auto& w : arrow_nodes_)
      if (w.type() == ty) warrows.push_back(w);
    for (const auto& name : atom_names(ty)) {
      auto& info = atoms_.at(name);
      auto& edges = succ[akey(name)];
      for (const auto& p : info.parents) edges.push_back(akey(p));
      for (const auto& w : info.arrow_supers) edges.push_back(wkey(w));
      if (edges.empty()) edges.push_back("T");
    }
    for (const auto& w : warrows) {
      auto& edges = succ[wkey(w)];
      bool covered = false;
      for (const auto& v : warrows) {
        if (v == w || !is_subsort(w, v) || is_subsort(v, w)) continue;
        // only cover edges: skip if a third arrow node sits strictly between
        bool cover = true;
        for (const auto& u : warrows) {
          if (u == w || u == v) continue;
          if (is_subsort(w, u) && is_subsort(u, v) && !is_subsort(u, w) &&
              !is_subsort(v, u)) {
            cover = false;
            break;
          }
        }
        if (cover) {
          edges.push_back(wkey(v));
          covered = true;
        }
      }
      if (!covered) edges.push_back("T");
    }
    succ["T"];  // ensure node exists

    std::map<std::string, int> dist;
    std::deque<std::string> work;
    auto start = [&](const std::string& key, int c) {
      auto it = dist.find(key);
      if (it == dist.end() || it->second > c) {
        dist[key] = c;
        work.push_back(key);
      }
    };
    for (const auto& s0 : least) {
      Sort s = resolve(s0);
      switch (s.kind()) {
        case Sort::Kind::Atom:
          start(akey(s.atom_name()), 0);
          break;
        case Sort::Kind::Inter:
          for (const auto& m : s.members())
            if (m.kind() == Sort::Kind::Atom) start(akey(m.atom_name()), 0);
          break;
        case Sort::Kind::Arrow: {
          bool found = false;
          for (const auto& w : warrows)
            if (w == s) {
              start(wkey(w), 0);
              found = true;
            }
          if (!found) {
            for (const auto& w : warrows)
              if (is_subsort(s, w)) start(wkey(w), 1);
            start("T", 1);
          }
          break;
        }
        case Sort::Kind::Top:
          start("T", 0);
          break;
        case Sort::Kind::Neg:
          break;  // no positive upward path
      }
    }
    // BFS (unit edge weights)
    while (!work.empty()) {
      std::string cur = work.front();
      work.pop_front();
      int c = dist.at(cur);
      auto it = succ.find(cur);
      if (it == succ.end()) continue;
      for (const auto& nxt : it->second) start(nxt, c + 1);
    }
    return dist;
  }

  std::vector<std::pair<std::string, SortSet>> pending_consts_;
};

}  // namespace arp
