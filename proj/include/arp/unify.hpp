#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arp/hierarchy.hpp"
#include "arp/infer.hpp"
#include "arp/normalize.hpp"
#include "arp/pcalc.hpp"
#include "arp/subst.hpp"
#include "arp/term.hpp"

namespace arp {

struct SolveOptions {
  bool copying_constraint = true;
  std::string primary_color = "pe";
  int cost_threshold = 10;
  std::size_t max_solutions = 5;
  int max_depth = 12;
};

struct SolveStats {
  long states_explored = 0;
  long branches_pruned = 0;
  bool depth_limit_hit = false;
};

struct ColorEq {
  Color a, b;
  std::string str() const { return a.str() + " = " + b.str(); }
};

// Canonical partial instantiation of a flex head.
struct GeneralBinding {
  enum class Kind { Imitation, Projection, ContrastiveImitation, SimilarImitation };
  Kind kind;
  std::string head;
  TermPtr binding;

  std::string kind_str() const {
    switch (kind) {
      case Kind::Imitation:
        return "imitate";
      case Kind::Projection:
        return "project";
      case Kind::ContrastiveImitation:
        return "imitate-contrastive";
      case Kind::SimilarImitation:
        return "imitate-similar";
    }
    return "?";
  }
};

struct Solution {
  Substitution subst;  // full composed substitution
  std::map<std::string, TermPtr> bindings;  // problem variables only, key -> term
  std::map<std::string, Color> color_bindings;
  std::vector<Abducible> abducibles;
  std::vector<Equation> residual;  // flex/flex constraints left unsolved
  int cost = 0;
  std::vector<std::string> rule_log;
  std::vector<TermPtr> readings;

  std::string subst_key() const {
    std::string s;
    for (const auto& [k, v] : bindings) s += k + " := " + canon_str(v) + "; ";
    for (const auto& [k, v] : color_bindings) s += k + " := " + v.str() + "; ";
    return s;
  }
  std::string erasure_key() const {
    std::string s;
    for (const auto& [k, v] : bindings)
      s += k + " := " + canon_str(erase_colors(v)) + "; ";
    return s;
  }
  std::string abducible_key() const {
    std::vector<std::string> parts;
    for (const auto& a : abducibles) parts.push_back(a.str());
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (const auto& p : parts) s += p + "\n";
    return s;
  }
};

namespace detail {

struct State {
  std::vector<Equation> eqs;
  std::vector<ColorEq> ceqs;
  Substitution subst;
  std::vector<Abducible> abducibles;
  std::set<std::string> registry;  // fresh constants from abstraction rules
  int cost = 0;
  int depth = 0;
  long seq = 0;
  std::vector<std::string> log;
};

struct StateOrder {
  bool operator()(const State& a, const State& b) const {
    if (a.cost != b.cost) return a.cost > b.cost;  // min-heap on cost
    return a.seq > b.seq;
  }
};

inline bool flex_headed(const TermPtr& t) {
  TermPtr head;
  std::vector<TermPtr> args;
  spine(t, head, args);
  return head->kind == Term::Kind::Var;
}

}  // namespace detail

// Abductive Reconstruction of Parallelism: sorted colored higher-order
// pre-unification with =s/=p equations, abduction at atomic pairs, and
// cost-bounded best-first search.
class Solver {
 public:
  Solver(const SortHierarchy& h, SolveOptions opts) : h_(h), opts_(std::move(opts)) {}

  std::vector<Solution> solve(const std::vector<Equation>& eqs,
                              const std::map<std::string, Sort>& problem_vars,
                              const std::vector<TermPtr>& readings = {}) {
    stats_ = {};
    trace_.clear();
    fresh_const_ = fresh_var_ = fresh_color_ = 0;
    seq_ = 0;

    detail::State init;
    for (const auto& e : eqs)
      init.eqs.push_back(Equation{normalize(e.lhs), normalize(e.rhs), e.rel});

    std::priority_queue<detail::State, std::vector<detail::State>, detail::StateOrder> pq;
    pq.push(std::move(init));
    std::vector<Solution> found;

    while (!pq.empty()) {
      detail::State st = pq.top();
      pq.pop();
      ++stats_.states_explored;
      if (!simplify(st)) {
        ++stats_.branches_pruned;
        continue;
      }
      if (st.cost > opts_.cost_threshold) {
        ++stats_.branches_pruned;
        continue;
      }
      int sel = select_equation(st);
      if (sel < 0) {
        emit(st, problem_vars, readings, found);
        continue;
      }
      if (st.depth >= opts_.max_depth) {
        stats_.depth_limit_hit = true;
        ++stats_.branches_pruned;
        continue;
      }
      for (auto& succ : expand(st, sel)) {
        succ.seq = ++seq_;
        pq.push(std::move(succ));
      }
    }

    std::stable_sort(found.begin(), found.end(), [](const Solution& a, const Solution& b) {
      if (a.cost != b.cost) return a.cost < b.cost;
      if (a.subst_key() != b.subst_key()) return a.subst_key() < b.subst_key();
      return a.abducible_key() < b.abducible_key();
    });
    // different rule orders and =s/=p variants of the same reading collapse
    // onto their cheapest representative
    std::vector<Solution> out;
    std::set<std::string> seen;
    for (auto& s : found)
      if (seen.insert(s.erasure_key()).second) out.push_back(std::move(s));
    if (out.size() > opts_.max_solutions) out.resize(opts_.max_solutions);
    return out;
  }

  const SolveStats& stats() const { return stats_; }
  const std::vector<std::string>& trace() const { return trace_; }

  // -- general bindings (exposed for tests and tracing) ----------------------

  std::vector<GeneralBinding> general_bindings(const TermPtr& flex_head,
                                               std::size_t nargs,
                                               const TermPtr& rigid_head, Rel rel,
                                               const std::set<std::string>& registry) {
    std::vector<GeneralBinding> out;
    // expand the flex variable's sort into nargs domains plus a result sort
    std::vector<std::pair<SortSet, Sort>> shapes;  // (domains, result)
    collect_shapes(flex_head->sorts.front(), nargs, {}, shapes);
    OptColor c = flex_head->color;
    OptColor rigid_color =
        rigid_head->kind == Term::Kind::Const || rigid_head->kind == Term::Kind::Var
            ? rigid_head->color
            : OptColor{};

    for (const auto& [doms, alpha] : shapes) {
      // projections
      for (std::size_t i = 0; i < doms.size(); ++i) {
        for (const auto& [gammas, delta] : chains_to_type(SortSet{doms[i]}, alpha.type())) {
          if (!h_.is_subsort(delta, alpha)) continue;
          out.push_back(make_binding(GeneralBinding::Kind::Projection,
                                     "z$" + std::to_string(i + 1), doms, i, {},
                                     gammas, c, {}));
        }
      }
      // imitations
      std::vector<std::pair<std::string, GeneralBinding::Kind>> heads;
      bool rigid_is_const =
          rigid_head->kind == Term::Kind::Const && !registry.count(rigid_head->name);
      if (rigid_is_const)
        heads.emplace_back(rigid_head->name, GeneralBinding::Kind::Imitation);
      if (rel != Rel::EQ && rigid_is_const && gate_open(rigid_color)) {
        // =p decomposition may relate the heads by =p or only =s, so similar
        // heads are candidates for both relations
        for (const auto& [k, least] : h_.constants()) {
          if (k == rigid_head->name) continue;
          if (least.front().type() != rigid_head->type) continue;
          bool contrastive =
              rel == Rel::CPAR &&
              !h_.distinguishing_sorts(least, rigid_head->sorts).empty();
          heads.emplace_back(k, contrastive
                                    ? GeneralBinding::Kind::ContrastiveImitation
                                    : GeneralBinding::Kind::SimilarImitation);
        }
      }
      for (const auto& [head, kind] : heads) {
        const SortSet& least = h_.sorts_of_constant(head);
        for (const auto& [gammas, delta] : chains_to_type(least, alpha.type())) {
          if (!h_.is_subsort(delta, alpha)) continue;
          OptColor head_color;
          if (c && !c->is_var)
            head_color = c;  // e_i = d = c when the flex color is a constant
          else
            head_color = rigid_color;
          out.push_back(make_binding(kind, head, doms, -1, least, gammas, c, head_color));
        }
      }
    }
    // deterministic order, no duplicates
    std::stable_sort(out.begin(), out.end(), [](const GeneralBinding& a,
                                                const GeneralBinding& b) {
      return canon_str(a.binding) < canon_str(b.binding);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const GeneralBinding& a, const GeneralBinding& b) {
                            return alpha_equal(a.binding, b.binding);
                          }),
              out.end());
    return out;
  }

 private:
  const SortHierarchy& h_;
  SolveOptions opts_;
  SolveStats stats_;
  std::vector<std::string> trace_;
  int fresh_const_ = 0, fresh_var_ = 0, fresh_color_ = 0;
  long seq_ = 0;

  bool gate_open(const OptColor& rigid_color) const {
    if (!opts_.copying_constraint) return true;
    return rigid_color && *rigid_color == Color::constant(opts_.primary_color);
  }

  // All ways to read `sort` as dom_1 -> ... -> dom_n -> result.
  void collect_shapes(const Sort& sort, std::size_t n, SortSet doms,
                      std::vector<std::pair<SortSet, Sort>>& out) const {
    if (n == 0) {
      out.push_back({doms, sort});
      return;
    }
    for (const auto& f : functional_sorts(h_, {sort})) {
      SortSet next = doms;
      next.push_back(f.dom());
      collect_shapes(f.cod(), n - 1, std::move(next), out);
    }
  }

  // All argument-sort chains from a least-sort set down to a given simple
  // type: (gamma_1..gamma_l, delta) with delta of simple type `ty`.
  std::vector<std::pair<SortSet, Sort>> chains_to_type(const SortSet& least,
                                                       const SimpleType& ty) const {
    std::vector<std::pair<SortSet, Sort>> out;
    for (const auto& s : least) {
      if (s.type() == ty) out.push_back({{}, s});
    }
    if (least.front().type() == ty) return dedupe_chains(std::move(out));
    for (const auto& f : functional_sorts(h_, least)) {
      for (auto& [rest, delta] : chains_to_type({f.cod()}, ty)) {
        SortSet gammas{f.dom()};
        gammas.insert(gammas.end(), rest.begin(), rest.end());
        out.push_back({std::move(gammas), delta});
      }
    }
    return dedupe_chains(std::move(out));
  }

  static std::vector<std::pair<SortSet, Sort>> dedupe_chains(
      std::vector<std::pair<SortSet, Sort>> in) {
    std::sort(in.begin(), in.end(),
              [](const auto& a, const auto& b) {
                return sorts_str(a.first) + "|" + a.second.str() <
                       sorts_str(b.first) + "|" + b.second.str();
              });
    in.erase(std::unique(in.begin(), in.end(),
                         [](const auto& a, const auto& b) {
                           return a.first == b.first && a.second == b.second;
                         }),
             in.end());
    return in;
  }

  GeneralBinding make_binding(GeneralBinding::Kind kind, const std::string& head,
                              const SortSet& doms, int proj_index,
                              const SortSet& head_least, const SortSet& gammas,
                              const OptColor& flex_color, const OptColor& head_color) {
    std::vector<std::string> znames;
    for (std::size_t i = 0; i < doms.size(); ++i)
      znames.push_back("z$" + std::to_string(i + 1));
    TermPtr body_head;
    if (proj_index >= 0) {
      body_head = mk_bound(znames[proj_index], doms[proj_index]);
    } else {
      body_head = mk_const(head, head_least, head_color);
    }
    TermPtr body = body_head;
    for (const auto& g : gammas) {
      Sort hs = g;
      for (auto it = doms.rbegin(); it != doms.rend(); ++it) hs = Sort::arrow(*it, hs);
      OptColor hc;
      if (flex_color && !flex_color->is_var)
        hc = flex_color;
      else if (flex_color && flex_color->is_var)
        hc = Color::variable("E$" + std::to_string(++fresh_color_));
      TermPtr hv = mk_var("H$" + std::to_string(++fresh_var_), hs, hc);
      TermPtr harg = hv;
      for (std::size_t i = 0; i < doms.size(); ++i)
        harg = mk_app(harg, mk_bound(znames[i], doms[i]));
      body = mk_app(body, harg);
    }
    for (std::size_t i = doms.size(); i-- > 0;)
      body = mk_abs(znames[i], doms[i], body);
    return GeneralBinding{kind, proj_index >= 0 ? znames[proj_index] : head, body};
  }

  // -- state processing ------------------------------------------------------

  // Resolve color equations, drop trivially valid term equations. Returns
  // false when the state is dead.
  bool simplify(detail::State& st) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& ce : st.ceqs) {
        Color a = st.subst.apply_color(ce.a);
        Color b = st.subst.apply_color(ce.b);
        if (a == b) continue;
        if (!a.is_var && !b.is_var) return false;  // constant color clash
        if (a.is_var) {
          Color v = a.neg ? b.negated() : b;
          if (v.is_var && v.name == a.name) return false;  // A = ~A
          st.subst.bind_color(a.name, v);
        } else {
          Color v = b.neg ? a.negated() : a;
          if (v.is_var && v.name == b.name) return false;
          st.subst.bind_color(b.name, v);
        }
        changed = true;
      }
      st.ceqs.clear();
      if (changed) {
        refresh(st);
        continue;
      }
      // drop reflexive equations
      std::vector<Equation> keep;
      for (const auto& e : st.eqs) {
        if (canon_str(e.lhs) == canon_str(e.rhs)) continue;
        keep.push_back(e);
      }
      st.eqs = std::move(keep);
    }
    return true;
  }

  void refresh(detail::State& st) {
    for (auto& e : st.eqs) {
      e.lhs = st.subst.recolor_annotations(e.lhs);
      e.rhs = st.subst.recolor_annotations(e.rhs);
    }
  }

  // Index of the equation to attack: rigid/rigid first, then flex/rigid;
  // -1 when only flex/flex constraints remain.
  int select_equation(const detail::State& st) const {
    int flex_rigid = -1;
    for (std::size_t i = 0; i < st.eqs.size(); ++i) {
      bool lf = detail::flex_headed(st.eqs[i].lhs);
      bool rf = detail::flex_headed(st.eqs[i].rhs);
      if (!lf && !rf) return static_cast<int>(i);
      if (lf != rf && flex_rigid < 0) flex_rigid = static_cast<int>(i);
    }
    return flex_rigid;
  }

  std::vector<detail::State> expand(const detail::State& st, int sel) {
    Equation eq = st.eqs[sel];
    bool lf = detail::flex_headed(eq.lhs);
    bool rf = detail::flex_headed(eq.rhs);
    std::vector<detail::State> out;
    if (!lf && !rf)
      expand_rigid(st, sel, eq, out);
    else
      expand_flex(st, sel, eq, out);
    return out;
  }

  detail::State child(const detail::State& st, int sel, const std::string& rule,
                      const Equation& eq, std::size_t branches) {
    detail::State c = st;
    c.depth = st.depth + 1;
    c.eqs.erase(c.eqs.begin() + sel);
    std::string line = rule + " | " + eq.str() + " | branches=" +
                       std::to_string(branches) + " | cost=" + std::to_string(c.cost);
    c.log.push_back(line);
    trace_.push_back(line);
    return c;
  }

  void expand_rigid(const detail::State& st, int sel, const Equation& eq,
                    std::vector<detail::State>& out) {
    const TermPtr &l = eq.lhs, &r = eq.rhs;

    // negation toggling at type t
    if (eq.rel != Rel::EQ && (is_negation(l) || is_negation(r))) {
      if (auto t = negation_toggle(eq)) {
        detail::State c = child(st, sel, "neg-toggle", eq, 1);
        c.eqs.push_back(*t);
        out.push_back(std::move(c));
        return;
      }
    }

    if (l->kind == Term::Kind::Abs && r->kind == Term::Kind::Abs) {
      detail::State c = child(st, sel, "decompose-abs", eq, 1);
      std::string name = "c$" + std::to_string(++fresh_const_);
      c.registry.insert(name);
      TermPtr fc = mk_const(name, {l->sorts.front()});
      c.eqs.push_back(Equation{normalize(subst_bound(l->body, l->name, fc)),
                               normalize(subst_bound(r->body, r->name, fc)), eq.rel});
      out.push_back(std::move(c));
      return;
    }
    if (l->kind == Term::Kind::Abs || r->kind == Term::Kind::Abs) {
      // \x.A =t B  ~>  [c/x]A =t B c
      const TermPtr& ab = l->kind == Term::Kind::Abs ? l : r;
      const TermPtr& other = l->kind == Term::Kind::Abs ? r : l;
      detail::State c = child(st, sel, "decompose-abs-eta", eq, 1);
      std::string name = "c$" + std::to_string(++fresh_const_);
      c.registry.insert(name);
      TermPtr fc = mk_const(name, {ab->sorts.front()});
      TermPtr lb = normalize(subst_bound(ab->body, ab->name, fc));
      TermPtr rb = normalize(mk_app(other, fc));
      c.eqs.push_back(l->kind == Term::Kind::Abs ? Equation{lb, rb, eq.rel}
                                                 : Equation{rb, lb, eq.rel});
      out.push_back(std::move(c));
      return;
    }

    if (l->kind == Term::Kind::App && r->kind == Term::Kind::App) {
      auto branches = decompose_app(eq);
      for (const auto& [e1, e2] : branches) {
        detail::State c = child(st, sel, "decompose-app", eq, branches.size());
        c.eqs.push_back(e1);
        c.eqs.push_back(e2);
        out.push_back(std::move(c));
      }
      return;
    }

    if (is_atomic(*l) && is_atomic(*r)) {
      if (l->kind == Term::Kind::Const && r->kind == Term::Kind::Const &&
          l->name == r->name) {
        detail::State c = child(st, sel, "decompose-const", eq, 1);
        if (l->color && r->color) c.ceqs.push_back(ColorEq{*l->color, *r->color});
        out.push_back(std::move(c));
        return;
      }
      if (eq.rel == Rel::EQ) return;  // rigid head clash
      auto as = justify(h_, eq);
      for (auto& a : as) {
        if (a.cost > opts_.cost_threshold - st.cost) continue;
        detail::State c = child(st, sel, a.kind == Abducible::Kind::JustS
                                             ? "abduce-just-s"
                                             : "abduce-just-c",
                                eq, as.size());
        c.cost += a.cost;
        // parallel elements agree on their color
        if (l->color && r->color) c.ceqs.push_back(ColorEq{*l->color, *r->color});
        c.abducibles.push_back(a);
        out.push_back(std::move(c));
      }
      return;
    }
    // shape mismatch (application against atom): no applicable rule
  }

  void expand_flex(const detail::State& st, int sel, const Equation& eq,
                   std::vector<detail::State>& out) {
    bool lf = detail::flex_headed(eq.lhs);
    const TermPtr& flex = lf ? eq.lhs : eq.rhs;
    const TermPtr& rigid = lf ? eq.rhs : eq.lhs;
    TermPtr fhead, rhead;
    std::vector<TermPtr> fargs, rargs;
    spine(flex, fhead, fargs);
    spine(rigid, rhead, rargs);

    auto gbs = general_bindings(fhead, fargs.size(), rhead, eq.rel, st.registry);
    for (const auto& gb : gbs) {
      detail::State c = st;  // keep the equation: it transforms under the binding
      c.depth = st.depth + 1;
      std::string line = gb.kind_str() + " " + var_key(*fhead) + " := " +
                         term_str(gb.binding) + " | " + eq.str() + " | branches=" +
                         std::to_string(gbs.size()) + " | cost=" + std::to_string(c.cost);
      c.log.push_back(line);
      trace_.push_back(line);
      if (!eliminate(c, fhead, gb.binding)) continue;
      out.push_back(std::move(c));
    }
  }

  // Bind every color variant of the flex variable to an erasure-equal
  // variant of the binding, then substitute and renormalize.
  bool eliminate(detail::State& st, const TermPtr& flex, const TermPtr& binding) {
    if (occurs_name(binding, flex->name)) return false;
    std::set<std::string> variant_keys;
    std::vector<OptColor> variants;
    auto note = [&](const OptColor& c) {
      if (variant_keys.insert(var_key(flex->name, c)).second) variants.push_back(c);
    };
    note(flex->color);
    std::vector<TermPtr> fvs;
    for (const auto& e : st.eqs) {
      free_vars(e.lhs, fvs);
      free_vars(e.rhs, fvs);
    }
    for (const auto& v : fvs)
      if (v->name == flex->name) note(st.subst.apply_color(v->color));
    try {
      for (const auto& c : variants) {
        TermPtr variant = c && !c->is_var ? recolor(binding, *c) : binding;
        st.subst.bind_term(flex->name, c, variant);
      }
    } catch (const Error&) {
      return false;  // monochrome or erasure-agreement violation
    }
    for (auto& e : st.eqs) {
      e.lhs = st.subst.apply(e.lhs);
      e.rhs = st.subst.apply(e.rhs);
    }
    return true;
  }

  static TermPtr replace_by_name(const TermPtr& t,
                                 const std::map<std::string, TermPtr>& by_name) {
    switch (t->kind) {
      case Term::Kind::Var: {
        auto it = by_name.find(t->name);
        return it != by_name.end() ? it->second : t;
      }
      case Term::Kind::Const:
      case Term::Kind::Bound:
        return t;
      case Term::Kind::App:
        return mk_app(replace_by_name(t->fun, by_name),
                      replace_by_name(t->arg, by_name));
      case Term::Kind::Abs:
        return mk_abs(t->name, t->sorts.front(), replace_by_name(t->body, by_name));
    }
    return t;
  }

  void emit(const detail::State& st, const std::map<std::string, Sort>& problem_vars,
            const std::vector<TermPtr>& readings, std::vector<Solution>& found) {
    Solution s;
    s.subst = st.subst;
    s.cost = st.cost;
    s.abducibles = st.abducibles;
    for (auto& a : s.abducibles) {
      a.left = st.subst.recolor_annotations(a.left);
      a.right = st.subst.recolor_annotations(a.right);
    }
    s.residual = st.eqs;
    s.rule_log = st.log;
    s.color_bindings = st.subst.color_bindings();
    for (const auto& [key, term] : st.subst.term_bindings()) {
      std::string base = key.substr(0, key.find('_'));
      if (!problem_vars.count(base)) continue;
      TermPtr final_term = st.subst.apply(term);
      // fresh-constant hygiene: registry constants may not appear in solutions
      std::vector<TermPtr> consts;
      constants_in(final_term, consts);
      for (const auto& c : consts)
        if (st.registry.count(c->name)) {
          ++stats_.branches_pruned;
          return;
        }
      s.bindings[key] = final_term;
    }
    // readings name variables without color annotations; resolve against any
    // color variant (erasure agreement makes them interchangeable here)
    std::map<std::string, TermPtr> by_name;
    for (const auto& [key, b] : st.subst.term_bindings())
      by_name.emplace(key.substr(0, key.find('_')), st.subst.apply(b));
    for (const auto& r : readings)
      s.readings.push_back(erase_colors(normalize(replace_by_name(r, by_name))));
    found.push_back(std::move(s));
  }
};

}  // namespace arp
