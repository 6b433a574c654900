#pragma once

// Brute-force reference machinery shared by the solver and acceptance suites:
// enumerate every well-sorted monochrome binding up to body depth 2 and keep
// those whose instantiated equations are abductively derivable with agreeing
// colors. Independent of the solver's search, bindings, and pruning.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "arp/pcalc.hpp"
#include "arp/problem.hpp"

namespace arptest {

// Color every constant occurrence (the solver's monochrome constraint forces
// this on any colored variable's binding).
inline arp::TermPtr paint(const arp::TermPtr& t, const arp::Color& c) {
  using arp::Term;
  switch (t->kind) {
    case Term::Kind::Const:
      return arp::mk_const(t->name, t->sorts, c);
    case Term::Kind::Var:
    case Term::Kind::Bound:
      return t;
    case Term::Kind::App:
      return arp::mk_app(paint(t->fun, c), paint(t->arg, c));
    case Term::Kind::Abs:
      return arp::mk_abs(t->name, t->sorts.front(), paint(t->body, c));
  }
  return t;
}

inline void collect_color_vars(const arp::TermPtr& t, std::set<std::string>& out) {
  using arp::Term;
  if (t->color && t->color->is_var) out.insert(t->color->name);
  if (t->kind == Term::Kind::App) {
    collect_color_vars(t->fun, out);
    collect_color_vars(t->arg, out);
  }
  if (t->kind == Term::Kind::Abs) collect_color_vars(t->body, out);
}

inline arp::TermPtr ground_colors(const arp::TermPtr& t,
                                  const std::map<std::string, arp::Color>& a) {
  using arp::Term;
  auto g = [&](const arp::OptColor& c) -> arp::OptColor {
    if (!c || !c->is_var) return c;
    auto it = a.find(c->name);
    if (it == a.end()) return c;
    return c->neg ? it->second.negated() : it->second;
  };
  switch (t->kind) {
    case Term::Kind::Const:
      return arp::mk_const(t->name, t->sorts, g(t->color));
    case Term::Kind::Var:
      return arp::mk_var(t->name, t->sorts.front(), g(t->color));
    case Term::Kind::Bound:
      return t;
    case Term::Kind::App:
      return arp::mk_app(ground_colors(t->fun, a), ground_colors(t->arg, a));
    case Term::Kind::Abs:
      return arp::mk_abs(t->name, t->sorts.front(), ground_colors(t->body, a));
  }
  return t;
}

// Color agreement between structurally aligned positions: constant colors
// must match wherever both sides carry one (abduced atomic pairs included).
inline bool walk_colors(const arp::TermPtr& l, const arp::TermPtr& r) {
  using arp::Term;
  if (l->kind == Term::Kind::Abs && r->kind == Term::Kind::Abs)
    return walk_colors(l->body, r->body);
  if (l->kind == Term::Kind::App && r->kind == Term::Kind::App)
    return walk_colors(l->fun, r->fun) && walk_colors(l->arg, r->arg);
  if (arp::is_atomic(*l) && arp::is_atomic(*r)) {
    if (l->color && r->color && !l->color->is_var && !r->color->is_var)
      return *l->color == *r->color;
    return true;
  }
  return false;  // shape mismatch: give up (none of the oracle inputs negate)
}

// All candidate bindings for a variable, body depth <= 2: a constant, or a
// fully applied head whose arguments are the binder or constants.
inline std::vector<arp::TermPtr> oracle_candidates(const arp::SortHierarchy& h,
                                                   const arp::Sort& vsort) {
  using namespace arp;
  std::vector<TermPtr> out;
  if (!vsort.type().is_arrow()) {
    for (const auto& [name, least] : h.constants())
      if (!least.front().type().is_arrow() && h.entails(least, vsort))
        out.push_back(mk_const(name, least));
    return out;
  }
  SortSet fs = functional_sorts(h, {vsort});
  if (fs.empty()) throw std::runtime_error("oracle: no functional sort");
  Sort dom = fs.front().dom();
  std::vector<TermPtr> atoms{mk_bound("z", dom)};
  for (const auto& [name, least] : h.constants())
    if (!least.front().type().is_arrow()) atoms.push_back(mk_const(name, least));
  for (const auto& [name, least] : h.constants()) {
    if (least.front().type() != SimpleType::arrow(SimpleType::base("e"),
                                                  SimpleType::arrow(SimpleType::base("e"),
                                                                    SimpleType::base("t"))))
      continue;
    for (const auto& a1 : atoms)
      for (const auto& a2 : atoms) {
        TermPtr body = mk_app(mk_app(mk_const(name, least), a1), a2);
        TermPtr cand = mk_abs("z", dom, body);
        auto inferred = infer_sorts_opt(h, cand);
        if (!inferred || !h.entails(*inferred, vsort)) continue;
        out.push_back(cand);
      }
  }
  return out;
}

// Minimum certified cost per erased binding, or absence when unsolvable.
inline std::map<std::string, int> oracle_solutions(const arp::Problem& p) {
  using namespace arp;
  if (p.vars.size() != 1) throw std::runtime_error("oracle: expects one variable");
  const auto& [vname, vsort] = *p.vars.begin();
  const SortHierarchy& h = p.hierarchy;

  std::set<std::string> cvars;
  for (const auto& e : p.equations) {
    collect_color_vars(e.lhs, cvars);
    collect_color_vars(e.rhs, cvars);
  }
  std::vector<std::string> cvlist(cvars.begin(), cvars.end());

  std::map<std::string, int> out;
  for (const auto& cand : oracle_candidates(h, vsort)) {
    int best = -1;
    for (std::size_t mask = 0; mask < (1u << cvlist.size()); ++mask) {
      std::map<std::string, Color> assign;
      for (std::size_t i = 0; i < cvlist.size(); ++i)
        assign[cvlist[i]] = (mask >> i) & 1 ? Color::constant("pe").negated()
                                            : Color::constant("pe");
      int total = 0;
      bool ok = true;
      for (const auto& e : p.equations) {
        // substitute the candidate, painted to match each occurrence's color
        auto subst_var = [&](const TermPtr& t, auto&& self) -> TermPtr {
          switch (t->kind) {
            case Term::Kind::Var:
              if (t->name == vname) {
                OptColor c = t->color;
                if (c && c->is_var) {
                  Color v = assign.at(c->name);
                  c = c->neg ? v.negated() : v;
                }
                return c && !c->is_var ? paint(cand, *c) : cand;
              }
              return t;
            case Term::Kind::Const:
            case Term::Kind::Bound:
              return t;
            case Term::Kind::App:
              return mk_app(self(t->fun, self), self(t->arg, self));
            case Term::Kind::Abs:
              return mk_abs(t->name, t->sorts.front(), self(t->body, self));
          }
          return t;
        };
        TermPtr l = normalize(ground_colors(subst_var(e.lhs, subst_var), assign));
        TermPtr r = normalize(ground_colors(subst_var(e.rhs, subst_var), assign));
        if (!walk_colors(l, r)) {
          ok = false;
          break;
        }
        if (e.rel == Rel::EQ) {
          if (!alpha_equal(erase_colors(l), erase_colors(r))) ok = false;
        } else {
          DeriveOptions dopts;
          dopts.cost_threshold = p.options.cost_threshold;
          auto ds = derive(h, Equation{l, r, e.rel}, dopts);
          if (ds.empty())
            ok = false;
          else
            total += ds.front().cost;
        }
        if (!ok) break;
      }
      if (ok && total <= p.options.cost_threshold && (best < 0 || total < best))
        best = total;
    }
    if (best >= 0) {
      std::string key = canon_str(erase_colors(normalize(cand)));
      auto it = out.find(key);
      if (it == out.end() || it->second > best) out[key] = best;
    }
  }
  return out;
}

}  // namespace arptest
