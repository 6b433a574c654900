#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arp/hierarchy.hpp"
#include "arp/infer.hpp"
#include "arp/normalize.hpp"
#include "arp/subst.hpp"
#include "arp/term.hpp"

namespace arp {

enum class Rel { EQ, SIM, CPAR };

inline std::string rel_str(Rel r) {
  switch (r) {
    case Rel::EQ:
      return "==";
    case Rel::SIM:
      return "=s";
    case Rel::CPAR:
      return "=p";
  }
  return "?";
}

struct Equation {
  TermPtr lhs, rhs;
  Rel rel;
  std::string str() const { return term_str(lhs) + " " + rel_str(rel) + " " + term_str(rhs); }
  std::string canon() const {
    return canon_str(lhs) + " " + rel_str(rel) + " " + canon_str(rhs);
  }
};

inline Equation mk_equation(TermPtr l, TermPtr r, Rel rel) {
  if (l->type != r->type)
    throw TypeError("equation sides of different simple type: " + term_str(l) +
                    " vs " + term_str(r));
  return Equation{std::move(l), std::move(r), rel};
}

// A justified assumption: the two terms are similar (just-s) or contrastive
// (just-c) at the witnessed sorts; cost is the hierarchy distance to the
// common sort. May carry a variable binding (e.g. resolving "him").
struct Abducible {
  enum class Kind { JustS, JustC };
  Kind kind;
  TermPtr left, right;
  SortSet common;
  SortSet distinguishing;  // atoms; JustC only
  int cost = 0;
  std::optional<std::pair<std::string, TermPtr>> binding;  // var key -> term

  std::string str() const {
    std::string s = (kind == Kind::JustS ? "just-s " : "just-c ");
    s += canon_str(left) + " ~ " + canon_str(right);
    s += " [common: " + sorts_str(common);
    if (!distinguishing.empty()) s += "; distinguishing: " + sorts_str(distinguishing);
    s += "; cost " + std::to_string(cost) + "]";
    if (binding) s += " {" + binding->first + " := " + canon_str(binding->second) + "}";
    return s;
  }
};

struct DerivNode {
  std::string rule;
  std::string equation;
  std::vector<DerivNode> children;
  std::optional<Abducible> abducible;
};

struct Derivation {
  DerivNode root;
  std::vector<Abducible> abducibles;
  std::map<std::string, TermPtr> bindings;  // var key -> bound term
  int cost = 0;

  std::string key() const {
    std::vector<std::string> parts;
    for (const auto& a : abducibles) parts.push_back(a.str());
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (const auto& p : parts) s += p + "\n";
    for (const auto& [k, v] : bindings) s += k + " := " + canon_str(v) + "\n";
    return s;
  }
};

struct DeriveOptions {
  int cost_threshold = 10;
  std::size_t max_results = 256;
  int max_depth = 64;
};

// -- individual rules ---------------------------------------------------------

// A B =p C D  ~>  (A=pC, B=sD) | (A=sC, B=pD) | (A=pC, B=pD); for =s and ==
// the components inherit the relation.
inline std::vector<std::pair<Equation, Equation>> decompose_app(const Equation& e) {
  if (e.lhs->kind != Term::Kind::App || e.rhs->kind != Term::Kind::App) return {};
  const TermPtr &a = e.lhs->fun, &b = e.lhs->arg, &c = e.rhs->fun, &d = e.rhs->arg;
  if (a->type != c->type || b->type != d->type) return {};
  if (e.rel == Rel::CPAR) {
    return {{mk_equation(a, c, Rel::CPAR), mk_equation(b, d, Rel::SIM)},
            {mk_equation(a, c, Rel::SIM), mk_equation(b, d, Rel::CPAR)},
            {mk_equation(a, c, Rel::CPAR), mk_equation(b, d, Rel::CPAR)}};
  }
  return {{mk_equation(a, c, e.rel), mk_equation(b, d, e.rel)}};
}

// \X.A =r \X.B ~> A =r B with the binders identified by a shared fresh
// constant, which may not appear in any solution.
inline std::optional<Equation> decompose_abs(const Equation& e, int& fresh_counter,
                                             std::vector<std::string>* registry = nullptr) {
  if (e.lhs->kind != Term::Kind::Abs || e.rhs->kind != Term::Kind::Abs) return {};
  if (e.lhs->type != e.rhs->type) return {};
  std::string name = "c$" + std::to_string(++fresh_counter);
  if (registry) registry->push_back(name);
  TermPtr c = mk_const(name, {e.lhs->sorts.front()});
  TermPtr lb = subst_bound(e.lhs->body, e.lhs->name, c);
  TermPtr rb = subst_bound(e.rhs->body, e.rhs->name, c);
  return mk_equation(lb, rb, e.rel);
}

inline bool is_negation(const TermPtr& t) {
  return t->kind == Term::Kind::App && t->fun->kind == Term::Kind::Const &&
         t->fun->name == "not";
}

// A =p not(B) ~> A =s B (and the =s twin); negation on either side toggles
// the relation; applies from either side.
inline std::optional<Equation> negation_toggle(const Equation& e) {
  if (e.rel == Rel::EQ) return {};
  Rel toggled = e.rel == Rel::CPAR ? Rel::SIM : Rel::CPAR;
  if (is_negation(e.rhs)) return mk_equation(e.lhs, e.rhs->arg, toggled);
  if (is_negation(e.lhs)) return mk_equation(e.lhs->arg, e.rhs, toggled);
  return {};
}

inline SortSet term_sorts(const SortHierarchy& h, const TermPtr& t) {
  return infer_sorts(h, t);
}

// just-s / just-c on an atomic pair. Alternatives are returned as a set;
// empty means the branch fails. A variable side is bound to the other side
// when sort-compatible.
inline std::vector<Abducible> justify(const SortHierarchy& h, const Equation& e) {
  if (!is_atomic(*e.lhs) || !is_atomic(*e.rhs) || e.rel == Rel::EQ) return {};
  SortSet sl = e.lhs->sorts;
  SortSet sr = e.rhs->sorts;
  Abducible a;
  a.kind = e.rel == Rel::SIM ? Abducible::Kind::JustS : Abducible::Kind::JustC;
  a.left = e.lhs;
  a.right = e.rhs;
  a.common = h.common_sorts(sl, sr);
  if (e.rel == Rel::CPAR) {
    a.distinguishing = h.distinguishing_sorts(sl, sr);
    if (a.distinguishing.empty()) return {};
  }
  a.cost = h.distance(sl, sr);
  // bind a variable side to the other side when the sorts permit
  if (e.lhs->kind == Term::Kind::Var && e.rhs->kind != Term::Kind::Var) {
    if (h.entails(sr, e.lhs->sorts.front()))
      a.binding = {var_key(*e.lhs), e.rhs};
  } else if (e.rhs->kind == Term::Kind::Var && e.lhs->kind != Term::Kind::Var) {
    if (h.entails(sl, e.rhs->sorts.front()))
      a.binding = {var_key(*e.rhs), e.lhs};
  }
  return {a};
}

// -- full abductive derivation ------------------------------------------------

namespace detail {

struct Partial {
  std::vector<Abducible> abducibles;
  std::map<std::string, TermPtr> bindings;
  int cost = 0;
  DerivNode node;
};

inline bool merge_bindings(std::map<std::string, TermPtr>& into,
                           const std::map<std::string, TermPtr>& from) {
  for (const auto& [k, v] : from) {
    auto it = into.find(k);
    if (it == into.end())
      into.emplace(k, v);
    else if (!alpha_equal(it->second, v))
      return false;
  }
  return true;
}

inline std::vector<Partial> derive_rec(const SortHierarchy& h, const Equation& e,
                                       const DeriveOptions& opts, int depth,
                                       int& fresh_counter) {
  std::vector<Partial> alts;
  if (depth > opts.max_depth) return alts;
  auto push = [&](Partial p) {
    if (p.cost <= opts.cost_threshold) alts.push_back(std::move(p));
  };

  // reflexivity: identical modulo alpha and colors
  if (alpha_equal(erase_colors(e.lhs), erase_colors(e.rhs))) {
    Partial p;
    p.node = DerivNode{"refl", e.str(), {}, {}};
    push(std::move(p));
  }

  // EQ on an atomic variable side: plain variable elimination, no assumption
  if (e.rel == Rel::EQ) {
    auto try_bind = [&](const TermPtr& v, const TermPtr& other) {
      if (v->kind != Term::Kind::Var || occurs_name(other, v->name)) return;
      if (!h.entails(infer_sorts(h, other), v->sorts.front())) return;
      Partial p;
      p.bindings[var_key(*v)] = other;
      p.node = DerivNode{"bind", e.str(), {}, {}};
      push(std::move(p));
    };
    if (!alpha_equal(erase_colors(e.lhs), erase_colors(e.rhs))) {
      try_bind(e.lhs, e.rhs);
      try_bind(e.rhs, e.lhs);
    }
  }

  // abduction on atomic pairs
  if (!alpha_equal(erase_colors(e.lhs), erase_colors(e.rhs))) {
    for (auto& a : justify(h, e)) {
      Partial p;
      p.cost = a.cost;
      if (a.binding) p.bindings.emplace(a.binding->first, a.binding->second);
      p.node = DerivNode{a.kind == Abducible::Kind::JustS ? "just-s" : "just-c",
                         e.str(), {}, a};
      p.abducibles.push_back(std::move(a));
      push(std::move(p));
    }
  }

  // negation toggling
  if (auto t = negation_toggle(e)) {
    for (auto& sub : derive_rec(h, *t, opts, depth + 1, fresh_counter)) {
      Partial p = sub;
      p.node = DerivNode{"neg", e.str(), {sub.node}, {}};
      push(std::move(p));
    }
  }

  // abstractions
  {
    int saved = fresh_counter;
    if (auto body = decompose_abs(e, fresh_counter)) {
      for (auto& sub : derive_rec(h, *body, opts, depth + 1, fresh_counter)) {
        Partial p = sub;
        p.node = DerivNode{"abs", e.str(), {sub.node}, {}};
        push(std::move(p));
      }
    } else {
      fresh_counter = saved;
    }
  }

  // applications
  for (auto& [e1, e2] : decompose_app(e)) {
    auto left = derive_rec(h, e1, opts, depth + 1, fresh_counter);
    if (left.empty()) continue;
    auto right = derive_rec(h, e2, opts, depth + 1, fresh_counter);
    for (const auto& l : left)
      for (const auto& r : right) {
        Partial p;
        p.cost = l.cost + r.cost;
        if (p.cost > opts.cost_threshold) continue;
        p.abducibles = l.abducibles;
        p.abducibles.insert(p.abducibles.end(), r.abducibles.begin(),
                            r.abducibles.end());
        p.bindings = l.bindings;
        if (!merge_bindings(p.bindings, r.bindings)) continue;
        p.node = DerivNode{"app", e.str(), {l.node, r.node}, {}};
        push(std::move(p));
      }
  }
  return alts;
}

}  // namespace detail

// All abductive explanations of e up to the cost threshold, cheapest first.
inline std::vector<Derivation> derive(const SortHierarchy& h, const Equation& e,
                                      const DeriveOptions& opts = {}) {
  int fresh_counter = 0;
  auto partials = detail::derive_rec(h, e, opts, 0, fresh_counter);
  std::vector<Derivation> out;
  std::set<std::string> seen;
  for (auto& p : partials) {
    Derivation d;
    d.root = std::move(p.node);
    d.abducibles = std::move(p.abducibles);
    d.bindings = std::move(p.bindings);
    d.cost = p.cost;
    if (seen.insert(d.key()).second) out.push_back(std::move(d));
  }
  std::stable_sort(out.begin(), out.end(), [](const Derivation& a, const Derivation& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.key() < b.key();
  });
  if (out.size() > opts.max_results) out.resize(opts.max_results);
  return out;
}

// Render a derivation as an indented tree with abducible boxes as leaves.
inline void render_derivation(const DerivNode& n, std::string& out, int indent = 0) {
  out.append(indent * 2, ' ');
  out += n.equation + "   [" + n.rule + "]\n";
  if (n.abducible) {
    out.append(indent * 2 + 2, ' ');
    out += "| " + n.abducible->str() + "\n";
  }
  for (const auto& c : n.children) render_derivation(c, out, indent + 1);
}

}  // namespace arp
