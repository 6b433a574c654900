#pragma once

#include <string>
#include <vector>

#include "arp/hierarchy.hpp"
#include "arp/infer.hpp"
#include "arp/pcalc.hpp"
#include "arp/problem.hpp"
#include "arp/subst.hpp"
#include "arp/unify.hpp"

namespace arp {

namespace detail {

// Colors agree wherever both sides carry one; uncolored positions match
// anything with the same erasure.
inline bool colors_compatible(const TermPtr& a, const TermPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Const:
    case Term::Kind::Var:
      if (a->name != b->name) return false;
      if (a->color && b->color && !(*a->color == *b->color)) return false;
      return true;
    case Term::Kind::Bound:
      return true;  // names compared via the erasure check
    case Term::Kind::App:
      return colors_compatible(a->fun, b->fun) && colors_compatible(a->arg, b->arg);
    case Term::Kind::Abs:
      return colors_compatible(a->body, b->body);
  }
  return false;
}

// Does the residual constraint share a free variable with either replayed side?
inline bool occurs_shared(const Equation& res, const TermPtr& l, const TermPtr& r) {
  std::vector<TermPtr> rv, sv;
  free_vars(res.lhs, rv);
  free_vars(res.rhs, rv);
  free_vars(l, sv);
  free_vars(r, sv);
  for (const auto& a : rv)
    for (const auto& b : sv)
      if (a->name == b->name) return true;
  return false;
}

}  // namespace detail

// Independent validation of a solution against the problem it claims to
// solve. Replays each equation under the substitution: strict equations must
// close up to alpha-equivalence and color agreement, =s/=p equations must
// have an abductive derivation whose assumptions appear in the certificate.
inline bool check_certificate(const Problem& p, const Solution& sol,
                              std::vector<std::string>* diagnosis = nullptr) {
  bool ok = true;
  auto fail = [&](const std::string& msg) {
    ok = false;
    if (diagnosis) diagnosis->push_back(msg);
  };

  // substitution well-formedness
  for (const auto& [key, term] : sol.subst.term_bindings()) {
    if (!infer_sorts_opt(p.hierarchy, term))
      fail("binding " + key + " is ill-sorted: " + term_str(term));
    auto us = key.find('_');
    if (us != std::string::npos) {
      std::string suffix = key.substr(us + 1);
      bool neg = !suffix.empty() && suffix[0] == '~';
      std::string cname = neg ? suffix.substr(1) : suffix;
      if (!cname.empty() && !std::isupper(static_cast<unsigned char>(cname[0]))) {
        Color c = Color::constant(cname);
        if (neg) c = c.negated();
        if (!is_monochrome(term, c))
          fail("binding " + key + " violates the monochrome constraint");
      }
    }
  }
  // fresh constants introduced during search may not surface in bindings
  for (const auto& [key, term] : sol.bindings) {
    std::vector<TermPtr> cs;
    constants_in(term, cs);
    for (const auto& c : cs)
      if (c->name.find('$') != std::string::npos)
        fail("binding " + key + " mentions internal constant " + c->name);
  }

  std::string abd_pool;
  for (const auto& a : sol.abducibles) abd_pool += a.str() + "\n";
  auto abducible_known = [&](const Abducible& a) {
    return abd_pool.find(a.str()) != std::string::npos;
  };

  // abducibles must be sound: recompute their witnesses from the hierarchy
  for (const auto& a : sol.abducibles) {
    SortSet sl = a.left->sorts, sr = a.right->sorts;
    SortSet common = p.hierarchy.common_sorts(sl, sr);
    if (common != a.common)
      fail("abducible common sorts mismatch for " + a.str() + "; expected " +
           sorts_str(common));
    if (a.kind == Abducible::Kind::JustC) {
      SortSet dist = p.hierarchy.distinguishing_sorts(sl, sr);
      if (dist.empty())
        fail("just-c without a distinguishing sort: " + a.str());
      else if (dist != a.distinguishing)
        fail("abducible distinguishing sorts mismatch for " + a.str());
    }
    int d = p.hierarchy.distance(sl, sr);
    if (d != a.cost)
      fail("abducible cost mismatch for " + a.str() + "; expected " +
           std::to_string(d));
  }

  // replay the equations under the substitution
  for (const auto& e : p.equations) {
    TermPtr l = sol.subst.apply(e.lhs);
    TermPtr r = sol.subst.apply(e.rhs);
    bool residual_covered = false;
    for (const auto& res : sol.residual)
      if (res.rel == e.rel && detail::occurs_shared(res, l, r)) residual_covered = true;
    if (e.rel == Rel::EQ) {
      if (!alpha_equal(erase_colors(l), erase_colors(r))) {
        if (!residual_covered)
          fail("strict equation does not close: " + term_str(l) + " vs " + term_str(r));
        continue;
      }
      if (!detail::colors_compatible(l, r))
        fail("strict equation closes only up to colors: " + term_str(l) + " vs " +
             term_str(r));
      continue;
    }
    DeriveOptions dopts;
    dopts.cost_threshold = p.options.cost_threshold;
    auto ds = derive(p.hierarchy, Equation{l, r, e.rel}, dopts);
    bool witnessed = false;
    for (const auto& d : ds) {
      bool all = true;
      for (const auto& a : d.abducibles)
        if (!abducible_known(a)) all = false;
      if (all) {
        witnessed = true;
        break;
      }
    }
    if (!witnessed && !residual_covered)
      fail("no derivation of " + rel_str(e.rel) + " equation " + term_str(l) +
           " ~ " + term_str(r) + " from the certified assumptions");
  }

  if (ok && diagnosis) diagnosis->push_back("certificate valid");
  return ok;
}

}  // namespace arp
