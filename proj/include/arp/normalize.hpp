#pragma once

#include <set>
#include <string>
#include <vector>

#include "arp/error.hpp"
#include "arp/term.hpp"

namespace arp {

namespace detail {

inline void bound_names_free(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case Term::Kind::Bound:
      out.insert(t->name);
      break;
    case Term::Kind::App:
      bound_names_free(t->fun, out);
      bound_names_free(t->arg, out);
      break;
    case Term::Kind::Abs: {
      std::set<std::string> inner;
      bound_names_free(t->body, inner);
      inner.erase(t->name);
      out.insert(inner.begin(), inner.end());
      break;
    }
    default:
      break;
  }
}

inline TermPtr rename_bound(const TermPtr& t, const std::string& from,
                            const std::string& to) {
  switch (t->kind) {
    case Term::Kind::Bound:
      return t->name == from ? mk_bound(to, t->sorts.front()) : t;
    case Term::Kind::App:
      return mk_app(rename_bound(t->fun, from, to), rename_bound(t->arg, from, to));
    case Term::Kind::Abs:
      if (t->name == from) return t;  // shadowed
      return mk_abs(t->name, t->sorts.front(), rename_bound(t->body, from, to));
    default:
      return t;
  }
}

}  // namespace detail

// Capture-avoiding substitution of the bound-variable name `name`.
inline TermPtr subst_bound(const TermPtr& t, const std::string& name,
                           const TermPtr& repl) {
  switch (t->kind) {
    case Term::Kind::Bound:
      return t->name == name ? repl : t;
    case Term::Kind::Const:
    case Term::Kind::Var:
      return t;
    case Term::Kind::App:
      return mk_app(subst_bound(t->fun, name, repl), subst_bound(t->arg, name, repl));
    case Term::Kind::Abs: {
      if (t->name == name) return t;  // shadowed
      std::set<std::string> fv;
      detail::bound_names_free(repl, fv);
      if (fv.count(t->name)) {
        std::string fresh = t->name;
        std::set<std::string> body_fv;
        detail::bound_names_free(t->body, body_fv);
        do {
          fresh += "'";
        } while (fv.count(fresh) || body_fv.count(fresh));
        TermPtr body = detail::rename_bound(t->body, t->name, fresh);
        return mk_abs(fresh, t->sorts.front(), subst_bound(body, name, repl));
      }
      return mk_abs(t->name, t->sorts.front(), subst_bound(t->body, name, repl));
    }
  }
  return t;
}

inline TermPtr beta_normalize(const TermPtr& t, int fuel = 100000) {
  if (fuel <= 0) throw Error("beta_normalize: fuel exhausted (defect)");
  switch (t->kind) {
    case Term::Kind::App: {
      TermPtr f = beta_normalize(t->fun, fuel - 1);
      TermPtr a = beta_normalize(t->arg, fuel - 1);
      if (f->kind == Term::Kind::Abs)
        return beta_normalize(subst_bound(f->body, f->name, a), fuel - 1);
      return mk_app(f, a);
    }
    case Term::Kind::Abs:
      return mk_abs(t->name, t->sorts.front(), beta_normalize(t->body, fuel - 1));
    default:
      return t;
  }
}

namespace detail {

// Best-effort domain sort for eta-expansion of a non-abstraction term of
// arrow type; falls back to the top sort of the domain simple type.
inline Sort domain_sort(const TermPtr& t) {
  for (const auto& s : t->sorts)
    if (s.kind() == Sort::Kind::Arrow && s.type() == t->type) return s.dom();
  return Sort::top(t->type.dom());
}

inline TermPtr eta_long(const TermPtr& t, int& counter) {
  if (t->kind == Term::Kind::Abs)
    return mk_abs(t->name, t->sorts.front(), eta_long(t->body, counter));
  if (t->type.is_arrow()) {
    Sort d = domain_sort(t);
    std::string z = "x$" + std::to_string(++counter);
    return eta_long(mk_abs(z, d, mk_app(t, mk_bound(z, d))), counter);
  }
  TermPtr head;
  std::vector<TermPtr> args;
  spine(t, head, args);
  TermPtr out = head;
  for (const auto& a : args) out = mk_app(out, eta_long(a, counter));
  return out;
}

}  // namespace detail

// Beta-normal eta-long form. Idempotent; alpha-canonical comparison is done
// by canon_str/alpha_equal.
inline TermPtr normalize(const TermPtr& t) {
  int counter = 0;
  return detail::eta_long(beta_normalize(t), counter);
}

}  // namespace arp
