#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "arp/color.hpp"
#include "arp/error.hpp"
#include "arp/simple_type.hpp"
#include "arp/sort.hpp"

namespace arp {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Sorted, colored simply-typed lambda term. Immutable; shared freely.
// Bound occurrences are color-transparent (Kind::Bound, never colored).
struct Term {
  enum class Kind { Const, Var, Bound, App, Abs };

  Kind kind;
  SimpleType type;
  std::string name;   // Const, Var, Bound, Abs binder
  SortSet sorts;      // Const: least sorts; Var/Bound: singleton; Abs: binder sort
  OptColor color;     // Const, Var only
  TermPtr fun, arg;   // App
  TermPtr body;       // Abs

  Term(Kind k, SimpleType ty) : kind(k), type(std::move(ty)) {}
};

inline SimpleType sort_simple_type(const Sort& s) { return s.type(); }

inline TermPtr mk_const(std::string name, SortSet least, OptColor color = {}) {
  if (least.empty()) throw SortError("constant needs at least one sort: " + name);
  for (const auto& s : least)
    if (s.type() != least.front().type())
      throw TypeError("constant " + name + " with sorts of mixed simple type");
  auto t = std::make_shared<Term>(Term::Kind::Const, least.front().type());
  t->name = std::move(name);
  t->sorts = std::move(least);
  t->color = std::move(color);
  return t;
}

inline TermPtr mk_var(std::string name, Sort sort, OptColor color = {}) {
  auto t = std::make_shared<Term>(Term::Kind::Var, sort.type());
  t->name = std::move(name);
  t->sorts = {std::move(sort)};
  t->color = std::move(color);
  return t;
}

inline TermPtr mk_bound(std::string name, Sort sort) {
  auto t = std::make_shared<Term>(Term::Kind::Bound, sort.type());
  t->name = std::move(name);
  t->sorts = {std::move(sort)};
  return t;
}

inline TermPtr mk_app(TermPtr fun, TermPtr arg) {
  if (!fun->type.is_arrow() || fun->type.dom() != arg->type)
    throw TypeError("ill-typed application: " + fun->type.str() + " applied to " +
                    arg->type.str());
  auto t = std::make_shared<Term>(Term::Kind::App, fun->type.cod());
  t->fun = std::move(fun);
  t->arg = std::move(arg);
  return t;
}

inline TermPtr mk_abs(std::string bound, Sort bound_sort, TermPtr body) {
  auto t = std::make_shared<Term>(
      Term::Kind::Abs, SimpleType::arrow(bound_sort.type(), body->type));
  t->name = std::move(bound);
  t->sorts = {std::move(bound_sort)};
  t->body = std::move(body);
  return t;
}

// Key identifying a unification variable occurrence class: name plus color
// annotation. x_pe and x_~pe are distinct bindable variables.
inline std::string var_key(const std::string& name, const OptColor& color) {
  return color ? name + "_" + color->str() : name;
}

inline std::string var_key(const Term& v) { return var_key(v.name, v.color); }

// -- traversal helpers -------------------------------------------------------

inline void spine(const TermPtr& t, TermPtr& head, std::vector<TermPtr>& args) {
  if (t->kind == Term::Kind::App) {
    spine(t->fun, head, args);
    args.push_back(t->arg);
  } else {
    head = t;
  }
}

inline TermPtr apply_args(TermPtr head, const std::vector<TermPtr>& args,
                          std::size_t from = 0) {
  TermPtr t = std::move(head);
  for (std::size_t i = from; i < args.size(); ++i) t = mk_app(t, args[i]);
  return t;
}

inline bool is_atomic(const Term& t) {
  return t.kind == Term::Kind::Const || t.kind == Term::Kind::Var ||
         t.kind == Term::Kind::Bound;
}

// -- printing ----------------------------------------------------------------

namespace detail {

inline void print(const TermPtr& t, std::string& out, bool canonical,
                  std::map<std::string, std::string>& renames, int& counter) {
  switch (t->kind) {
    case Term::Kind::Const:
    case Term::Kind::Var:
      out += t->name;
      if (t->color) out += "_" + t->color->str();
      break;
    case Term::Kind::Bound: {
      auto it = renames.find(t->name);
      out += it != renames.end() ? it->second : t->name;
      break;
    }
    case Term::Kind::App: {
      TermPtr head;
      std::vector<TermPtr> args;
      spine(t, head, args);
      if (head->kind == Term::Kind::Abs) {
        out += "(";
        print(head, out, canonical, renames, counter);
        out += ")";
      } else {
        print(head, out, canonical, renames, counter);
      }
      out += "(";
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        print(args[i], out, canonical, renames, counter);
      }
      out += ")";
      break;
    }
    case Term::Kind::Abs: {
      std::string shown = t->name;
      std::string saved;
      bool had = false;
      if (canonical) {
        shown = "z" + std::to_string(++counter);
        auto it = renames.find(t->name);
        if (it != renames.end()) {
          saved = it->second;
          had = true;
        }
        renames[t->name] = shown;
      }
      out += "\\" + shown + ":" + t->sorts.front().str() + ". ";
      print(t->body, out, canonical, renames, counter);
      if (canonical) {
        if (had)
          renames[t->name] = saved;
        else
          renames.erase(t->name);
      }
      break;
    }
  }
}

}  // namespace detail

inline std::string term_str(const TermPtr& t) {
  std::string out;
  std::map<std::string, std::string> renames;
  int counter = 0;
  detail::print(t, out, false, renames, counter);
  return out;
}

// Canonical form with alpha-normalized binder names; usable as a map key.
inline std::string canon_str(const TermPtr& t) {
  std::string out;
  std::map<std::string, std::string> renames;
  int counter = 0;
  detail::print(t, out, true, renames, counter);
  return out;
}

// Structural alpha-equivalence (colors and sorts included).
inline bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  return canon_str(a) == canon_str(b);
}

// Occurs-check on the color erasure: any color variant of the name counts.
inline bool occurs_name(const TermPtr& t, const std::string& name) {
  switch (t->kind) {
    case Term::Kind::Var:
      return t->name == name;
    case Term::Kind::Const:
    case Term::Kind::Bound:
      return false;
    case Term::Kind::App:
      return occurs_name(t->fun, name) || occurs_name(t->arg, name);
    case Term::Kind::Abs:
      return occurs_name(t->body, name);
  }
  return false;
}

inline void free_vars(const TermPtr& t, std::vector<TermPtr>& out) {
  switch (t->kind) {
    case Term::Kind::Var:
      out.push_back(t);
      break;
    case Term::Kind::Const:
    case Term::Kind::Bound:
      break;
    case Term::Kind::App:
      free_vars(t->fun, out);
      free_vars(t->arg, out);
      break;
    case Term::Kind::Abs:
      free_vars(t->body, out);
      break;
  }
}

inline void constants_in(const TermPtr& t, std::vector<TermPtr>& out) {
  switch (t->kind) {
    case Term::Kind::Const:
      out.push_back(t);
      break;
    case Term::Kind::Var:
    case Term::Kind::Bound:
      break;
    case Term::Kind::App:
      constants_in(t->fun, out);
      constants_in(t->arg, out);
      break;
    case Term::Kind::Abs:
      constants_in(t->body, out);
      break;
  }
}

}  // namespace arp
