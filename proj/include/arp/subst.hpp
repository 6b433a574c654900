#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "arp/color.hpp"
#include "arp/error.hpp"
#include "arp/normalize.hpp"
#include "arp/term.hpp"

namespace arp {

inline TermPtr erase_colors(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Const:
      return t->color ? mk_const(t->name, t->sorts) : t;
    case Term::Kind::Var:
      return t->color ? mk_var(t->name, t->sorts.front()) : t;
    case Term::Kind::Bound:
      return t;
    case Term::Kind::App:
      return mk_app(erase_colors(t->fun), erase_colors(t->arg));
    case Term::Kind::Abs:
      return mk_abs(t->name, t->sorts.front(), erase_colors(t->body));
  }
  return t;
}

// Every colored symbol occurrence carries exactly c.
inline bool is_monochrome(const TermPtr& t, const Color& c) {
  switch (t->kind) {
    case Term::Kind::Const:
    case Term::Kind::Var:
      return !t->color || *t->color == c;
    case Term::Kind::Bound:
      return true;
    case Term::Kind::App:
      return is_monochrome(t->fun, c) && is_monochrome(t->arg, c);
    case Term::Kind::Abs:
      return is_monochrome(t->body, c);
  }
  return true;
}

// Color-erasure-preserving variant with every colored occurrence set to c.
inline TermPtr recolor(const TermPtr& t, const Color& c) {
  switch (t->kind) {
    case Term::Kind::Const:
      return t->color ? mk_const(t->name, t->sorts, c) : t;
    case Term::Kind::Var:
      return t->color ? mk_var(t->name, t->sorts.front(), c) : t;
    case Term::Kind::Bound:
      return t;
    case Term::Kind::App:
      return mk_app(recolor(t->fun, c), recolor(t->arg, c));
    case Term::Kind::Abs:
      return mk_abs(t->name, t->sorts.front(), recolor(t->body, c));
  }
  return t;
}

// A well-formed colored substitution: term bindings keyed by variable
// name+color, color bindings for color variables. Construction enforces the
// monochrome constraint and erasure agreement between color variants.
class Substitution {
 public:
  Substitution() = default;

  bool empty() const { return terms_.empty() && colors_.empty(); }
  const std::map<std::string, TermPtr>& term_bindings() const { return terms_; }
  const std::map<std::string, Color>& color_bindings() const { return colors_; }

  bool has_term(const std::string& key) const { return terms_.count(key) > 0; }
  bool has_color(const std::string& name) const { return colors_.count(name) > 0; }

  void bind_color(const std::string& name, Color value) {
    value = apply_color(value);
    if (value.is_var && value.name == name && !value.neg) return;  // A = A
    if (value.is_var && value.name == name)
      throw Error("color binding " + name + " = ~" + name + " is inconsistent");
    // resolve the new variable inside existing values
    for (auto& [k, v] : colors_) {
      if (v.is_var && v.name == name) {
        bool was_neg = v.neg;
        v = value;
        if (was_neg) v.neg = !v.neg;
      }
    }
    colors_[name] = std::move(value);
    // refresh color annotations inside term bindings
    for (auto& [k, v] : terms_) v = recolor_annotations(v);
    reindex();
  }

  void bind_term(const std::string& name, const OptColor& color, TermPtr value,
                 bool validate = true) {
    OptColor c = color ? OptColor(apply_color(*color)) : OptColor{};
    value = recolor_annotations(value);
    if (validate) validate_binding(name, c, value);
    std::string key = var_key(name, c);
    terms_[key] = std::move(value);
    meta_[key] = {name, c};
  }

  Color apply_color(const Color& c) const {
    if (!c.is_var) return c;
    auto it = colors_.find(c.name);
    if (it == colors_.end()) return c;
    Color v = it->second;
    if (c.neg) v.neg = !v.neg;
    return v;
  }
  OptColor apply_color(const OptColor& c) const {
    return c ? OptColor(apply_color(*c)) : c;
  }

  // Apply color bindings to every color annotation in t (no term bindings).
  TermPtr recolor_annotations(const TermPtr& t) const {
    switch (t->kind) {
      case Term::Kind::Const:
        return t->color ? mk_const(t->name, t->sorts, apply_color(*t->color)) : t;
      case Term::Kind::Var:
        return t->color ? mk_var(t->name, t->sorts.front(), apply_color(*t->color)) : t;
      case Term::Kind::Bound:
        return t;
      case Term::Kind::App:
        return mk_app(recolor_annotations(t->fun), recolor_annotations(t->arg));
      case Term::Kind::Abs:
        return mk_abs(t->name, t->sorts.front(), recolor_annotations(t->body));
    }
    return t;
  }

  // Capture-avoiding application of the whole substitution, then normalize.
  TermPtr apply(const TermPtr& t) const { return normalize(apply_raw(t, 0)); }

  TermPtr apply_raw(const TermPtr& t, int depth) const {
    if (depth > 512) throw Error("substitution application too deep (defect)");
    switch (t->kind) {
      case Term::Kind::Const:
        return recolor_annotations(t);
      case Term::Kind::Var: {
        OptColor c = apply_color(t->color);
        auto it = terms_.find(var_key(t->name, c));
        if (it == terms_.end()) return c == t->color ? t : mk_var(t->name, t->sorts.front(), c);
        return apply_raw(it->second, depth + 1);
      }
      case Term::Kind::Bound:
        return t;
      case Term::Kind::App:
        return mk_app(apply_raw(t->fun, depth), apply_raw(t->arg, depth));
      case Term::Kind::Abs:
        return mk_abs(t->name, t->sorts.front(), apply_raw(t->body, depth));
    }
    return t;
  }

 private:
  void validate_binding(const std::string& name, const OptColor& c,
                        const TermPtr& value) const {
    if (c && !c->is_var && !is_monochrome(value, *c))
      throw Error("ill-formed substitution: binding of " + var_key(name, c) +
                  " is not " + c->str() + "-monochrome");
    TermPtr erased = erase_colors(normalize(value));
    for (const auto& [k, v] : terms_) {
      if (meta_.at(k).first == name && !alpha_equal(erase_colors(normalize(v)), erased))
        throw Error("ill-formed substitution: color variants of " + name +
                    " have different erasures");
    }
  }

  void reindex() {
    std::map<std::string, TermPtr> terms;
    std::map<std::string, std::pair<std::string, OptColor>> meta;
    for (auto& [k, v] : terms_) {
      auto [name, c] = meta_.at(k);
      OptColor rc = apply_color(c);
      std::string key = var_key(name, rc);
      terms[key] = v;
      meta[key] = {name, rc};
    }
    terms_ = std::move(terms);
    meta_ = std::move(meta);
  }

  std::map<std::string, TermPtr> terms_;
  std::map<std::string, std::pair<std::string, OptColor>> meta_;
  std::map<std::string, Color> colors_;
};

}  // namespace arp
