#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "arp/error.hpp"
#include "arp/hierarchy.hpp"
#include "arp/term.hpp"

namespace arp {

inline SortSet minimize_sorts(const SortHierarchy& h, SortSet in) {
  std::sort(in.begin(), in.end());
  in.erase(std::unique(in.begin(), in.end()), in.end());
  SortSet out;
  for (const auto& c : in) {
    bool minimal = true;
    for (const auto& o : in) {
      if (o == c) continue;
      if (h.is_subsort(o, c) && !h.is_subsort(c, o)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(c);
  }
  return out;
}

// Resolve a sort set to the arrow sorts it entails (for use as a function).
inline SortSet functional_sorts(const SortHierarchy& h, const SortSet& ss) {
  SortSet out;
  auto consider = [&](const Sort& s) {
    if (s.kind() == Sort::Kind::Arrow) out.push_back(s);
    if (s.kind() == Sort::Kind::Top && s.type().is_arrow())
      out.push_back(Sort::arrow(Sort::top(s.type().dom()), Sort::top(s.type().cod())));
  };
  for (const auto& s : ss) {
    consider(s);
    if (s.kind() == Sort::Kind::Atom || s.kind() == Sort::Kind::Inter) {
      if (!s.type().is_arrow()) continue;
      for (const auto& w : h.arrow_sorts(s.type()))
        if (h.is_subsort(s, w)) out.push_back(w);
    }
  }
  return minimize_sorts(h, out);
}

// The least derivable sorts of a well-typed term.
inline SortSet infer_sorts(const SortHierarchy& h, const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Const:
    case Term::Kind::Var:
    case Term::Kind::Bound:
      return t->sorts;
    case Term::Kind::App: {
      SortSet fs = functional_sorts(h, infer_sorts(h, t->fun));
      SortSet as = infer_sorts(h, t->arg);
      SortSet out;
      for (const auto& f : fs)
        if (h.entails(as, f.dom())) out.push_back(f.cod());
      if (out.empty())
        throw SortError("ill-sorted application: no functional sort of " +
                        term_str(t->fun) + " accepts " + term_str(t->arg));
      return minimize_sorts(h, out);
    }
    case Term::Kind::Abs: {
      SortSet body = infer_sorts(h, t->body);
      SortSet out;
      for (const auto& b : body) out.push_back(Sort::arrow(t->sorts.front(), b));
      return minimize_sorts(h, out);
    }
  }
  return {};
}

inline std::optional<SortSet> infer_sorts_opt(const SortHierarchy& h, const TermPtr& t) {
  try {
    return infer_sorts(h, t);
  } catch (const SortError&) {
    return std::nullopt;
  } catch (const TypeError&) {
    return std::nullopt;
  }
}

}  // namespace arp
