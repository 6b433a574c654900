#pragma once

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "arp/color.hpp"
#include "arp/error.hpp"
#include "arp/hierarchy.hpp"
#include "arp/term.hpp"

namespace arp {

// Parses the term surface syntax: application f(a, b) or juxtaposition
// ((f a) b), abstraction \Z:Sort. body, colored symbols name_color and
// name_~color. Color variables are uppercase in color position.
class TermParser {
 public:
  TermParser(const SortHierarchy& h, const std::map<std::string, Sort>& vars)
      : h_(h), vars_(vars) {}

  TermPtr parse(const std::string& text, int lineno = 0) const {
    std::vector<Tok> toks = lex(text, lineno);
    std::size_t pos = 0;
    std::map<std::string, Sort> bound;
    TermPtr t = parse_term(toks, pos, bound, lineno);
    if (pos < toks.size())
      throw ParseError("trailing input '" + toks[pos].text + "'", lineno, toks[pos].col);
    return t;
  }

 private:
  struct Tok {
    std::string text;
    int col;
    bool ident;
  };

  const SortHierarchy& h_;
  const std::map<std::string, Sort>& vars_;

  static std::vector<Tok> lex(const std::string& s, int lineno) {
    std::vector<Tok> toks;
    std::size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      int col = static_cast<int>(i) + 1;
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                                s[j] == '_' || s[j] == '~' || s[j] == '\''))
          ++j;
        toks.push_back({s.substr(i, j - i), col, true});
        i = j;
      } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
        toks.push_back({"->", col, false});
        i += 2;
      } else if (std::string("\\:.(),&!").find(c) != std::string::npos) {
        toks.push_back({std::string(1, c), col, false});
        ++i;
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", lineno, col);
      }
    }
    return toks;
  }

  TermPtr parse_term(const std::vector<Tok>& toks, std::size_t& pos,
                     std::map<std::string, Sort>& bound, int lineno) const {
    std::vector<TermPtr> parts;
    while (pos < toks.size()) {
      const Tok& t = toks[pos];
      if (t.text == ")" || t.text == ",") break;
      parts.push_back(parse_primary(toks, pos, bound, lineno));
    }
    if (parts.empty()) throw ParseError("expected a term", lineno, cur_col(toks, pos));
    TermPtr out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out = mk_app(out, parts[i]);
    return out;
  }

  TermPtr parse_primary(const std::vector<Tok>& toks, std::size_t& pos,
                        std::map<std::string, Sort>& bound, int lineno) const {
    const Tok& t = toks[pos];
    if (t.text == "\\") {
      ++pos;
      if (pos >= toks.size() || !toks[pos].ident)
        throw ParseError("expected binder name", lineno, cur_col(toks, pos));
      std::string name = toks[pos].text;
      ++pos;
      expect(toks, pos, ":", lineno);
      Sort s = parse_sort(toks, pos, lineno);
      expect(toks, pos, ".", lineno);
      auto prev = bound.find(name);
      bool had = prev != bound.end();
      Sort saved = had ? prev->second : s;
      bound.insert_or_assign(name, s);
      TermPtr body = parse_term(toks, pos, bound, lineno);
      if (had)
        bound.insert_or_assign(name, saved);
      else
        bound.erase(name);
      return mk_abs(name, s, body);
    }
    if (t.text == "(") {
      ++pos;
      TermPtr inner = parse_term(toks, pos, bound, lineno);
      expect(toks, pos, ")", lineno);
      return maybe_apply_args(inner, toks, pos, bound, lineno);
    }
    if (!t.ident)
      throw ParseError("unexpected '" + t.text + "'", lineno, t.col);
    ++pos;
    TermPtr head = resolve_symbol(t, bound, lineno);
    return maybe_apply_args(head, toks, pos, bound, lineno);
  }

  TermPtr maybe_apply_args(TermPtr head, const std::vector<Tok>& toks, std::size_t& pos,
                           std::map<std::string, Sort>& bound, int lineno) const {
    if (pos < toks.size() && toks[pos].text == "(") {
      // lookahead: "(" begins an argument list only if head is applicable
      if (!head->type.is_arrow()) return head;
      ++pos;
      std::vector<TermPtr> args;
      args.push_back(parse_term(toks, pos, bound, lineno));
      while (pos < toks.size() && toks[pos].text == ",") {
        ++pos;
        args.push_back(parse_term(toks, pos, bound, lineno));
      }
      expect(toks, pos, ")", lineno);
      for (auto& a : args) head = mk_app(head, a);
    }
    return head;
  }

  TermPtr resolve_symbol(const Tok& t, const std::map<std::string, Sort>& bound,
                         int lineno) const {
    // whole identifier declared -> no color suffix
    auto b = bound.find(t.text);
    if (b != bound.end()) return mk_bound(t.text, b->second);
    if (vars_.count(t.text)) return mk_var(t.text, vars_.at(t.text));
    if (h_.has_constant(t.text)) return mk_const(t.text, h_.sorts_of_constant(t.text));
    if (t.text == "not") return builtin_not();
    // otherwise split a color suffix at the last underscore
    auto us = t.text.rfind('_');
    if (us == std::string::npos || us == 0 || us + 1 >= t.text.size())
      throw ParseError("unknown symbol '" + t.text + "'", lineno, t.col);
    std::string name = t.text.substr(0, us);
    OptColor color = parse_color(t.text.substr(us + 1), t, lineno);
    if (bound.count(name))
      throw ParseError("bound occurrence '" + name + "' may not carry a color",
                       lineno, t.col);
    if (vars_.count(name)) return mk_var(name, vars_.at(name), color);
    if (h_.has_constant(name)) return mk_const(name, h_.sorts_of_constant(name), color);
    throw ParseError("unknown symbol '" + name + "'", lineno, t.col);
  }

  TermPtr builtin_not() const {
    Sort t_top = Sort::top(h_.type("t"));
    return mk_const("not", {Sort::arrow(t_top, t_top)});
  }

  static OptColor parse_color(std::string s, const Tok& t, int lineno) {
    bool neg = false;
    if (!s.empty() && s[0] == '~') {
      neg = true;
      s = s.substr(1);
    }
    if (s.empty() || s.find('~') != std::string::npos)
      throw ParseError("malformed color in '" + t.text + "'", lineno, t.col);
    Color c = std::isupper(static_cast<unsigned char>(s[0])) ? Color::variable(s)
                                                             : Color::constant(s);
    if (neg) c = c.negated();
    return c;
  }

  Sort parse_sort(const std::vector<Tok>& toks, std::size_t& pos, int lineno) const {
    // hand the slice to the hierarchy's sort-expression parser
    std::vector<std::string> raw;
    std::size_t depth = 0, j = pos;
    for (; j < toks.size(); ++j) {
      const std::string& x = toks[j].text;
      if (x == "(") ++depth;
      if (x == ")") {
        if (depth == 0) break;
        --depth;
      }
      if (depth == 0 && (x == "." || x == ",")) break;
      raw.push_back(x);
    }
    std::size_t rpos = 0;
    Sort s = h_.parse_sort_expr(raw, rpos, lineno);
    pos += rpos;
    return s;
  }

  static int cur_col(const std::vector<Tok>& toks, std::size_t pos) {
    return pos < toks.size() ? toks[pos].col : -1;
  }

  static void expect(const std::vector<Tok>& toks, std::size_t& pos,
                     const std::string& text, int lineno) {
    if (pos >= toks.size() || toks[pos].text != text)
      throw ParseError("expected '" + text + "'", lineno, cur_col(toks, pos));
    ++pos;
  }
};

}  // namespace arp
