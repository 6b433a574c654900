#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "arp/error.hpp"
#include "arp/simple_type.hpp"

namespace arp {

// Sorts refine simple types: atoms from a hierarchy, negated atoms,
// intersections of (negated) atoms, arrow sorts, and the synthesized top
// sort of each simple type.
class Sort {
 public:
  enum class Kind { Atom, Neg, Inter, Arrow, Top };

  static Sort atom(std::string name, SimpleType type) {
    Node n;
    n.kind = Kind::Atom;
    n.name = std::move(name);
    n.type = std::make_shared<SimpleType>(std::move(type));
    return Sort(std::make_shared<Node>(std::move(n)));
  }
  static Sort neg(const Sort& a) {
    if (a.kind() == Kind::Neg) return *a.node_->members.begin();  // ~~s = s
    if (a.kind() != Kind::Atom) throw SortError("negation applies to atoms only");
    Node n;
    n.kind = Kind::Neg;
    n.type = a.node_->type;
    n.members.push_back(a);
    return Sort(std::make_shared<Node>(std::move(n)));
  }
  // members must be Atom or Neg, all of one simple type, >= 2 of them.
  static Sort inter(std::vector<Sort> members) {
    if (members.size() < 2) throw SortError("intersection needs >= 2 members");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.size() == 1) return members.front();
    for (const auto& m : members) {
      if (m.kind() != Kind::Atom && m.kind() != Kind::Neg)
        throw SortError("intersection members must be atoms or negated atoms");
      if (m.type() != members.front().type())
        throw TypeError("intersection members of mixed type");
    }
    Node n;
    n.kind = Kind::Inter;
    n.type = members.front().node_->type;
    n.members = std::move(members);
    return Sort(std::make_shared<Node>(std::move(n)));
  }
  static Sort arrow(Sort dom, Sort cod) {
    Node n;
    n.kind = Kind::Arrow;
    n.type = std::make_shared<SimpleType>(SimpleType::arrow(dom.type(), cod.type()));
    n.members.push_back(std::move(dom));
    n.members.push_back(std::move(cod));
    return Sort(std::make_shared<Node>(std::move(n)));
  }
  static Sort top(SimpleType type) {
    Node n;
    n.kind = Kind::Top;
    n.type = std::make_shared<SimpleType>(std::move(type));
    return Sort(std::make_shared<Node>(std::move(n)));
  }

  Kind kind() const { return node_->kind; }
  const std::string& atom_name() const {
    if (kind() != Kind::Atom) throw SortError("atom_name on non-atom sort");
    return node_->name;
  }
  // for Neg: the atom underneath
  const Sort& negated_atom() const {
    if (kind() != Kind::Neg) throw SortError("negated_atom on non-neg sort");
    return node_->members.front();
  }
  const std::vector<Sort>& members() const { return node_->members; }
  const Sort& dom() const {
    if (kind() != Kind::Arrow) throw SortError("dom on non-arrow sort");
    return node_->members[0];
  }
  const Sort& cod() const {
    if (kind() != Kind::Arrow) throw SortError("cod on non-arrow sort");
    return node_->members[1];
  }
  const SimpleType& type() const { return *node_->type; }

  // An intersection containing both s and ~s denotes the empty sort.
  bool syntactically_empty() const {
    if (kind() != Kind::Inter) return false;
    for (const auto& m : node_->members) {
      if (m.kind() != Kind::Neg) continue;
      const Sort& a = m.negated_atom();
      for (const auto& o : node_->members)
        if (o.kind() == Kind::Atom && o.atom_name() == a.atom_name()) return true;
    }
    return false;
  }

  std::string str() const {
    switch (kind()) {
      case Kind::Atom:
        return node_->name;
      case Kind::Neg:
        return "!" + negated_atom().str();
      case Kind::Inter: {
        std::string s;
        for (const auto& m : node_->members) {
          if (!s.empty()) s += " & ";
          s += m.str();
        }
        return s;
      }
      case Kind::Arrow:
        return "(" + dom().str() + " -> " + cod().str() + ")";
      case Kind::Top:
        return type().is_base() ? type().str() : type().str();
    }
    return "?";
  }

  bool operator==(const Sort& o) const {
    if (node_ == o.node_) return true;
    if (kind() != o.kind() || type() != o.type()) return false;
    switch (kind()) {
      case Kind::Atom:
        return node_->name == o.node_->name;
      case Kind::Top:
        return true;
      default:
        return node_->members == o.node_->members;
    }
  }
  bool operator!=(const Sort& o) const { return !(*this == o); }
  bool operator<(const Sort& o) const {
    if (kind() != o.kind()) return kind() < o.kind();
    return str() < o.str();
  }

 private:
  struct Node {
    Kind kind;
    std::string name;                     // Atom
    std::shared_ptr<SimpleType> type;
    std::vector<Sort> members;            // Neg: [atom]; Inter; Arrow: [dom, cod]
  };
  explicit Sort(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using SortSet = std::vector<Sort>;

inline std::string sorts_str(const SortSet& ss) {
  std::string out;
  for (const auto& s : ss) {
    if (!out.empty()) out += ", ";
    out += s.str();
  }
  return out;
}

}  // namespace arp
