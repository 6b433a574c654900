#pragma once

#include <memory>
#include <string>
#include <utility>

#include "arp/error.hpp"

namespace arp {

// Simple types: base types (e, t, ...) and arrows. Immutable value type.
class SimpleType {
 public:
  static SimpleType base(std::string name) {
    return SimpleType(std::make_shared<Node>(Node{std::move(name), nullptr, nullptr}));
  }
  static SimpleType arrow(SimpleType dom, SimpleType cod) {
    return SimpleType(std::make_shared<Node>(
        Node{"", std::make_shared<SimpleType>(std::move(dom)),
             std::make_shared<SimpleType>(std::move(cod))}));
  }

  bool is_base() const { return node_->dom == nullptr; }
  bool is_arrow() const { return node_->dom != nullptr; }

  const std::string& base_name() const {
    if (!is_base()) throw TypeError("base_name on arrow type");
    return node_->name;
  }
  const SimpleType& dom() const {
    if (!is_arrow()) throw TypeError("dom on base type");
    return *node_->dom;
  }
  const SimpleType& cod() const {
    if (!is_arrow()) throw TypeError("cod on base type");
    return *node_->cod;
  }

  bool operator==(const SimpleType& o) const {
    if (node_ == o.node_) return true;
    if (is_base() != o.is_base()) return false;
    if (is_base()) return base_name() == o.base_name();
    return dom() == o.dom() && cod() == o.cod();
  }
  bool operator!=(const SimpleType& o) const { return !(*this == o); }

  std::string str() const {
    if (is_base()) return node_->name;
    return "(" + dom().str() + " -> " + cod().str() + ")";
  }

 private:
  struct Node {
    std::string name;
    std::shared_ptr<SimpleType> dom;
    std::shared_ptr<SimpleType> cod;
  };
  explicit SimpleType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace arp
