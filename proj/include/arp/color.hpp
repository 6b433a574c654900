#pragma once

#include <optional>
#include <string>

namespace arp {

// A color annotation: a constant (pe), a variable (A), or a negation of
// either. Double negation is eliminated eagerly by keeping a single flag.
struct Color {
  bool is_var = false;
  bool neg = false;
  std::string name;

  static Color constant(std::string n) { return Color{false, false, std::move(n)}; }
  static Color variable(std::string n) { return Color{true, false, std::move(n)}; }

  Color negated() const { return Color{is_var, !neg, name}; }

  bool operator==(const Color& o) const {
    return is_var == o.is_var && neg == o.neg && name == o.name;
  }
  bool operator!=(const Color& o) const { return !(*this == o); }
  bool operator<(const Color& o) const {
    if (is_var != o.is_var) return is_var < o.is_var;
    if (neg != o.neg) return neg < o.neg;
    return name < o.name;
  }

  std::string str() const { return (neg ? "~" : "") + name; }
};

using OptColor = std::optional<Color>;

inline std::string color_str(const OptColor& c) { return c ? c->str() : ""; }

}  // namespace arp
