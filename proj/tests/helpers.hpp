#pragma once

#include <sstream>
#include <string>

#include "arp/hierarchy.hpp"
#include "arp/parser.hpp"
#include "arp/problem.hpp"

namespace arptest {

inline std::string fixture(const std::string& name) {
  return std::string(ARP_FIXTURE_DIR) + "/" + name;
}

inline const arp::SortHierarchy& hierarchy() {
  static arp::SortHierarchy h = arp::SortHierarchy::load_file(fixture("hierarchy.srt"));
  return h;
}

inline arp::TermPtr parse(const std::string& text,
                          const std::map<std::string, arp::Sort>& vars = {}) {
  return arp::TermParser(hierarchy(), vars).parse(text);
}

inline arp::SortSet sorts_of(const std::string& constant) {
  return hierarchy().sorts_of_constant(constant);
}

inline arp::SortHierarchy load_hierarchy_text(const std::string& text) {
  std::istringstream in(text);
  return arp::SortHierarchy::load(in);
}

}  // namespace arptest
