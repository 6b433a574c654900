#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "arp/hierarchy.hpp"
#include "arp/sort.hpp"
#include "helpers.hpp"

using namespace arp;
using arptest::hierarchy;
using arptest::load_hierarchy_text;

static Sort atom(const std::string& n) { return hierarchy().atom(n); }

TEST_CASE("hierarchy loads the bundled taxonomy") {
  const auto& h = hierarchy();
  CHECK(h.atom_count() == 18);
  CHECK(h.has_constant("jon"));
  CHECK(h.has_constant("like"));
  CHECK(h.sorts_of_constant("spot") == SortSet{atom("Dog"), atom("Male")});
}

TEST_CASE("load rejects malformed input") {
  CHECK_THROWS_AS(load_hierarchy_text("type e\nsort A : e\nedge A <= B\n"), Error);
  CHECK_THROWS_AS(
      load_hierarchy_text("type e\nsort A : e\nsort B : e\n"
                          "edge A <= B\nedge B <= A\n"),
      LoadError);  // cycle
  CHECK_THROWS_AS(
      load_hierarchy_text("type e\nsort A : e\nsort B : e\nsort C : e\n"
                          "edge C <= A\nedge C <= B\ndisjoint A B\n"),
      LoadError);  // C below disjoint sorts
  CHECK_THROWS_AS(
      load_hierarchy_text("type e\nsort A : e\nsort B : e\ndisjoint A B\n"
                          "const k : A & B\n"),
      LoadError);  // constant at an empty intersection
  CHECK_THROWS_AS(load_hierarchy_text("frob A\n"), LoadError);
}

TEST_CASE("subsumption on atoms follows the declared edges") {
  const auto& h = hierarchy();
  CHECK(h.is_subsort(atom("Man"), atom("Human")));
  CHECK(h.is_subsort(atom("Man"), atom("Male")));
  CHECK(h.is_subsort(atom("Woman"), atom("Animate")));
  CHECK(h.is_subsort(atom("Dog"), atom("Real")));
  CHECK_FALSE(h.is_subsort(atom("Human"), atom("Man")));
  CHECK_FALSE(h.is_subsort(atom("Man"), atom("Woman")));
  CHECK_FALSE(h.is_subsort(atom("Game"), atom("Animate")));
}

TEST_CASE("subsumption is a partial order on the atoms") {
  const auto& h = hierarchy();
  auto names = h.atom_names(h.type("e"));
  std::vector<Sort> as;
  for (const auto& n : names) as.push_back(atom(n));
  for (const auto& a : as) CHECK(h.is_subsort(a, a));
  for (const auto& a : as)
    for (const auto& b : as) {
      if (h.is_subsort(a, b) && h.is_subsort(b, a)) CHECK(a == b);
      for (const auto& c : as)
        if (h.is_subsort(a, b) && h.is_subsort(b, c)) CHECK(h.is_subsort(a, c));
    }
}

TEST_CASE("negation and complements") {
  const auto& h = hierarchy();
  CHECK(h.is_subsort(atom("Woman"), Sort::neg(atom("Man"))));  // declared edge
  CHECK(h.is_subsort(atom("Man"), Sort::neg(atom("Woman"))));  // Male/Female disjoint
  CHECK(h.is_subsort(atom("Game"), Sort::neg(atom("Animate"))));
  // complementary: !Animate resolves to Inanimate
  CHECK(h.is_subsort(atom("Pen"), Sort::neg(atom("Animate"))));
  CHECK(h.is_subsort(atom("Number"), Sort::neg(atom("Real"))));
  CHECK_FALSE(h.is_subsort(atom("Human"), Sort::neg(atom("Man"))));
  // antitone: a <= b implies !b <= !a
  CHECK(h.is_subsort(Sort::neg(atom("Human")), Sort::neg(atom("Man"))));
  CHECK_FALSE(h.is_subsort(Sort::neg(atom("Man")), Sort::neg(atom("Human"))));
}

TEST_CASE("arrow sorts: contravariant domain, covariant codomain") {
  const auto& h = hierarchy();
  Sort t_top = Sort::top(h.type("t"));
  Sort hh = Sort::arrow(atom("Human"), t_top);
  Sort ww = Sort::arrow(atom("Woman"), t_top);
  CHECK(h.is_subsort(hh, ww));  // accepts more, usable where less is needed
  CHECK_FALSE(h.is_subsort(ww, hh));

  Sort narrow = Sort::arrow(atom("Human"), Sort::arrow(atom("Real"), t_top));
  Sort wide = Sort::arrow(atom("Human"), Sort::arrow(atom("Human"), t_top));
  CHECK(h.is_subsort(narrow, wide));
  CHECK_FALSE(h.is_subsort(wide, narrow));
}

TEST_CASE("functional base sorts sit below their declared arrow supersorts") {
  const auto& h = hierarchy();
  Sort t_top = Sort::top(h.type("t"));
  Sort hht = Sort::arrow(atom("Human"), Sort::arrow(atom("Human"), t_top));
  CHECK(h.is_subsort(atom("Social"), hht));
  CHECK(h.is_subsort(atom("Friendly"), hht));
  CHECK_FALSE(h.is_subsort(hht, atom("Social")));
}

TEST_CASE("intersection sorts") {
  const auto& h = hierarchy();
  Sort dm = Sort::inter({atom("Dog"), atom("Male")});
  CHECK(h.is_subsort(dm, atom("Animal")));
  CHECK(h.is_subsort(dm, atom("Male")));
  CHECK(h.is_subsort(dm, Sort::inter({atom("Animate"), atom("Real")})));
  CHECK_FALSE(h.is_subsort(atom("Dog"), dm));
  // empty intersections are below everything
  CHECK(h.is_subsort(Sort::inter({atom("Male"), atom("Female")}), atom("Number")));
  CHECK(h.is_subsort(Sort::inter({atom("Man"), Sort::neg(atom("Human"))}), atom("Pen")));
}

TEST_CASE("common sorts") {
  const auto& h = hierarchy();
  CHECK(h.common_sorts({atom("Man")}, {atom("Woman")}) == SortSet{atom("Human")});
  CHECK(h.common_sorts({atom("Dog")}, {atom("Man")}) == SortSet{atom("Animate")});
  CHECK(h.common_sorts({atom("Number")}, {atom("Game")}) == SortSet{atom("Entity")});
  CHECK(h.common_sorts({atom("Man")}, {atom("Game")}) == SortSet{atom("Real")});
  CHECK(h.common_sorts({atom("Man")}, {atom("Man")}) == SortSet{atom("Man")});
  SortSet so = h.common_sorts(arptest::sorts_of("support"), arptest::sorts_of("oppose"));
  CHECK(h.entails(so, atom("Social")));
  // never empty: the top sort always qualifies
  Sort t_top = Sort::top(h.type("t"));
  Sort hht = Sort::arrow(atom("Human"), Sort::arrow(atom("Human"), t_top));
  CHECK_FALSE(h.common_sorts({hht}, {hht}).empty());
}

TEST_CASE("distinguishing sorts") {
  const auto& h = hierarchy();
  SortSet mw = h.distinguishing_sorts({atom("Man")}, {atom("Woman")});
  CHECK(std::count(mw.begin(), mw.end(), atom("Man")) == 1);
  CHECK(std::count(mw.begin(), mw.end(), atom("Male")) == 1);
  CHECK(std::count(mw.begin(), mw.end(), atom("Female")) == 1);
  CHECK(h.distinguishing_sorts({atom("Man")}, {atom("Man")}).empty());
  // Man vs Male: no complement separates them
  CHECK(h.distinguishing_sorts({atom("Man")}, {atom("Male")}).empty());
  SortSet ld =
      h.distinguishing_sorts(arptest::sorts_of("like"), arptest::sorts_of("dislike"));
  CHECK(ld == SortSet{atom("Friendly")});
  SortSet wg = h.distinguishing_sorts({atom("Woman")}, {atom("Game")});
  CHECK(std::count(wg.begin(), wg.end(), atom("Animate")) == 1);
  CHECK(std::count(wg.begin(), wg.end(), atom("Inanimate")) == 1);
}

TEST_CASE("distance: hand-checked values") {
  const auto& h = hierarchy();
  // mary -> jon: Woman -> Human <- Man, one edge per side
  CHECK(h.distance(arptest::sorts_of("mary"), arptest::sorts_of("jon")) == 2);
  // mary -> golf: Woman..Real is 3 edges, Game..Real is 2
  CHECK(h.distance(arptest::sorts_of("mary"), arptest::sorts_of("golf")) == 5);
  CHECK(h.distance(arptest::sorts_of("support"), arptest::sorts_of("oppose")) == 0);
  CHECK(h.distance({atom("Man")}, {atom("Male")}) == 1);
  CHECK(h.distance({atom("Dog")}, {atom("Man")}) == 4);  // both meet at Animate
}

TEST_CASE("distance: identity and symmetry over the signature") {
  const auto& h = hierarchy();
  std::vector<std::string> e_consts;
  for (const auto& [n, ss] : h.constants())
    if (!ss.front().type().is_arrow()) e_consts.push_back(n);
  for (const auto& a : e_consts) {
    CHECK(h.distance(h.sorts_of_constant(a), h.sorts_of_constant(a)) == 0);
    for (const auto& b : e_consts)
      CHECK(h.distance(h.sorts_of_constant(a), h.sorts_of_constant(b)) ==
            h.distance(h.sorts_of_constant(b), h.sorts_of_constant(a)));
  }
}

TEST_CASE("sort expression parsing") {
  const auto& h = hierarchy();
  CHECK(h.parse_sort("Man") == atom("Man"));
  CHECK(h.parse_sort("!Man") == Sort::neg(atom("Man")));
  CHECK(h.parse_sort("Dog & Male") == Sort::inter({atom("Dog"), atom("Male")}));
  CHECK(h.parse_sort("(Woman -> t)") == Sort::arrow(atom("Woman"), Sort::top(h.type("t"))));
  CHECK(h.parse_sort("e") == Sort::top(h.type("e")));
  CHECK_THROWS_AS(h.parse_sort("Man Woman"), LoadError);
  CHECK_THROWS_AS(h.parse_sort("Unicorn"), SortError);
}

TEST_CASE("entails over sort sets is existential") {
  const auto& h = hierarchy();
  CHECK(h.entails(arptest::sorts_of("spot"), atom("Animal")));
  CHECK(h.entails(arptest::sorts_of("spot"), atom("Male")));
  CHECK_FALSE(h.entails(arptest::sorts_of("spot"), atom("Human")));
}
