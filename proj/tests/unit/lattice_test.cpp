#include <doctest.h>

#include <vector>

#include "witness/lattice.hpp"

using namespace witness;

namespace {

SecurityLevel L(std::initializer_list<std::string_view> names) {
  return SecurityLevel::of(principals(names));
}

}  // namespace

TEST_CASE("principal names must be nonempty") {
  CHECK_THROWS(PrincipalId(""));
  CHECK(PrincipalId("I").name == "I");
}

TEST_CASE("smaller set is higher") {
  CHECK(leq(L({"A", "B", "S"}), L({"A", "S"})));
  CHECK_FALSE(leq(L({"A", "S"}), L({"A", "B", "S"})));
}

TEST_CASE("bottom and top bound everything") {
  for (const auto& x : {L({"A"}), L({"A", "B"}), SecurityLevel::bottom(), SecurityLevel::top()}) {
    CHECK(leq(SecurityLevel::bottom(), x));
    CHECK(leq(x, SecurityLevel::top()));
  }
  CHECK(SecurityLevel().is_top());
  CHECK(SecurityLevel::top() == L({}));
}

TEST_CASE("incomparable sets") {
  CHECK_FALSE(leq(L({"A", "B"}), L({"B", "C"})));
  CHECK_FALSE(leq(L({"B", "C"}), L({"A", "B"})));
}

TEST_CASE("meet is union, join is intersection") {
  CHECK(meet(L({"A", "B", "S"}), L({"A", "B", "S"})) == L({"A", "B", "S"}));
  CHECK(meet(L({"A", "S"}), L({"B", "S"})) == L({"A", "B", "S"}));
  CHECK(meet(SecurityLevel::top(), L({"C"})) == L({"C"}));
  CHECK(meet(L({"C"}), SecurityLevel::bottom()).is_bottom());
  CHECK(join(L({"A", "S"}), L({"B", "S"})) == L({"S"}));
  CHECK(join(L({"A"}), L({"B"})).is_top());
  CHECK(join(SecurityLevel::bottom(), L({"B"})) == L({"B"}));
}

TEST_CASE("meet is the greatest lower bound over a four-principal universe") {
  std::vector<std::string> names{"A", "B", "C", "D"};
  auto universe = std::make_shared<const PrincipalSet>(principals({"A", "B", "C", "D"}));
  std::vector<SecurityLevel> all;
  for (unsigned mask = 0; mask < 16; ++mask) {
    PrincipalSet s;
    for (unsigned i = 0; i < 4; ++i)
      if (mask & (1u << i)) s.emplace(names[i]);
    all.push_back(SecurityLevel::of(s, universe));
  }
  auto a = SecurityLevel::of(principals({"A", "S"}));
  auto b = SecurityLevel::of(principals({"B", "S"}));
  auto m = meet(a, b);
  CHECK(leq(m, a));
  CHECK(leq(m, b));
  // brute force over the 4-principal universe
  for (const auto& x : all) {
    for (const auto& y : all) {
      auto g = meet(x, y);
      for (const auto& z : all)
        if (leq(z, x) && leq(z, y)) CHECK(leq(z, g));
    }
  }
}

TEST_CASE("a level naming the whole universe is bottom") {
  auto u = std::make_shared<const PrincipalSet>(principals({"A", "B", "I"}));
  auto l = SecurityLevel::of(principals({"A", "B", "I"}), u);
  CHECK(l.is_bottom());
  CHECK(l == SecurityLevel::bottom());
  CHECK(meet(SecurityLevel::of(principals({"A", "B"}), u), SecurityLevel::of(principals({"I"}), u))
            .is_bottom());
}

TEST_CASE("strictly above") {
  CHECK(strictly_above(L({"A", "B", "S"}), SecurityLevel::bottom()));
  CHECK_FALSE(strictly_above(SecurityLevel::bottom(), SecurityLevel::bottom()));
  CHECK(strictly_above(L({"A"}), L({"A", "B"})));
  CHECK_FALSE(strictly_above(L({"A"}), L({"A"})));
}

TEST_CASE("authorization and display") {
  CHECK(SecurityLevel::bottom().authorizes(PrincipalId("Z")));
  CHECK_FALSE(SecurityLevel::top().authorizes(PrincipalId("A")));
  CHECK(L({"S", "A", "B"}).str() == "{A, B, S}");
  CHECK(SecurityLevel::bottom().str() == "⊥");
  CHECK(SecurityLevel::top().str() == "⊤");
}
