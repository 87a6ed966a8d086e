#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "witness/errors.hpp"
#include "witness/witness.hpp"

using namespace witness;

namespace {

const VerificationContext& ctx() {
  static auto c = wtest::corpus_ctx("woolam_mod");
  return c;
}

const ProtocolModel& model() {
  static auto m = wtest::corpus_model("woolam_mod", ctx());
  return m;
}

Message P(std::string_view s) { return wtest::msg(ctx(), s); }

const GeneralizedRole& role(std::string_view name) {
  for (const auto& r : model().roles)
    if (r.name() == name) return r;
  throw std::runtime_error("no role");
}

const StepCheck& check_for(const std::vector<StepCheck>& checks, std::string_view target) {
  for (const auto& c : checks)
    if (to_string(c.target) == target) return c;
  throw std::runtime_error("no check");
}

constexpr auto MAX = SelectionVariant::Max;

}  // namespace

TEST_CASE("candidate sources") {
  auto one = candidate_sources(P("{B.kab^i}kas"), model().patterns);
  REQUIRE(one.size() == 1);
  CHECK(one[0].pattern_index == 0);
  CHECK(one[0].mgu.str() == "{B_1 ↦ B, kab_1^i ↦ kab^i, kas_1 ↦ kas}");

  auto two = candidate_sources(P("{U.{A.V}kbs}kbs"), model().patterns);
  REQUIRE(two.size() == 2);
  CHECK(two[0].pattern_index == 2);
  CHECK(two[1].pattern_index == 4);
  for (const auto& s : two) CHECK(apply(s.mgu, s.pattern) == apply(s.mgu, P("{U.{A.V}kbs}kbs")));

  CHECK(candidate_sources(P("{A}kab"), model().patterns).empty());
  CHECK_THROWS_AS(candidate_sources(P("A.B"), model().patterns), Error);
}

TEST_CASE("lower bounds") {
  auto abs = wtest::lvl(ctx(), {"A", "B", "S"});
  CHECK(lower_bound(MAX, P("kab^i"), P("{B.kab^i}kas"), model().patterns, ctx()).value == abs);
  CHECK(lower_bound(MAX, P("U"), P("{U.{A.V}kbs}kbs"), model().patterns, ctx()).value == abs);
  auto v = lower_bound(MAX, P("V"), P("{U.{A.V}kbs}kbs"), model().patterns, ctx());
  CHECK(v.value == abs);
  REQUIRE(v.sources.size() == 2);
  CHECK(v.sources[0].value == abs);
  CHECK(v.sources[1].value == abs);
  CHECK(to_string(v.sources[1].instance) == "{{A.V}kbs}kbs");

  CHECK_THROWS_AS(lower_bound(MAX, P("Nb"), P("{A}kas"), model().patterns, ctx()), AtomAbsent);
  CHECK_THROWS_AS(lower_bound(MAX, P("A"), P("{A}kab"), model().patterns, ctx()), NoSource);
  auto exposed = lower_bound(MAX, P("Nb^i"), P("Nb^i"), model().patterns, ctx());
  CHECK(exposed.value.is_bottom());
  CHECK(exposed.direct.size() == 1);
}

TEST_CASE("secrecy checks per role") {
  auto abs = wtest::lvl(ctx(), {"A", "B", "S"});
  auto a2 = check_step(role("A^2"), model().patterns, ctx(), MAX);
  const auto& kab = check_for(a2, "kab^i");
  CHECK(kab.received_bound.is_top());
  CHECK(kab.lower.value == abs);
  CHECK(kab.declared == abs);
  CHECK(kab.pass);

  auto b2 = check_step(role("B^2"), model().patterns, ctx(), MAX);
  CHECK(check_for(b2, "Nb^i").declared.is_bottom());
  CHECK(check_for(b2, "Nb^i").pass);
  CHECK(check_for(b2, "Y").pass);

  auto s1 = check_step(role("S^1"), model().patterns, ctx(), MAX);
  for (auto t : {"U", "V"}) {
    const auto& c = check_for(s1, t);
    CHECK(c.received_bound == abs);
    CHECK(c.lower.value == abs);
    CHECK(c.pass);
  }
  CHECK_THROWS_AS(check_step(role("B^3"), model().patterns, ctx(), MAX), Error);

  auto all = check_secrecy(model(), ctx(), MAX);
  CHECK(all.pass);
  CHECK(all.checks.size() == 10);
}

TEST_CASE("authentication on the modified protocol") {
  auto auth = check_authentication(model(), ctx(), MAX, *ctx().challenge());
  CHECK(auth.pass);
  CHECK(auth.secrecy_pass);
  CHECK(auth.check.message == P("{Nb^i.{A.Z}kbs}kbs"));
  CHECK(auth.check.challenge == P("Nb^i"));
  CHECK(auth.check.level == wtest::lvl(ctx(), {"A", "B", "S"}));
  CHECK(auth.check.claimant_in_level);
  CHECK(auth.check.above_bottom);
}

TEST_CASE("authentication on the original protocol") {
  auto c = wtest::corpus_ctx("woolam_orig");
  auto m = wtest::corpus_model("woolam_orig", c);
  auto auth = check_authentication(m, c, MAX, *c.challenge());
  CHECK(auth.secrecy_pass);
  CHECK_FALSE(auth.pass);
  CHECK(auth.check.level == wtest::lvl(c, {"B", "S"}));
  CHECK_FALSE(auth.check.claimant_in_level);
  CHECK(auth.check.above_bottom);
}

TEST_CASE("authentication errors and the strictness clause") {
  Challenge sent{PrincipalId("B"), PrincipalId("A"), 4, "Nb"};
  CHECK_THROWS_AS(check_authentication(model(), ctx(), MAX, sent), ChallengeNotReceived);
  Challenge not_mine{PrincipalId("A"), PrincipalId("B"), 5, "Nb"};
  CHECK_THROWS_AS(check_authentication(model(), ctx(), MAX, not_mine), ChallengeNotReceived);
  Challenge absent{PrincipalId("B"), PrincipalId("A"), 5, "kas"};
  CHECK_THROWS_AS(check_authentication(model(), ctx(), MAX, absent), ChallengeAtomAbsent);

  auto c = VerificationContext::parse("principals A, B, I\nnonce Na fresh(A) level public\n");
  auto m = build_model(parse_narration("protocol Clear\n1. A -> B : A.Na\n2. B -> A : Na\n", c), c);
  auto auth = check_authentication(m, c, MAX, Challenge{PrincipalId("A"), PrincipalId("B"), 2, "Na"});
  CHECK(auth.check.level.is_bottom());
  CHECK(auth.check.claimant_in_level);
  CHECK_FALSE(auth.check.above_bottom);
  CHECK_FALSE(auth.pass);
}

TEST_CASE("leaky and broadcast protocols") {
  auto lc = wtest::corpus_ctx("leaky");
  auto leaky = check_secrecy(wtest::corpus_model("leaky", lc), lc, MAX);
  CHECK_FALSE(leaky.pass);
  CHECK(std::count_if(leaky.checks.begin(), leaky.checks.end(), [](auto& c) { return !c.pass; }) ==
        1);
  auto bc = wtest::corpus_ctx("broadcast");
  CHECK(check_secrecy(wtest::corpus_model("broadcast", bc), bc, MAX).pass);
}

TEST_CASE("bound ordering on woolam patterns") {
  CHECK(bound_ordering_check(MAX, P("kab^i"), P("{B.kab^i}kas"), model().patterns, ctx()));
  CHECK(bound_ordering_check(MAX, P("V"), P("{U.{A.V}kbs}kbs"), model().patterns, ctx()));
}

TEST_CASE("empty protocol is vacuously secret") {
  auto c = wtest::corpus_ctx("woolam_mod");
  auto m = build_model(parse_narration("protocol Nothing\n", c), c);
  auto r = check_secrecy(m, c, MAX);
  CHECK(r.pass);
  CHECK(r.checks.empty());
}
