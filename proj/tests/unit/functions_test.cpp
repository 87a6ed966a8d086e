#include <doctest.h>

#include "support.hpp"
#include "witness/errors.hpp"
#include "witness/functions.hpp"

using namespace witness;

namespace {

const VerificationContext& wl() {
  static auto c = wtest::corpus_ctx("woolam_mod");
  return c;
}

const VerificationContext& guide() {
  static auto c = wtest::corpus_ctx("guideline");
  return c;
}

Message P(std::string_view s) { return wtest::msg(wl(), s); }
Message G(std::string_view s) { return wtest::msg(guide(), s); }

constexpr auto MAX = SelectionVariant::Max;

}  // namespace

TEST_CASE("variant names") {
  CHECK(parse_variant("ek") == SelectionVariant::EK);
  CHECK_FALSE(parse_variant("MAXX"));
  CHECK(to_string(SelectionVariant::N) == "n");
}

TEST_CASE("derivation") {
  CHECK(derive(P("X")).is_empty());
  CHECK(derive(P("{A.U.{B.V}kas}kbs"), Variable{"U", 0}) == P("{A.U.{B}kas}kbs"));
  CHECK(derive(P("{Nb^i.{A.Z}kbs}kbs")) == P("{Nb^i.{A}kbs}kbs"));
  CHECK(derive(P("{X}kas")) == P("{ε}kas"));
  CHECK(derive(P("X.Y"), Variable{"Y", 0}) == P("Y"));
  CHECK(derive(P("A")) == P("A"));
  CHECK(derive_vars(P("X.Y.A"), {Variable{"X", 0}}) == P("Y.A"));
}

TEST_CASE("protective key") {
  auto occ = protective_key(P("kab^i"), P("{B.kab^i}kas"), wl());
  REQUIRE(occ.size() == 1);
  CHECK(occ[0].key == P("kas").as_atom());
  CHECK(occ[0].protected_section.empty());

  auto g = protective_key(G("alpha"), G("{C.{alpha.D}kas}kab"), guide());
  REQUIRE(g.size() == 1);
  CHECK(g[0].key == G("kab").as_atom());

  auto bare = protective_key(P("Nb^i"), P("A.Nb^i"), wl());
  REQUIRE(bare.size() == 1);
  CHECK_FALSE(bare[0].key);
  CHECK_THROWS_AS(protective_key(P("Nb"), P("A.B"), wl()), AtomAbsent);
  // a key that is not secret enough is skipped
  auto c = VerificationContext::parse("principals A, B, S, I\nkey kab shared(A,B)\n"
                                      "key kas shared(A,S)\nnonce s level {A}\n");
  auto inner = protective_key(wtest::msg(c, "s"), wtest::msg(c, "{{s}kas}kab"), c);
  REQUIRE(inner.size() == 1);
  CHECK_FALSE(inner[0].key);
}

TEST_CASE("selection in the guideline example") {
  auto sel = select(MAX, G("alpha"), G("{C.{alpha.D}kas}kab"), guide());
  REQUIRE(sel.size() == 1);
  CHECK(sel[0].str() == "{C, D, kab⁻¹}");
  CHECK(psi(sel[0], guide()) == wtest::lvl(guide(), {"A", "B", "C", "D"}));
  CHECK(eval_f(MAX, G("alpha"), G("{C.{alpha.D}kas}kab"), guide()) ==
        wtest::lvl(guide(), {"A", "B", "C", "D"}));
  auto ek = select(SelectionVariant::EK, G("alpha"), G("{C.{alpha.D}kas}kab"), guide());
  CHECK(ek[0].str() == "{kab⁻¹}");
  auto n = select(SelectionVariant::N, G("alpha"), G("{C.{alpha.D}kas}kab"), guide());
  CHECK(n[0].str() == "{C, D}");
  CHECK(psi(n[0], guide()) == wtest::lvl(guide(), {"C", "D"}));
}

TEST_CASE("selection markers") {
  auto sel = select(MAX, P("kab^i"), P("{B.kab^i}kas"), wl());
  CHECK(sel[0].str() == "{B, kas⁻¹}");
  CHECK(psi(sel[0], wl()) == wtest::lvl(wl(), {"A", "B", "S"}));
  auto sup = select(MAX, P("Nb"), P("{A}kas"), wl());
  CHECK(sup[0].kind == Selection::Kind::Supremum);
  CHECK(psi(sup[0], wl()).is_top());
  auto inf = select(MAX, P("Nb"), P("Nb"), wl());
  CHECK(inf[0].kind == Selection::Kind::Infimum);
  CHECK(psi(inf[0], wl()).is_bottom());
}

TEST_CASE("F on single messages") {
  CHECK(eval_f(MAX, P("Nb^i"), P("{Nb^i.{A}kbs}kbs"), wl()) == wtest::lvl(wl(), {"A", "B", "S"}));
  CHECK(eval_f(MAX, P("Nb"), P("Nb"), wl()).is_bottom());
  CHECK(eval_f(MAX, P("U"), P("{A.U.{B}kas}kbs"), wl()) == wtest::lvl(wl(), {"A", "B", "S"}));
  CHECK(eval_f(MAX, P("Nb"), Message(), wl()).is_top());
  // two occurrences meet
  CHECK(eval_f(MAX, P("kab"), P("{kab}kas.{kab}kbs"), wl()) == wtest::lvl(wl(), {"A", "B", "S"}));
  CHECK(eval_f(MAX, P("kab"), P("{kab}kas.kab"), wl()).is_bottom());
  std::vector<Message> set{P("{B.kab}kas"), P("{A.kab}kbs")};
  CHECK(eval_f(MAX, P("kab"), set, wl()) == wtest::lvl(wl(), {"A", "B", "S"}));
  CHECK(eval_f(MAX, P("kab"), std::vector<Message>{}, wl()).is_top());
}

TEST_CASE("key positions are not occurrences") {
  CHECK(eval_f(MAX, P("kas"), P("{A}kas"), wl()).is_top());
  CHECK(eval_f(MAX, P("kas"), P("{A}kas.kas"), wl()).is_bottom());
}

TEST_CASE("F prime") {
  CHECK(f_prime(MAX, P("kab^i"), P("X"), wl()).is_top());
  CHECK(f_prime(MAX, P("V"), P("{A.U.{B.V}kas}kbs"), wl()) == wtest::lvl(wl(), {"A", "B", "S"}));
  CHECK(f_prime(MAX, P("Y"), P("Y"), wl()).is_bottom());
  CHECK(f_prime(MAX, P("Nb^i"), P("{Nb^i.{A.Z}kbs}kbs"), wl()) ==
        wtest::lvl(wl(), {"A", "B", "S"}));
  // an atom filling a variable is evaluated at the variable
  Substitution run;
  run.bind(P("Z"), P("kab^i"));
  CHECK(f_prime(MAX, P("kab^i"), P("{Nb^i.{A.Z}kbs}kbs"), wl(), &run) ==
        wtest::lvl(wl(), {"A", "B", "S"}));
  CHECK(f_prime(MAX, P("kab^i"), P("{Nb^i.{A.Z}kbs}kbs"), wl()).is_top());
  CHECK_THROWS_AS(f_prime(MAX, P("A.B"), P("A.B"), wl()), Error);
}

TEST_CASE("variable keys are rejected") {
  CHECK_THROWS_AS(eval_f(MAX, P("A"), P("{A}X"), wl()), UnsupportedKey);
}
