#include <doctest.h>

#include "support.hpp"
#include "witness/errors.hpp"
#include "witness/report.hpp"

using namespace witness;

namespace {

AnalysisReport report_for(const std::string& name, bool auth = true) {
  auto ctx = wtest::corpus_ctx(name);
  auto model = wtest::corpus_model(name, ctx);
  return build_report(model, ctx, SelectionVariant::Max,
                      auth ? ctx.challenge() : std::optional<Challenge>{});
}

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

}  // namespace

TEST_CASE("modified protocol text report") {
  auto r = report_for("woolam_mod");
  CHECK(r.secrecy == Verdict::Pass);
  CHECK(r.authentication_verdict == Verdict::Pass);
  CHECK(overall(r) == Verdict::Pass);
  auto text = render_text(r);
  CHECK(ends_with(text, "WooLamMod is correct with respect to authentication\n"));
  CHECK(text.find("receiving: F'(kab^i, X) = ⊤") != std::string::npos);
  CHECK(text.find("F'(kab^i, {B.kab^i}kas) = {A, B, S}") != std::string::npos);
  CHECK(text.find("F'(Nb^i, {Nb^i.{A.Z}kbs}kbs) = {A, B, S}") != std::string::npos);
  CHECK(r.context_digest.size() == 64);
}

TEST_CASE("original protocol names the failed clause") {
  auto r = report_for("woolam_orig");
  CHECK(overall(r) == Verdict::NoDecision);
  auto text = render_text(r);
  CHECK(text.find("A ∉ {B, S}") != std::string::npos);
  CHECK(text.find("no decision") != std::string::npos);
}

TEST_CASE("secrecy only") {
  auto r = report_for("woolam_mod", false);
  CHECK_FALSE(r.authentication);
  CHECK(overall(r) == Verdict::Pass);
  CHECK(ends_with(render_text(r), "is correct with respect to secrecy\n"));
  auto leaky = report_for("leaky");
  CHECK(overall(leaky) == Verdict::NoDecision);
  CHECK(render_text(leaky).find("failed: A^1 step i.1, kab^i") != std::string::npos);
}

TEST_CASE("json round trip") {
  for (const auto& name : wtest::corpus_names()) {
    auto r = report_for(name);
    auto json = render_json(r);
    CHECK(report_from_json(json) == r);
    CHECK(render_json(report_from_json(json)) == json);
  }
}

TEST_CASE("json levels") {
  auto json = render_json(report_for("woolam_mod"));
  CHECK(json.find("\"format_version\": 1") != std::string::npos);
  CHECK(json.find("\"bottom\"") != std::string::npos);
  CHECK(json.find("\"A\",") != std::string::npos);
}

TEST_CASE("tampered verdicts are caught") {
  auto r = report_for("woolam_mod");
  r.steps[0].pass = !r.steps[0].pass;
  CHECK_THROWS_AS(render_text(r), Error);
  auto r2 = report_for("woolam_orig");
  r2.authentication_verdict = Verdict::Pass;
  CHECK_THROWS_AS(render_json(r2), Error);
}

TEST_CASE("malformed json") {
  CHECK_THROWS_AS(report_from_json("{"), Error);
  CHECK_THROWS_AS(report_from_json("{\"format_version\": 9}"), Error);
  CHECK_THROWS_AS(report_from_json("[]"), Error);
}

TEST_CASE("empty protocol report") {
  auto ctx = wtest::corpus_ctx("broadcast");
  auto m = build_model(parse_narration("protocol Nothing\n", ctx), ctx);
  auto r = build_report(m, ctx, SelectionVariant::Max, std::nullopt);
  CHECK(r.steps.empty());
  CHECK(overall(r) == Verdict::Pass);
}
