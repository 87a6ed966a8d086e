#include "witness/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "witness/errors.hpp"

namespace witness {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::NoDecision: return "no-decision";
    case Verdict::NotChecked: return "not-checked";
  }
  return "?";
}

std::string context_digest(const VerificationContext& ctx) {
  const std::string& text = ctx.source();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 failed");
  std::string out;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

AnalysisReport build_report(const ProtocolModel& model, const VerificationContext& ctx,
                            SelectionVariant v, const std::optional<Challenge>& challenge) {
  AnalysisReport r;
  r.protocol = model.narration.name;
  r.function = std::string(to_string(v));
  r.context_digest = context_digest(ctx);
  for (const auto& role : model.roles) r.roles.push_back({role.name(), role.str()});
  for (const auto& p : model.patterns.patterns()) r.patterns.push_back(to_string(p));

  auto secrecy = check_secrecy(model, ctx, v);
  for (const auto& c : secrecy.checks) {
    StepRecord s;
    s.role = c.role;
    s.step = c.step;
    s.target = to_string(c.target);
    s.sent = to_string(c.r_plus);
    s.declared = c.declared;
    s.received_bound = c.received_bound;
    s.lower_bound = c.lower.value;
    for (const auto& e : c.received) s.received.push_back({to_string(e.message), e.value});
    for (const auto& e : c.lower.sources) {
      s.sources.push_back({e.source.pattern_index + 1, to_string(e.source.pattern),
                           e.source.mgu.str(), to_string(e.instance), e.value});
    }
    for (const auto& e : c.lower.direct) s.direct.push_back({to_string(e.component), e.value});
    s.pass = c.pass;
    r.steps.push_back(std::move(s));
  }
  r.secrecy = secrecy.pass ? Verdict::Pass : Verdict::NoDecision;

  if (challenge) {
    auto auth = check_authentication(model, ctx, v, *challenge, &secrecy);
    const auto& c = auth.check;
    r.authentication = AuthRecord{c.verifier.name, c.claimant.name, to_string(c.challenge), c.step,
                                  to_string(c.message), c.level, c.claimant_in_level,
                                  c.above_bottom, c.pass};
    r.authentication_verdict = auth.pass ? Verdict::Pass : Verdict::NoDecision;
  }
  return r;
}

Verdict overall(const AnalysisReport& r) {
  return r.authentication ? r.authentication_verdict : r.secrecy;
}

namespace {

bool step_holds(const StepRecord& s) {
  return leq(meet(s.declared, s.received_bound), s.lower_bound);
}

// Re-derives every verdict from the levels; a mismatch means the report was
// assembled or edited inconsistently.
void recheck(const AnalysisReport& r) {
  bool all = true;
  for (const auto& s : r.steps) {
    if (step_holds(s) != s.pass)
      throw Error("inconsistent report: verdict of " + s.role + " " + s.step + " for " + s.target);
    all = all && s.pass;
  }
  if (r.secrecy != Verdict::NotChecked && (r.secrecy == Verdict::Pass) != all)
    throw Error("inconsistent report: secrecy verdict");
  if (r.authentication) {
    const auto& a = *r.authentication;
    bool in = a.level.authorizes(PrincipalId(a.claimant));
    bool above = strictly_above(a.level, SecurityLevel::bottom());
    if (in != a.claimant_in_level || above != a.above_bottom || a.pass != (in && above))
      throw Error("inconsistent report: authentication clauses");
    bool pass = all && a.pass;
    if ((r.authentication_verdict == Verdict::Pass) != pass)
      throw Error("inconsistent report: authentication verdict");
  }
}

std::string function_title(const std::string& f) {
  if (f == "max") return "F_MAX^EK";
  if (f == "ek") return "F_EK^EK";
  if (f == "n") return "F_N^EK";
  return f;
}

}  // namespace

std::string render_text(const AnalysisReport& r) {
  recheck(r);
  std::ostringstream o;
  o << "protocol " << r.protocol << "\n";
  o << "function " << function_title(r.function) << "\n";
  o << "context sha256 " << r.context_digest << "\n\n";

  o << "generalized roles\n";
  for (const auto& role : r.roles) o << "  " << role.name << " = " << role.text << "\n";
  o << "\nencryption patterns\n";
  for (std::size_t i = 0; i < r.patterns.size(); ++i)
    o << "  " << i + 1 << ". " << r.patterns[i] << "\n";

  o << "\nsecrecy\n";
  if (r.steps.empty()) o << "  no send steps\n";
  for (const auto& s : r.steps) {
    const auto& a = s.target;
    o << "\n  " << s.role << " step " << s.step << ", " << a << "\n";
    if (s.received.empty()) {
      o << "    receiving: nothing received, F'(" << a << ", R-) = ⊤\n";
    } else {
      for (const auto& e : s.received)
        o << "    receiving: F'(" << a << ", " << e.message << ") = " << e.value.str() << "\n";
      if (s.received.size() > 1) o << "    F'(" << a << ", R-) = " << s.received_bound.str() << "\n";
    }
    o << "    sending: " << s.sent << "\n";
    for (const auto& d : s.direct)
      o << "      unencrypted " << d.component << ": F(" << a << ", " << d.component
        << ") = " << d.value.str() << "\n";
    for (const auto& src : s.sources) {
      o << "      source " << src.pattern << " " << src.pattern_text << " with " << src.mgu << "\n";
      o << "        F'(" << a << ", " << src.instance << ") = " << src.value.str() << "\n";
    }
    o << "    lower bound " << s.lower_bound.str() << ", declared " << s.declared.str() << "\n";
    auto need = meet(s.declared, s.received_bound);
    o << "    " << s.lower_bound.str() << (s.pass ? " ⊒ " : " ⋣ ") << need.str() << ": "
      << (s.pass ? "pass" : "fail") << "\n";
  }

  bool secrecy_ok = r.secrecy == Verdict::Pass;
  o << "\nsecrecy: " << to_string(r.secrecy) << "\n";
  if (!secrecy_ok) {
    for (const auto& s : r.steps)
      if (!s.pass) o << "  failed: " << s.role << " step " << s.step << ", " << s.target << "\n";
  }

  if (!r.authentication) {
    if (secrecy_ok)
      o << "\n" << r.protocol << " is correct with respect to secrecy\n";
    else
      o << "\nno decision: " << r.protocol << " does not meet the secrecy criterion\n";
    return o.str();
  }

  const auto& au = *r.authentication;
  o << "\nauthentication\n";
  o << "  verifier " << au.verifier << ", claimant " << au.claimant << ", challenge "
    << au.challenge << " received at " << au.step << "\n";
  o << "  F'(" << au.challenge << ", " << au.message << ") = " << au.level.str() << "\n";
  o << "  " << au.claimant << (au.claimant_in_level ? " ∈ " : " ∉ ") << au.level.str() << "\n";
  o << "  " << au.level.str() << (au.above_bottom ? " ⊐ ⊥" : " is not above ⊥") << "\n";
  o << "authentication: " << to_string(r.authentication_verdict) << "\n\n";

  if (r.authentication_verdict == Verdict::Pass) {
    o << r.protocol << " is correct with respect to authentication\n";
  } else {
    std::vector<std::string> why;
    if (!secrecy_ok) why.push_back("secrecy criterion not met");
    if (!au.claimant_in_level) why.push_back(au.claimant + " ∉ " + au.level.str());
    if (!au.above_bottom) why.push_back(au.level.str() + " is not above ⊥");
    std::string joined;
    for (const auto& w : why) joined += (joined.empty() ? "" : "; ") + w;
    o << "no decision: " << r.protocol << " does not meet the authentication criterion ("
      << joined << ")\n";
  }
  return o.str();
}

// JSON ----------------------------------------------------------------------

namespace {

using json = nlohmann::ordered_json;

json level_json(const SecurityLevel& l) {
  if (l.is_bottom()) return "bottom";
  json a = json::array();
  for (const auto& p : l.authorized()) a.push_back(p.name);
  return a;
}

SecurityLevel level_from(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "bottom") throw Error("bad level '" + j.get<std::string>() + "'");
    return SecurityLevel::bottom();
  }
  if (!j.is_array()) throw Error("a level is \"bottom\" or an array of principals");
  PrincipalSet s;
  for (const auto& p : j) s.emplace(p.get<std::string>());
  return SecurityLevel::of(std::move(s));
}

Verdict verdict_from(const json& j) {
  auto v = j.get<std::string>();
  for (auto c : {Verdict::Pass, Verdict::NoDecision, Verdict::NotChecked})
    if (to_string(c) == v) return c;
  throw Error("bad verdict '" + v + "'");
}

}  // namespace

std::string render_json(const AnalysisReport& r) {
  recheck(r);
  json j;
  j["format_version"] = r.format_version;
  j["protocol"] = r.protocol;
  j["function"] = r.function;
  j["context_sha256"] = r.context_digest;
  j["roles"] = json::array();
  for (const auto& role : r.roles) j["roles"].push_back({{"name", role.name}, {"steps", role.text}});
  j["patterns"] = r.patterns;
  j["steps"] = json::array();
  for (const auto& s : r.steps) {
    json e;
    e["role"] = s.role;
    e["step"] = s.step;
    e["target"] = s.target;
    e["sent"] = s.sent;
    e["declared"] = level_json(s.declared);
    e["received"] = json::array();
    for (const auto& x : s.received)
      e["received"].push_back({{"message", x.message}, {"level", level_json(x.value)}});
    e["received_bound"] = level_json(s.received_bound);
    e["sources"] = json::array();
    for (const auto& x : s.sources) {
      e["sources"].push_back({{"pattern", x.pattern},
                              {"pattern_text", x.pattern_text},
                              {"mgu", x.mgu},
                              {"instance", x.instance},
                              {"level", level_json(x.value)}});
    }
    e["direct"] = json::array();
    for (const auto& x : s.direct)
      e["direct"].push_back({{"component", x.component}, {"level", level_json(x.value)}});
    e["lower_bound"] = level_json(s.lower_bound);
    e["pass"] = s.pass;
    j["steps"].push_back(std::move(e));
  }
  j["secrecy"] = to_string(r.secrecy);
  if (r.authentication) {
    const auto& a = *r.authentication;
    j["authentication"] = {{"verifier", a.verifier},
                           {"claimant", a.claimant},
                           {"challenge", a.challenge},
                           {"step", a.step},
                           {"message", a.message},
                           {"level", level_json(a.level)},
                           {"claimant_in_level", a.claimant_in_level},
                           {"above_bottom", a.above_bottom},
                           {"pass", a.pass}};
  } else {
    j["authentication"] = nullptr;
  }
  j["authentication_verdict"] = to_string(r.authentication_verdict);
  return j.dump(2) + "\n";
}

AnalysisReport report_from_json(std::string_view text) {
  AnalysisReport r;
  try {
    auto j = json::parse(text);
    r.format_version = j.at("format_version").get<int>();
    if (r.format_version != kReportFormatVersion)
      throw Error("unsupported report format " + std::to_string(r.format_version));
    r.protocol = j.at("protocol").get<std::string>();
    r.function = j.at("function").get<std::string>();
    r.context_digest = j.at("context_sha256").get<std::string>();
    for (const auto& e : j.at("roles"))
      r.roles.push_back({e.at("name").get<std::string>(), e.at("steps").get<std::string>()});
    r.patterns = j.at("patterns").get<std::vector<std::string>>();
    for (const auto& e : j.at("steps")) {
      StepRecord s;
      s.role = e.at("role").get<std::string>();
      s.step = e.at("step").get<std::string>();
      s.target = e.at("target").get<std::string>();
      s.sent = e.at("sent").get<std::string>();
      s.declared = level_from(e.at("declared"));
      for (const auto& x : e.at("received"))
        s.received.push_back({x.at("message").get<std::string>(), level_from(x.at("level"))});
      s.received_bound = level_from(e.at("received_bound"));
      for (const auto& x : e.at("sources")) {
        s.sources.push_back({x.at("pattern").get<std::size_t>(),
                             x.at("pattern_text").get<std::string>(), x.at("mgu").get<std::string>(),
                             x.at("instance").get<std::string>(), level_from(x.at("level"))});
      }
      for (const auto& x : e.at("direct"))
        s.direct.push_back({x.at("component").get<std::string>(), level_from(x.at("level"))});
      s.lower_bound = level_from(e.at("lower_bound"));
      s.pass = e.at("pass").get<bool>();
      r.steps.push_back(std::move(s));
    }
    r.secrecy = verdict_from(j.at("secrecy"));
    if (const auto& a = j.at("authentication"); !a.is_null()) {
      r.authentication = AuthRecord{a.at("verifier").get<std::string>(),
                                    a.at("claimant").get<std::string>(),
                                    a.at("challenge").get<std::string>(),
                                    a.at("step").get<std::string>(),
                                    a.at("message").get<std::string>(),
                                    level_from(a.at("level")),
                                    a.at("claimant_in_level").get<bool>(),
                                    a.at("above_bottom").get<bool>(),
                                    a.at("pass").get<bool>()};
    }
    r.authentication_verdict = verdict_from(j.at("authentication_verdict"));
  } catch (const json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
  return r;
}

}  // namespace witness
