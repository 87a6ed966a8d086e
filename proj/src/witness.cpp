#include "witness/witness.hpp"

#include <algorithm>

#include "witness/errors.hpp"

namespace witness {

std::vector<CandidateSource> candidate_sources(const Message& r_plus,
                                               const EncryptionPatternSet& patterns) {
  if (!r_plus.is_enc())
    throw Error("candidate sources are searched for encrypted messages only, got '" +
                to_string(r_plus) + "'");
  std::vector<CandidateSource> out;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (auto mgu = unify(patterns[i], r_plus)) out.push_back({i, patterns[i], std::move(*mgu)});
  }
  return out;
}

namespace {

std::optional<Variable> kept(const Message& target) {
  if (target.is_variable()) return target.as_variable();
  return std::nullopt;
}

// The source's instance of the sent message with the target left in place:
// the target's own binding is dropped so it keeps marking its positions.
Message instance_of(const Message& sent, const Message& target, const Substitution& mgu) {
  Substitution s;
  for (const auto& [leaf, value] : mgu)
    if (leaf != target) s.bind(leaf, value);
  return derive(apply(s, sent), kept(target));
}

}  // namespace

LowerBound lower_bound(SelectionVariant v, const Message& target, const Message& r_plus,
                       const EncryptionPatternSet& patterns, const VerificationContext& ctx) {
  if (!occurs_in_content(target, r_plus))
    throw AtomAbsent("'" + to_string(target) + "' does not occur in '" + to_string(r_plus) + "'");
  LowerBound out;
  out.value = SecurityLevel::top();
  for (const auto& c : components(r_plus)) {
    if (!occurs_in_content(target, c)) continue;
    if (!c.is_enc()) {
      auto value = eval_f(v, target, derive(c, kept(target)), ctx);
      out.value = meet(out.value, value);
      out.direct.push_back({c, value});
      continue;
    }
    auto sources = candidate_sources(c, patterns);
    if (sources.empty()) throw NoSource("no encryption pattern unifies with '" + to_string(c) + "'");
    for (auto& src : sources) {
      Message inst = instance_of(c, target, src.mgu);
      auto value = eval_f(v, target, inst, ctx);
      out.value = meet(out.value, value);
      out.sources.push_back({std::move(src), std::move(inst), value});
    }
  }
  return out;
}

namespace {

void collect_targets(const Message& m, std::vector<Message>& out) {
  switch (m.kind()) {
    case Message::Kind::Atom:
    case Message::Kind::Variable:
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
      break;
    case Message::Kind::Concat:
      for (const auto& p : m.parts()) collect_targets(p, out);
      break;
    case Message::Kind::Enc: collect_targets(m.body(), out); break;
    case Message::Kind::Empty: break;
  }
}

}  // namespace

std::vector<Message> checked_targets(const Message& m) {
  std::vector<Message> out;
  collect_targets(m, out);
  return out;
}

std::vector<StepCheck> check_step(const GeneralizedRole& role, const EncryptionPatternSet& patterns,
                                  const VerificationContext& ctx, SelectionVariant v) {
  if (!role.ends_with_send())
    throw Error("role " + role.name() + " does not end with a send step");
  const Message& r_plus = role.last().payload;
  const auto received = role.received_before_last();

  std::vector<StepCheck> out;
  for (const auto& target : checked_targets(r_plus)) {
    StepCheck c;
    c.role = role.name();
    c.step = role.last().id();
    c.r_plus = r_plus;
    c.target = target;
    c.declared = ctx.level_of(target);
    c.received_bound = SecurityLevel::top();
    for (const auto& r : received) {
      auto value = f_prime(v, target, r, ctx);
      c.received_bound = meet(c.received_bound, value);
      c.received.push_back({r, value});
    }
    c.lower = lower_bound(v, target, r_plus, patterns, ctx);
    c.pass = leq(meet(c.declared, c.received_bound), c.lower.value);
    out.push_back(std::move(c));
  }
  return out;
}

SecrecyResult check_secrecy(const ProtocolModel& model, const VerificationContext& ctx,
                            SelectionVariant v) {
  SecrecyResult out;
  for (const auto& role : model.roles) {
    if (!role.ends_with_send()) continue;
    for (auto& c : check_step(role, model.patterns, ctx, v)) {
      out.pass = out.pass && c.pass;
      out.checks.push_back(std::move(c));
    }
  }
  return out;
}

AuthenticationResult check_authentication(const ProtocolModel& model,
                                          const VerificationContext& ctx, SelectionVariant v,
                                          const Challenge& challenge,
                                          const SecrecyResult* secrecy) {
  const GeneralizedRole* role = nullptr;
  for (const auto& r : model.roles) {
    if (r.owner == challenge.verifier && r.last().index == challenge.step) role = &r;
  }
  if (!role || role->last().direction != Direction::Receive)
    throw ChallengeNotReceived("step " + std::to_string(challenge.step) + " is not received by " +
                               challenge.verifier.name);

  AuthenticationResult out;
  auto& c = out.check;
  c.verifier = challenge.verifier;
  c.claimant = challenge.claimant;
  c.step = role->last().id();
  c.message = role->last().payload;
  std::string session = ctx.generator_of(challenge.atom) ? std::string(kSessionTag) : std::string();
  c.challenge = Message::atom(ctx.atom(challenge.atom, session));
  if (!occurs_in_content(c.challenge, c.message))
    throw ChallengeAtomAbsent("challenge '" + to_string(c.challenge) + "' does not occur in " +
                              challenge.verifier.name + "'s view '" + to_string(c.message) +
                              "' of step " + std::to_string(challenge.step));

  c.level = f_prime(v, c.challenge, c.message, ctx);
  c.claimant_in_level = c.level.authorizes(c.claimant);
  c.above_bottom = strictly_above(c.level, SecurityLevel::bottom());
  c.pass = c.claimant_in_level && c.above_bottom;

  out.secrecy_pass = secrecy ? secrecy->pass : check_secrecy(model, ctx, v).pass;
  out.pass = out.secrecy_pass && c.pass;
  return out;
}

bool bound_ordering_check(SelectionVariant v, const Message& target, const Message& m,
                          const EncryptionPatternSet& patterns, const VerificationContext& ctx,
                          const Substitution* run) {
  return leq(lower_bound(v, target, m, patterns, ctx).value, f_prime(v, target, m, ctx, run));
}

}  // namespace witness
