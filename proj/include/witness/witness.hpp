#pragma once

#include <optional>
#include <string>
#include <vector>

#include "witness/context.hpp"
#include "witness/functions.hpp"
#include "witness/protocol.hpp"

namespace witness {

/// A pattern that could have produced a sent message, with the most general
/// unifier of the two.
struct CandidateSource {
  std::size_t pattern_index = 0;  // 0-based index into the pattern set
  Message pattern;
  Substitution mgu;
};

/// Patterns unifiable with an encryption-rooted sent message, in pattern order.
std::vector<CandidateSource> candidate_sources(const Message& r_plus,
                                               const EncryptionPatternSet& patterns);

struct SourceEvaluation {
  CandidateSource source;
  /// The sent message instantiated by the source, target kept, other
  /// variables derived away.
  Message instance;
  SecurityLevel value;
};

/// A component of a sent message evaluated without candidate sources
/// (not encrypted, so the target is exposed or absent).
struct DirectEvaluation {
  Message component;
  SecurityLevel value;
};

struct LowerBound {
  SecurityLevel value;
  std::vector<SourceEvaluation> sources;
  std::vector<DirectEvaluation> direct;
};

/// Υ(α, r⁺): meet of F' over every candidate source of every encrypted
/// component of r⁺ containing α; exposed components are evaluated directly.
/// Throws AtomAbsent, or NoSource when an encrypted component has no source.
LowerBound lower_bound(SelectionVariant v, const Message& target, const Message& r_plus,
                       const EncryptionPatternSet& patterns, const VerificationContext& ctx);

struct ReceivedEvaluation {
  Message message;
  SecurityLevel value;
};

/// Secrecy criterion for one atom or variable of a sent message:
/// Υ(α, r⁺) ⊒ ⌜α⌝ ⊓ F'(α, R⁻).
struct StepCheck {
  std::string role;
  std::string step;
  Message r_plus;
  Message target;
  SecurityLevel declared;
  SecurityLevel received_bound;
  std::vector<ReceivedEvaluation> received;
  LowerBound lower;
  bool pass = false;
};

/// Atoms outside key position and variables of m, in order of first occurrence.
std::vector<Message> checked_targets(const Message& m);

/// Checks every target of the role's final (send) step.
std::vector<StepCheck> check_step(const GeneralizedRole& role, const EncryptionPatternSet& patterns,
                                  const VerificationContext& ctx, SelectionVariant v);

struct SecrecyResult {
  bool pass = true;
  std::vector<StepCheck> checks;
};

/// Sufficient condition only: a failing check means no decision.
SecrecyResult check_secrecy(const ProtocolModel& model, const VerificationContext& ctx,
                            SelectionVariant v);

struct AuthCheck {
  PrincipalId verifier;
  PrincipalId claimant;
  Message challenge;
  std::string step;
  Message message;  // the verifier's view of the authenticating message
  SecurityLevel level;
  bool claimant_in_level = false;
  bool above_bottom = false;
  bool pass = false;
};

struct AuthenticationResult {
  bool pass = false;
  bool secrecy_pass = false;
  AuthCheck check;
};

/// Authentication holds when secrecy holds and F'(challenge, m) names the
/// claimant and is strictly above ⊥. Throws ChallengeNotReceived or
/// ChallengeAtomAbsent. Reuses `secrecy` when given.
AuthenticationResult check_authentication(const ProtocolModel& model,
                                          const VerificationContext& ctx, SelectionVariant v,
                                          const Challenge& challenge,
                                          const SecrecyResult* secrecy = nullptr);

/// Υ(α, m) ⊑ F'(α, m) for a sent pattern m containing α.
bool bound_ordering_check(SelectionVariant v, const Message& target, const Message& m,
                          const EncryptionPatternSet& patterns, const VerificationContext& ctx,
                          const Substitution* run = nullptr);

}  // namespace witness
