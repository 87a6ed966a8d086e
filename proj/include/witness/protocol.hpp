#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "witness/context.hpp"
#include "witness/message.hpp"

namespace witness {

struct NarrationStep {
  unsigned index = 0;
  PrincipalId sender;
  PrincipalId receiver;
  Message payload;
};

struct Narration {
  std::string name;
  std::vector<NarrationStep> steps;
};

/// Parses the Alice-and-Bob narration DSL:
///
///     protocol WooLamMod
///     1. A -> B : A
///     2. B -> A : Nb
///     3. A -> B : {B.kab}kas
///
/// Atoms are resolved against the context; encryption keys must be declared
/// keys. Throws SyntaxError or UndeclaredAtom with line and column.
Narration parse_narration(std::string_view text, const VerificationContext& ctx);

/// Narration back in DSL form.
std::string to_string(const Narration& n);

/// Session tag carried by fresh atoms in generalized roles.
inline constexpr std::string_view kSessionTag = "i";

enum class Direction { Send, Receive };

struct RoleStep {
  unsigned index = 0;  // narration step
  Direction direction = Direction::Send;
  PrincipalId partner;  // reached through the intruder
  Message payload;

  /// "i.3"
  std::string id() const;
};

/// A principal's view of a narration prefix ending at one of its steps.
struct GeneralizedRole {
  PrincipalId owner;
  unsigned ordinal = 0;  // 1-based among the roles of `owner`
  std::vector<RoleStep> steps;

  /// "A^2"
  std::string name() const;

  bool ends_with_send() const;
  const RoleStep& last() const { return steps.back(); }

  /// Payloads received before the last step.
  std::vector<Message> received_before_last() const;

  /// "<i.1, A -> I(B): A>.<i.2, I(B) -> A: X>"
  std::string str() const;
};

std::string to_string(const RoleStep& step, const PrincipalId& owner);

/// One role per send step of each principal (the prefix of its view ending
/// there), plus its complete view when that ends with a receive. Partners
/// are reached through the intruder, fresh atoms carry the session tag, and
/// received components the owner cannot verify are replaced by variables:
/// an encryption under a key the owner does not hold becomes one variable,
/// atoms the owner does not know become variables, everything else is kept.
std::vector<GeneralizedRole> extract_roles(const Narration& n, const VerificationContext& ctx);

/// All step payloads of all roles, in role order, with multiplicity.
std::vector<Message> generated_messages(std::span<const GeneralizedRole> roles);

/// Deduplicated, renamed-apart encryption patterns. Pattern k (1-based)
/// carries rename tag k.
class EncryptionPatternSet {
 public:
  EncryptionPatternSet() = default;
  explicit EncryptionPatternSet(std::vector<Message> renamed) : patterns_(std::move(renamed)) {}

  std::span<const Message> patterns() const { return patterns_; }
  std::size_t size() const { return patterns_.size(); }
  bool empty() const { return patterns_.empty(); }
  const Message& operator[](std::size_t i) const { return patterns_[i]; }

  /// Adds an already renamed pattern.
  void push_back(Message pattern) { patterns_.push_back(std::move(pattern)); }

 private:
  std::vector<Message> patterns_;
};

/// Keeps encryption-rooted messages (and encryption-rooted components of
/// top-level concatenations), drops duplicates modulo renaming and renames
/// the survivors apart.
EncryptionPatternSet encryption_patterns(std::span<const Message> messages);

struct ProtocolModel {
  Narration narration;
  std::vector<GeneralizedRole> roles;
  EncryptionPatternSet patterns;
};

ProtocolModel build_model(Narration narration, const VerificationContext& ctx);

}  // namespace witness
