#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "witness/lattice.hpp"
#include "witness/message.hpp"

namespace witness {

/// Authentication goal: after receiving the payload of narration step `step`,
/// `verifier` must be convinced that `claimant` took part, witnessed by `atom`.
struct Challenge {
  PrincipalId verifier;
  PrincipalId claimant;
  unsigned step = 0;
  std::string atom;

  friend bool operator==(const Challenge&, const Challenge&) = default;
};

/// Name of the opponent; every context must declare it as a principal.
inline constexpr std::string_view kIntruderName = "I";

/// Principal universe, security levels, key ownership and initial intruder
/// knowledge. Immutable once loaded.
///
/// File format, one declaration per line, '#' starts a comment:
///
///     principals A, B, S, I
///     key kas shared(A,S)
///     key kab fresh(A) level {A,B,S}
///     nonce Nb fresh(B) level public
///     intruder knows kis, Ni
///     challenge auth verifier=B claimant=A step=5 challenge=Nb
class VerificationContext {
 public:
  struct AtomInfo {
    AtomKind kind = AtomKind::Nonce;
    SecurityLevel level;
    std::optional<PrincipalId> generator;  // fresh(P)
    PrincipalSet owners;                   // who holds a key initially
  };

  static VerificationContext parse(std::string_view text);
  static VerificationContext load(const std::filesystem::path& path);

  const PrincipalSet& universe() const { return *universe_; }
  const std::shared_ptr<const PrincipalSet>& universe_ptr() const { return universe_; }
  PrincipalId intruder() const { return PrincipalId(std::string(kIntruderName)); }

  /// Level within this context's universe (normalized).
  SecurityLevel make_level(PrincipalSet authorized) const;

  /// Identities are public, variables are public, parameters take the level of
  /// the atom they were renamed from, session tags are ignored.
  SecurityLevel level_of(const Atom& a) const;
  SecurityLevel level_of(const Message& leaf) const;

  /// Keys are symmetric: k⁻¹ = k.
  Atom reverse_key(const Atom& k) const;

  bool knows_key(const PrincipalId& agent, const Atom& k) const;

  std::optional<AtomKind> kind_of(std::string_view name) const;
  AtomResolver resolver() const;

  /// Generator of a fresh (session-indexed) atom, if declared fresh.
  std::optional<PrincipalId> generator_of(std::string_view name) const;

  /// The atom named `name` as it appears in session-indexed roles.
  Atom atom(std::string_view name, std::string_view session = {}) const;

  const std::vector<Atom>& intruder_knowledge() const { return intruder_knowledge_; }
  const std::optional<Challenge>& challenge() const { return challenge_; }

  /// Declared non-identity atoms, by name.
  const std::map<std::string, AtomInfo, std::less<>>& declarations() const { return atoms_; }

  /// Text the context was parsed from.
  const std::string& source() const { return source_; }

 private:
  const AtomInfo& info(std::string_view name) const;

  std::shared_ptr<const PrincipalSet> universe_ = std::make_shared<const PrincipalSet>();
  std::map<std::string, AtomInfo, std::less<>> atoms_;
  std::vector<Atom> intruder_knowledge_;
  std::optional<Challenge> challenge_;
  std::string source_;
};

}  // namespace witness
