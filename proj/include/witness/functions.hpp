#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "witness/context.hpp"
#include "witness/lattice.hpp"
#include "witness/message.hpp"
#include "witness/substitution.hpp"

namespace witness {

/// Which neighbours of an atom a selection keeps under its external
/// protective key k: Max keeps every identity and k⁻¹, EK keeps k⁻¹ only,
/// N keeps the identities only.
enum class SelectionVariant { Max, EK, N };

std::string_view to_string(SelectionVariant v);
std::optional<SelectionVariant> parse_variant(std::string_view name);

/// Removes every variable except `keep`. Concatenations whose parts all
/// vanish collapse; a message that vanishes entirely becomes ε.
Message derive(const Message& m, const std::optional<Variable>& keep = std::nullopt);

/// Removes exactly the variables in `remove`.
Message derive_vars(const Message& m, const std::set<Variable>& remove);

/// Child indices from the root: i for the i-th part of a concatenation,
/// 0 for the body and 1 for the key of an encryption.
using Position = std::vector<std::size_t>;

struct Occurrence {
  Position position;
  /// Outermost key k with ⌜k⁻¹⌝ ⊒ ⌜target⌝ around this occurrence, and the
  /// position of the encryption it keys. Empty when the occurrence is exposed.
  std::optional<Atom> key;
  Position protected_section;
};

/// Every occurrence of `target` (an atom or variable) outside key position.
/// Throws AtomAbsent when there is none and UnsupportedKey for non-atomic keys.
std::vector<Occurrence> protective_key(const Message& target, const Message& m,
                                       const VerificationContext& ctx);

struct Selection {
  enum class Kind { Section, Infimum, Supremum };

  Kind kind = Kind::Supremum;
  /// Selected identities and, when selected, the reverse protective key.
  std::set<Atom> atoms;
  std::optional<Atom> key;

  std::string str() const;
};

/// One selection per occurrence of `target` in m; a single Supremum
/// selection when `target` does not occur.
std::vector<Selection> select(SelectionVariant v, const Message& target, const Message& m,
                              const VerificationContext& ctx);

/// Identities map to themselves, a selected key to the principals allowed
/// to know it.
SecurityLevel psi(const Selection& s, const VerificationContext& ctx);

/// F(α, m): meet over the occurrences of α of ψ ∘ select.
SecurityLevel eval_f(SelectionVariant v, const Message& target, const Message& m,
                     const VerificationContext& ctx);

/// F(α, M) = ⊓ F(α, m) over M; ⊤ for the empty set.
SecurityLevel eval_f(SelectionVariant v, const Message& target, std::span<const Message> ms,
                     const VerificationContext& ctx);

/// F'(α, m): F evaluated on the derivative of m that keeps α when α is a
/// variable. When α is an atom absent from ∂m and `run` maps some variable X
/// of m to α, evaluates X in ∂[X̄]m instead. Absent targets give ⊤.
SecurityLevel f_prime(SelectionVariant v, const Message& target, const Message& m,
                      const VerificationContext& ctx, const Substitution* run = nullptr);

}  // namespace witness
