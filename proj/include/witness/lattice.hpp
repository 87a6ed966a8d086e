#pragma once

#include <compare>
#include <initializer_list>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace witness {

struct PrincipalId {
  PrincipalId() = default;
  explicit PrincipalId(std::string name);

  std::string name;

  auto operator<=>(const PrincipalId&) const = default;
};

using PrincipalSet = std::set<PrincipalId>;

PrincipalSet principals(std::initializer_list<std::string_view> names);

/// An element of the lattice of principal sets, ordered by reverse inclusion:
/// the fewer principals are authorized to know a value, the more secret it is.
///
/// Bottom (everybody, public) is kept symbolic so that "strictly above bottom"
/// is decidable without knowing the universe. A level built with a universe
/// whose authorized set equals that universe is normalized to bottom.
/// Top is the empty set.
class SecurityLevel {
 public:
  /// Top.
  SecurityLevel() = default;

  static SecurityLevel bottom();
  static SecurityLevel top();
  static SecurityLevel of(PrincipalSet authorized,
                          std::shared_ptr<const PrincipalSet> universe = nullptr);

  bool is_bottom() const { return bottom_; }
  bool is_top() const { return !bottom_ && members_.empty(); }

  /// Authorized principals; empty for bottom (use is_bottom()).
  const PrincipalSet& authorized() const { return members_; }

  /// Bottom authorizes everybody.
  bool authorizes(const PrincipalId& p) const;

  const std::shared_ptr<const PrincipalSet>& universe() const { return universe_; }

  /// "⊥", "⊤" or "{A, B, S}".
  std::string str() const;

  friend bool operator==(const SecurityLevel& a, const SecurityLevel& b) {
    return a.bottom_ == b.bottom_ && a.members_ == b.members_;
  }

 private:
  bool bottom_ = false;
  PrincipalSet members_;
  std::shared_ptr<const PrincipalSet> universe_;
};

/// a ⊑ b: b is at least as secret as a.
bool leq(const SecurityLevel& a, const SecurityLevel& b);

/// Strictly above: a ⊐ b.
bool strictly_above(const SecurityLevel& a, const SecurityLevel& b);

/// Greatest lower bound (union of authorized sets).
SecurityLevel meet(const SecurityLevel& a, const SecurityLevel& b);

/// Least upper bound (intersection of authorized sets).
SecurityLevel join(const SecurityLevel& a, const SecurityLevel& b);

}  // namespace witness
