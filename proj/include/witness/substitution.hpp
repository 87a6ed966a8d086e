#pragma once

#include <map>
#include <optional>
#include <string>

#include "witness/message.hpp"

namespace witness {

/// Finite map from bindable leaves (variables and role-parameter atoms) to
/// messages. Substitutions produced by unify() are idempotent.
class Substitution {
 public:
  using Map = std::map<Message, Message>;

  /// Throws Error if `leaf` is neither a variable nor a parameter atom.
  void bind(const Message& leaf, Message value);

  const Message* find(const Message& leaf) const;
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  Map::const_iterator begin() const { return map_.begin(); }
  Map::const_iterator end() const { return map_.end(); }

  /// "{B_1 ↦ B, kas_1 ↦ kas}"
  std::string str() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  Map map_;
};

bool is_bindable(const Message& m);

Message apply(const Substitution& s, const Message& m);

/// Most general unifier under the empty equational theory. Parameter atoms
/// unify with any atom of the same kind; concatenations must agree in arity.
/// Prefers binding leaves of `a` when both sides are bindable.
std::optional<Substitution> unify(const Message& a, const Message& b);

/// Copy of m whose atoms become role parameters and whose variables are
/// re-indexed, all with the given tag. Distinct tags give disjoint copies.
Message rename_apart(const Message& m, unsigned tag);

/// Maps parameters back to the atoms they were renamed from and drops
/// variable rename indices.
Message erase_parameters(const Message& m);

/// Representative of m modulo renaming of parameters and variables.
Message alpha_normal(const Message& m);

/// Issues rename tags that were never issued before by the same instance.
class RenameTags {
 public:
  unsigned fresh() { return next_++; }

 private:
  unsigned next_ = 1;
};

}  // namespace witness
