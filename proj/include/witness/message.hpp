#pragma once

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace witness {

enum class AtomKind { Identity, Nonce, Key };

std::string_view to_string(AtomKind kind);

/// Atomic name. A non-zero `copy` marks a renamed role parameter of an
/// encryption pattern: it stands for any atom of the same kind.
struct Atom {
  AtomKind kind = AtomKind::Identity;
  std::string name;
  std::string session;  // empty when not session-indexed
  unsigned copy = 0;

  bool is_parameter() const { return copy != 0; }
  Atom erased() const;

  auto operator<=>(const Atom&) const = default;
};

struct Variable {
  std::string name;
  unsigned index = 0;

  auto operator<=>(const Variable&) const = default;
};

/// Immutable term of the message algebra. Concatenation is n-ary and kept
/// flat; the empty message ε is the concatenation of nothing.
class Message {
 public:
  enum class Kind { Empty, Atom, Variable, Concat, Enc };

  /// ε
  Message();

  static Message atom(Atom a);
  static Message var(Variable v);
  static Message concat(std::vector<Message> parts);
  static Message enc(Message body, Message key);

  Kind kind() const;
  bool is_empty() const { return kind() == Kind::Empty; }
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_variable() const { return kind() == Kind::Variable; }
  bool is_concat() const { return kind() == Kind::Concat; }
  bool is_enc() const { return kind() == Kind::Enc; }
  /// Atom or variable.
  bool is_leaf() const { return is_atom() || is_variable(); }

  const Atom& as_atom() const;
  const Variable& as_variable() const;
  std::span<const Message> parts() const;
  const Message& body() const;
  const Message& key() const;

  friend std::strong_ordering operator<=>(const Message& a, const Message& b);
  friend bool operator==(const Message& a, const Message& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  struct Node;

 private:
  explicit Message(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using MessageSet = std::set<Message>;

/// Components of a top-level concatenation, or the message itself.
std::vector<Message> components(const Message& m);

/// Every atom of m, including those in key position.
std::set<Atom> atoms_of(const Message& m);

/// Atoms occurring outside key position, i.e. those a message transmits.
std::set<Atom> content_atoms(const Message& m);

std::set<Variable> vars_of(const Message& m);

/// True when `leaf` (an atom or variable) occurs in m outside key position.
bool occurs_in_content(const Message& leaf, const Message& m);

/// Display syntax: atoms as identifiers with optional "_copy" and "^session",
/// "." for concatenation, "{body}key" for encryption, "ε" for the empty message.
std::string to_string(const Message& m);
std::string to_string(const Atom& a);
std::string to_string(const Variable& v);

/// Classifies identifiers while parsing terms. Unresolved names become
/// variables when `allow_variables` is set, otherwise UndeclaredAtom.
using AtomResolver = std::function<std::optional<AtomKind>(std::string_view)>;

Message parse_message(std::string_view text, const AtomResolver& resolve,
                      bool allow_variables = true);

/// As parse_message, reporting error positions relative to (line, column).
Message parse_message_at(std::string_view text, const AtomResolver& resolve,
                         bool allow_variables, std::size_t line, std::size_t column);

}  // namespace witness
