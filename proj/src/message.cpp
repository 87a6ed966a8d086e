#include "witness/message.hpp"

#include <cctype>
#include <variant>

#include "witness/errors.hpp"

namespace witness {

struct Message::Node {
  struct EncNode {
    Message body;
    Message key;
  };
  std::variant<std::monostate, Atom, Variable, std::vector<Message>, EncNode> v;
};

namespace {

const std::shared_ptr<const Message::Node>& empty_node() {
  static const auto n = std::make_shared<const Message::Node>();
  return n;
}

}  // namespace

std::string_view to_string(AtomKind kind) {
  switch (kind) {
    case AtomKind::Identity: return "identity";
    case AtomKind::Nonce: return "nonce";
    case AtomKind::Key: return "key";
  }
  return "?";
}

Atom Atom::erased() const {
  Atom a = *this;
  a.copy = 0;
  return a;
}

Message::Message() : node_(empty_node()) {}

Message Message::atom(Atom a) {
  if (a.name.empty()) throw Error("atom name must not be empty");
  return Message(std::make_shared<const Node>(Node{std::move(a)}));
}

Message Message::var(Variable v) {
  if (v.name.empty()) throw Error("variable name must not be empty");
  return Message(std::make_shared<const Node>(Node{std::move(v)}));
}

Message Message::concat(std::vector<Message> parts) {
  std::vector<Message> flat;
  flat.reserve(parts.size());
  for (auto& p : parts) {
    if (p.is_empty()) continue;
    if (p.is_concat()) {
      for (const auto& q : p.parts()) flat.push_back(q);
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return Message();
  if (flat.size() == 1) return flat.front();
  return Message(std::make_shared<const Node>(Node{std::move(flat)}));
}

Message Message::enc(Message body, Message key) {
  if (key.is_empty()) throw Error("encryption key must not be empty");
  return Message(std::make_shared<const Node>(Node{Node::EncNode{std::move(body), std::move(key)}}));
}

Message::Kind Message::kind() const {
  return static_cast<Kind>(node_->v.index());
}

const Atom& Message::as_atom() const { return std::get<Atom>(node_->v); }
const Variable& Message::as_variable() const { return std::get<Variable>(node_->v); }

std::span<const Message> Message::parts() const {
  return std::get<std::vector<Message>>(node_->v);
}

const Message& Message::body() const { return std::get<Node::EncNode>(node_->v).body; }
const Message& Message::key() const { return std::get<Node::EncNode>(node_->v).key; }

std::strong_ordering operator<=>(const Message& a, const Message& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Message::Kind::Empty: return std::strong_ordering::equal;
    case Message::Kind::Atom: return a.as_atom() <=> b.as_atom();
    case Message::Kind::Variable: return a.as_variable() <=> b.as_variable();
    case Message::Kind::Concat: {
      auto pa = a.parts();
      auto pb = b.parts();
      return std::lexicographical_compare_three_way(pa.begin(), pa.end(), pb.begin(), pb.end());
    }
    case Message::Kind::Enc:
      if (auto c = a.body() <=> b.body(); c != 0) return c;
      return a.key() <=> b.key();
  }
  return std::strong_ordering::equal;
}

std::vector<Message> components(const Message& m) {
  if (m.is_concat()) return {m.parts().begin(), m.parts().end()};
  return {m};
}

namespace {

void collect_atoms(const Message& m, bool with_keys, std::set<Atom>& out) {
  switch (m.kind()) {
    case Message::Kind::Atom: out.insert(m.as_atom()); break;
    case Message::Kind::Concat:
      for (const auto& p : m.parts()) collect_atoms(p, with_keys, out);
      break;
    case Message::Kind::Enc:
      collect_atoms(m.body(), with_keys, out);
      if (with_keys) collect_atoms(m.key(), with_keys, out);
      break;
    default: break;
  }
}

void collect_vars(const Message& m, std::set<Variable>& out) {
  switch (m.kind()) {
    case Message::Kind::Variable: out.insert(m.as_variable()); break;
    case Message::Kind::Concat:
      for (const auto& p : m.parts()) collect_vars(p, out);
      break;
    case Message::Kind::Enc:
      collect_vars(m.body(), out);
      collect_vars(m.key(), out);
      break;
    default: break;
  }
}

}  // namespace

std::set<Atom> atoms_of(const Message& m) {
  std::set<Atom> out;
  collect_atoms(m, true, out);
  return out;
}

std::set<Atom> content_atoms(const Message& m) {
  std::set<Atom> out;
  collect_atoms(m, false, out);
  return out;
}

std::set<Variable> vars_of(const Message& m) {
  std::set<Variable> out;
  collect_vars(m, out);
  return out;
}

bool occurs_in_content(const Message& leaf, const Message& m) {
  if (m == leaf) return true;
  if (m.is_concat()) {
    for (const auto& p : m.parts())
      if (occurs_in_content(leaf, p)) return true;
    return false;
  }
  if (m.is_enc()) return occurs_in_content(leaf, m.body());
  return false;
}

std::string to_string(const Atom& a) {
  std::string out = a.name;
  if (a.copy) out += "_" + std::to_string(a.copy);
  if (!a.session.empty()) out += "^" + a.session;
  return out;
}

std::string to_string(const Variable& v) {
  std::string out = v.name;
  if (v.index) out += "_" + std::to_string(v.index);
  return out;
}

std::string to_string(const Message& m) {
  switch (m.kind()) {
    case Message::Kind::Empty: return "ε";
    case Message::Kind::Atom: return to_string(m.as_atom());
    case Message::Kind::Variable: return to_string(m.as_variable());
    case Message::Kind::Concat: {
      std::string out;
      for (const auto& p : m.parts()) {
        if (!out.empty()) out += ".";
        out += to_string(p);
      }
      return out;
    }
    case Message::Kind::Enc: {
      std::string out = "{" + to_string(m.body()) + "}";
      if (m.key().is_leaf()) return out + to_string(m.key());
      return out + "(" + to_string(m.key()) + ")";
    }
  }
  return {};
}

// Term parser -------------------------------------------------------------

namespace {

constexpr std::string_view kEpsilon = "\xCE\xB5";

class TermParser {
 public:
  TermParser(std::string_view text, const AtomResolver& resolve, bool allow_variables,
             std::size_t line, std::size_t column)
      : text_(text), resolve_(resolve), allow_vars_(allow_variables), line_(line), col0_(column) {}

  Message parse() {
    skip_ws();
    if (pos_ == text_.size()) fail("expected a message");
    Message m = msg();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return m;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what, line_, col0_ + pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  Message msg() {
    std::vector<Message> parts{term()};
    while (eat('.')) parts.push_back(term());
    return Message::concat(std::move(parts));
  }

  Message term() {
    skip_ws();
    if (text_.substr(pos_).starts_with(kEpsilon)) {
      pos_ += kEpsilon.size();
      return Message();
    }
    if (eat('{')) {
      Message body = msg();
      expect('}');
      Message key;
      if (eat('(')) {
        key = msg();
        expect(')');
      } else {
        key = leaf();
      }
      return Message::enc(std::move(body), std::move(key));
    }
    return leaf();
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_])))
      fail("expected an identifier");
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  unsigned number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a rename index");
    auto n = std::stoul(std::string(text_.substr(start, pos_ - start)));
    if (n == 0) fail("rename index must be positive");
    return static_cast<unsigned>(n);
  }

  Message leaf() {
    std::size_t start = pos_;
    std::string name = identifier();
    unsigned index = 0;
    if (pos_ < text_.size() && text_[pos_] == '_') {
      ++pos_;
      index = number();
    }
    std::string session;
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      session = identifier();
    }
    auto kind = resolve_ ? resolve_(name) : std::nullopt;
    if (kind) return Message::atom(Atom{*kind, std::move(name), std::move(session), index});
    if (!allow_vars_) {
      pos_ = start;
      skip_ws();
      throw UndeclaredAtom("undeclared atom '" + name + "'", line_, col0_ + pos_);
    }
    if (!session.empty()) fail("variable '" + name + "' cannot carry a session tag");
    return Message::var(Variable{std::move(name), index});
  }

  std::string_view text_;
  const AtomResolver& resolve_;
  bool allow_vars_;
  std::size_t line_;
  std::size_t col0_;
  std::size_t pos_ = 0;
};

}  // namespace

Message parse_message(std::string_view text, const AtomResolver& resolve, bool allow_variables) {
  return parse_message_at(text, resolve, allow_variables, 1, 1);
}

Message parse_message_at(std::string_view text, const AtomResolver& resolve, bool allow_variables,
                         std::size_t line, std::size_t column) {
  return TermParser(text, resolve, allow_variables, line, column).parse();
}

}  // namespace witness
