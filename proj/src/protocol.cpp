#include "witness/protocol.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "witness/errors.hpp"
#include "witness/substitution.hpp"

namespace witness {

// Narration DSL ------------------------------------------------------------

namespace {

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::size_t skip_ws(std::string_view s, std::size_t pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  return pos;
}

std::size_t scan_identifier(std::string_view s, std::size_t pos) {
  if (pos >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos]))) return pos;
  while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
  return pos;
}

// Narration payloads are plain terms: no rename indices, no session tags,
// no empty message, atomic declared keys.
void check_narration_term(const Message& m, std::size_t line, std::size_t column) {
  switch (m.kind()) {
    case Message::Kind::Empty:
      throw SyntaxError("the empty message cannot be sent", line, column);
    case Message::Kind::Atom:
      if (m.as_atom().is_parameter() || !m.as_atom().session.empty())
        throw SyntaxError("rename indices and session tags are not allowed in narrations", line,
                          column);
      break;
    case Message::Kind::Variable:
      throw SyntaxError("unexpected variable '" + to_string(m) + "'", line, column);
    case Message::Kind::Concat:
      for (const auto& p : m.parts()) check_narration_term(p, line, column);
      break;
    case Message::Kind::Enc:
      check_narration_term(m.body(), line, column);
      if (!m.key().is_atom() || m.key().as_atom().kind != AtomKind::Key)
        throw UnsupportedKey(std::to_string(line) + ":" + std::to_string(column) +
                             ": only atomic symmetric keys are supported, got '" +
                             to_string(m.key()) + "'");
      check_narration_term(m.key(), line, column);
      break;
  }
}

}  // namespace

Narration parse_narration(std::string_view text, const VerificationContext& ctx) {
  Narration n;
  bool have_header = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = strip_comment(raw);
    std::size_t pos = skip_ws(s, 0);
    if (pos == s.size()) continue;
    auto fail = [&](const std::string& what) -> void { throw SyntaxError(what, line, pos + 1); };

    if (!have_header) {
      auto end = scan_identifier(s, pos);
      if (s.substr(pos, end - pos) != "protocol") fail("expected 'protocol NAME'");
      pos = skip_ws(s, end);
      end = scan_identifier(s, pos);
      if (end == pos) fail("expected a protocol name");
      n.name = std::string(s.substr(pos, end - pos));
      pos = skip_ws(s, end);
      if (pos != s.size()) fail("unexpected text after protocol name");
      have_header = true;
      continue;
    }

    NarrationStep step;
    auto digits_end = pos;
    while (digits_end < s.size() && std::isdigit(static_cast<unsigned char>(s[digits_end])))
      ++digits_end;
    if (digits_end == pos) fail("expected a step number");
    step.index = static_cast<unsigned>(std::stoul(std::string(s.substr(pos, digits_end - pos))));
    if (step.index != n.steps.size() + 1)
      fail("expected step " + std::to_string(n.steps.size() + 1));
    pos = skip_ws(s, digits_end);
    if (pos >= s.size() || s[pos] != '.') fail("expected '.' after step number");
    pos = skip_ws(s, pos + 1);

    auto principal = [&]() {
      auto end = scan_identifier(s, pos);
      if (end == pos) fail("expected a principal");
      std::string name(s.substr(pos, end - pos));
      if (ctx.kind_of(name) != AtomKind::Identity)
        throw UndeclaredAtom("undeclared principal '" + name + "'", line, pos + 1);
      pos = skip_ws(s, end);
      return PrincipalId(std::move(name));
    };

    step.sender = principal();
    if (!s.substr(pos).starts_with("->")) fail("expected '->'");
    pos = skip_ws(s, pos + 2);
    step.receiver = principal();
    if (step.sender == step.receiver) fail("sender and receiver must differ");
    if (pos >= s.size() || s[pos] != ':') fail("expected ':'");
    ++pos;
    step.payload = parse_message_at(s.substr(pos), ctx.resolver(), false, line, pos + 1);
    check_narration_term(step.payload, line, pos + 1);
    n.steps.push_back(std::move(step));
  }
  if (!have_header) throw SyntaxError("empty protocol description", line + 1, 1);
  return n;
}

std::string to_string(const Narration& n) {
  std::string out = "protocol " + n.name + "\n";
  for (const auto& s : n.steps) {
    out += std::to_string(s.index) + ". " + s.sender.name + " -> " + s.receiver.name + " : " +
           to_string(s.payload) + "\n";
  }
  return out;
}

// Generalized roles --------------------------------------------------------

std::string RoleStep::id() const { return std::string(kSessionTag) + "." + std::to_string(index); }

std::string to_string(const RoleStep& step, const PrincipalId& owner) {
  std::string partner = "I(" + step.partner.name + ")";
  const std::string& from = step.direction == Direction::Send ? owner.name : partner;
  const std::string& to = step.direction == Direction::Send ? partner : owner.name;
  return "<" + step.id() + ", " + from + " -> " + to + ": " + to_string(step.payload) + ">";
}

std::string GeneralizedRole::name() const { return owner.name + "^" + std::to_string(ordinal); }

bool GeneralizedRole::ends_with_send() const {
  return !steps.empty() && steps.back().direction == Direction::Send;
}

std::vector<Message> GeneralizedRole::received_before_last() const {
  std::vector<Message> out;
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    if (steps[i].direction == Direction::Receive) out.push_back(steps[i].payload);
  return out;
}

std::string GeneralizedRole::str() const {
  std::string out;
  for (const auto& s : steps) {
    if (!out.empty()) out += ".";
    out += to_string(s, owner);
  }
  return out;
}

namespace {

class VariablePool {
 public:
  explicit VariablePool(const VerificationContext& ctx) : ctx_(ctx) {}

  Message fresh() {
    static constexpr std::string_view kBase[] = {"X", "Y", "Z", "U", "V", "W"};
    for (;;) {
      std::size_t round = next_ / std::size(kBase);
      std::string name(kBase[next_ % std::size(kBase)]);
      ++next_;
      if (round) name += std::to_string(round);
      if (!ctx_.kind_of(name)) return Message::var(Variable{std::move(name), 0});
    }
  }

 private:
  const VerificationContext& ctx_;
  std::size_t next_ = 0;
};

class Projection {
 public:
  Projection(const PrincipalId& owner, const VerificationContext& ctx, VariablePool& pool)
      : owner_(owner), ctx_(ctx), pool_(pool) {}

  Message receive(const Message& m) {
    if (auto it = learned_.find(m); it != learned_.end()) return it->second;
    switch (m.kind()) {
      case Message::Kind::Atom:
        if (knows(m.as_atom())) return tag(m);
        return learn(m);
      case Message::Kind::Concat: {
        std::vector<Message> parts;
        for (const auto& p : m.parts()) parts.push_back(receive(p));
        return Message::concat(std::move(parts));
      }
      case Message::Kind::Enc:
        if (!ctx_.knows_key(owner_, ctx_.reverse_key(m.key().as_atom()))) return learn(m);
        return Message::enc(receive(m.body()), tag(m.key()));
      default: return m;
    }
  }

  Message send(const Message& m) const {
    if (auto it = learned_.find(m); it != learned_.end()) return it->second;
    switch (m.kind()) {
      case Message::Kind::Atom: return tag(m);
      case Message::Kind::Concat: {
        std::vector<Message> parts;
        for (const auto& p : m.parts()) parts.push_back(send(p));
        return Message::concat(std::move(parts));
      }
      case Message::Kind::Enc: return Message::enc(send(m.body()), tag(m.key()));
      default: return m;
    }
  }

 private:
  bool knows(const Atom& a) const {
    switch (a.kind) {
      case AtomKind::Identity: return true;
      case AtomKind::Key: return ctx_.knows_key(owner_, a);
      case AtomKind::Nonce: return ctx_.generator_of(a.name) == owner_;
    }
    return false;
  }

  Message tag(const Message& atom) const {
    Atom a = atom.as_atom();
    if (ctx_.generator_of(a.name)) a.session = std::string(kSessionTag);
    return Message::atom(std::move(a));
  }

  Message learn(const Message& m) {
    Message v = pool_.fresh();
    learned_.emplace(m, v);
    return v;
  }

  const PrincipalId& owner_;
  const VerificationContext& ctx_;
  VariablePool& pool_;
  std::map<Message, Message> learned_;
};

}  // namespace

std::vector<GeneralizedRole> extract_roles(const Narration& n, const VerificationContext& ctx) {
  std::vector<PrincipalId> order;
  for (const auto& s : n.steps) {
    for (const auto* p : {&s.sender, &s.receiver})
      if (std::find(order.begin(), order.end(), *p) == order.end()) order.push_back(*p);
  }

  VariablePool pool(ctx);
  std::vector<GeneralizedRole> roles;
  for (const auto& owner : order) {
    Projection view(owner, ctx, pool);
    std::vector<RoleStep> full;
    for (const auto& s : n.steps) {
      if (s.sender == owner) {
        full.push_back({s.index, Direction::Send, s.receiver, view.send(s.payload)});
      } else if (s.receiver == owner) {
        full.push_back({s.index, Direction::Receive, s.sender, view.receive(s.payload)});
      }
    }
    // one role per send, plus the complete view when it ends on a receive
    unsigned ordinal = 0;
    for (std::size_t k = 1; k <= full.size(); ++k) {
      if (full[k - 1].direction == Direction::Receive && k != full.size()) continue;
      roles.push_back(GeneralizedRole{owner, ++ordinal,
                                      std::vector<RoleStep>(full.begin(), full.begin() + k)});
    }
  }
  return roles;
}

std::vector<Message> generated_messages(std::span<const GeneralizedRole> roles) {
  std::vector<Message> out;
  for (const auto& r : roles)
    for (const auto& s : r.steps) out.push_back(s.payload);
  return out;
}

EncryptionPatternSet encryption_patterns(std::span<const Message> messages) {
  std::set<Message> seen;
  EncryptionPatternSet out;
  RenameTags tags;
  for (const auto& m : messages) {
    for (const auto& c : components(m)) {
      if (!c.is_enc()) continue;
      if (!seen.insert(alpha_normal(c)).second) continue;
      out.push_back(rename_apart(c, tags.fresh()));
    }
  }
  return out;
}

ProtocolModel build_model(Narration narration, const VerificationContext& ctx) {
  ProtocolModel model;
  model.roles = extract_roles(narration, ctx);
  model.patterns = encryption_patterns(generated_messages(model.roles));
  model.narration = std::move(narration);
  return model;
}

}  // namespace witness
