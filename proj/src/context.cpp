#include "witness/context.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "witness/errors.hpp"

namespace witness {

namespace {

// Cursor over one declaration line.
class LineReader {
 public:
  LineReader(std::string_view line, std::size_t number) : line_(line), number_(number) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what, number_, pos_ + 1);
  }

  std::size_t column() const { return pos_ + 1; }
  std::size_t line() const { return number_; }

  void skip_ws() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= line_.size();
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < line_.size() && line_[pos_] == c;
  }

  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= line_.size() || !std::isalpha(static_cast<unsigned char>(line_[pos_])))
      fail("expected an identifier");
    while (pos_ < line_.size() && std::isalnum(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    return std::string(line_.substr(start, pos_ - start));
  }

  unsigned number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return static_cast<unsigned>(std::stoul(std::string(line_.substr(start, pos_ - start))));
  }

  void expect_word(std::string_view w) {
    auto save = pos_;
    if (identifier() != w) {
      pos_ = save;
      skip_ws();
      fail("expected '" + std::string(w) + "'");
    }
  }

  std::vector<std::string> identifier_list() {
    std::vector<std::string> out{identifier()};
    while (eat(',')) out.push_back(identifier());
    return out;
  }

 private:
  std::string_view line_;
  std::size_t number_;
  std::size_t pos_ = 0;
};

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

}  // namespace

VerificationContext VerificationContext::parse(std::string_view text) {
  VerificationContext ctx;
  ctx.source_ = std::string(text);

  PrincipalSet universe;
  bool have_principals = false;

  // Names referenced before they can be checked, with their position.
  struct Ref {
    std::string name;
    std::size_t line, column;
  };
  std::vector<Ref> principal_refs;
  std::vector<Ref> knowledge_refs;
  std::vector<Ref> challenge_refs;

  struct PendingLevel {
    std::string atom;
    bool is_public = false;
    std::vector<std::string> members;
  };
  std::vector<PendingLevel> pending_levels;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    LineReader r(strip_comment(raw), number);
    if (r.at_end()) continue;
    auto head_col = r.column();
    std::string head = r.identifier();

    if (head == "principals") {
      if (have_principals) r.fail("principals declared twice");
      have_principals = true;
      for (auto& n : r.identifier_list()) {
        if (!universe.emplace(n).second) r.fail("principal '" + n + "' declared twice");
      }
    } else if (head == "key" || head == "nonce") {
      auto name_col = r.column();
      std::string name = r.identifier();
      if (ctx.atoms_.contains(name))
        throw SyntaxError("atom '" + name + "' declared twice", number, name_col);
      AtomInfo info;
      info.kind = head == "key" ? AtomKind::Key : AtomKind::Nonce;
      bool has_level = false;
      PendingLevel pending{name, false, {}};
      while (!r.at_end()) {
        auto clause_col = r.column();
        std::string clause = r.identifier();
        if (clause == "shared" && info.kind == AtomKind::Key) {
          r.expect('(');
          auto parties = r.identifier_list();
          r.expect(')');
          if (parties.size() < 2) r.fail("shared key needs at least two parties");
          for (auto& p : parties) {
            principal_refs.push_back({p, number, clause_col});
            info.owners.emplace(p);
          }
          if (!has_level) {
            pending.members = std::move(parties);
            has_level = true;
          }
        } else if (clause == "fresh") {
          r.expect('(');
          auto gen_col = r.column();
          std::string gen = r.identifier();
          r.expect(')');
          principal_refs.push_back({gen, number, gen_col});
          info.generator = PrincipalId(gen);
          info.owners.emplace(gen);
        } else if (clause == "level") {
          pending.members.clear();
          if (r.eat('{')) {
            if (!r.peek('}')) {
              auto level_col = r.column();
              pending.members = r.identifier_list();
              for (auto& p : pending.members) principal_refs.push_back({p, number, level_col});
            }
            r.expect('}');
            pending.is_public = false;
          } else {
            r.expect_word("public");
            pending.is_public = true;
          }
          has_level = true;
        } else {
          throw SyntaxError("unknown clause '" + clause + "' for " + head, number, clause_col);
        }
      }
      if (!has_level)
        throw SyntaxError(head + " '" + name + "' needs a level", number, name_col);
      pending_levels.push_back(std::move(pending));
      ctx.atoms_.emplace(name, std::move(info));
    } else if (head == "intruder") {
      r.expect_word("knows");
      auto col = r.column();
      for (auto& n : r.identifier_list()) knowledge_refs.push_back({n, number, col});
    } else if (head == "challenge") {
      r.expect_word("auth");
      Challenge c;
      bool seen[4] = {false, false, false, false};
      while (!r.at_end()) {
        auto field_col = r.column();
        std::string field = r.identifier();
        r.expect('=');
        if (field == "verifier") {
          auto col = r.column();
          c.verifier = PrincipalId(r.identifier());
          principal_refs.push_back({c.verifier.name, number, col});
          seen[0] = true;
        } else if (field == "claimant") {
          auto col = r.column();
          c.claimant = PrincipalId(r.identifier());
          principal_refs.push_back({c.claimant.name, number, col});
          seen[1] = true;
        } else if (field == "step") {
          c.step = r.number();
          seen[2] = true;
        } else if (field == "challenge") {
          auto col = r.column();
          c.atom = r.identifier();
          challenge_refs.push_back({c.atom, number, col});
          seen[3] = true;
        } else {
          throw SyntaxError("unknown challenge field '" + field + "'", number, field_col);
        }
      }
      if (!(seen[0] && seen[1] && seen[2] && seen[3]))
        throw SyntaxError("challenge needs verifier, claimant, step and challenge", number,
                          head_col);
      if (ctx.challenge_) throw SyntaxError("challenge declared twice", number, head_col);
      ctx.challenge_ = std::move(c);
    } else {
      throw SyntaxError("unknown declaration '" + head + "'", number, head_col);
    }
  }

  if (!have_principals) throw SyntaxError("missing 'principals' declaration", number + 1, 1);
  if (!universe.contains(PrincipalId(std::string(kIntruderName))))
    throw Error("the principal universe must contain the intruder '" +
                std::string(kIntruderName) + "'");
  for (const auto& ref : principal_refs) {
    if (!universe.contains(PrincipalId(ref.name)))
      throw UndeclaredAtom("undeclared principal '" + ref.name + "'", ref.line, ref.column);
  }
  for (const auto& [name, info] : ctx.atoms_) {
    if (universe.contains(PrincipalId(name)))
      throw Error("'" + name + "' is declared both as a principal and as an atom");
  }
  ctx.universe_ = std::make_shared<const PrincipalSet>(std::move(universe));

  for (auto& p : pending_levels) {
    auto& info = ctx.atoms_.at(p.atom);
    if (p.is_public) {
      info.level = SecurityLevel::bottom();
    } else {
      PrincipalSet members;
      for (auto& n : p.members) members.emplace(n);
      info.level = ctx.make_level(std::move(members));
    }
  }

  for (const auto& ref : challenge_refs) {
    if (!ctx.kind_of(ref.name))
      throw UndeclaredAtom("undeclared atom '" + ref.name + "'", ref.line, ref.column);
  }
  for (const auto& ref : knowledge_refs) {
    auto kind = ctx.kind_of(ref.name);
    if (!kind) throw UndeclaredAtom("undeclared atom '" + ref.name + "'", ref.line, ref.column);
    ctx.intruder_knowledge_.push_back(Atom{*kind, ref.name, {}, 0});
  }
  return ctx;
}

VerificationContext VerificationContext::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read context file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

SecurityLevel VerificationContext::make_level(PrincipalSet authorized) const {
  return SecurityLevel::of(std::move(authorized), universe_);
}

const VerificationContext::AtomInfo& VerificationContext::info(std::string_view name) const {
  auto it = atoms_.find(name);
  if (it == atoms_.end()) throw UnknownAtom("no security level declared for '" + std::string(name) + "'");
  return it->second;
}

SecurityLevel VerificationContext::level_of(const Atom& a) const {
  if (a.kind == AtomKind::Identity) return SecurityLevel::bottom();
  return info(a.name).level;
}

SecurityLevel VerificationContext::level_of(const Message& leaf) const {
  if (leaf.is_variable()) return SecurityLevel::bottom();
  if (leaf.is_atom()) return level_of(leaf.as_atom());
  throw Error("level_of expects an atom or a variable, got '" + to_string(leaf) + "'");
}

Atom VerificationContext::reverse_key(const Atom& k) const {
  if (k.kind != AtomKind::Key) throw NotAKey("'" + to_string(k) + "' is not a key");
  return k;
}

bool VerificationContext::knows_key(const PrincipalId& agent, const Atom& k) const {
  if (k.kind != AtomKind::Key) throw NotAKey("'" + to_string(k) + "' is not a key");
  return info(k.name).owners.contains(agent);
}

std::optional<AtomKind> VerificationContext::kind_of(std::string_view name) const {
  if (universe_->contains(PrincipalId(std::string(name)))) return AtomKind::Identity;
  auto it = atoms_.find(name);
  if (it == atoms_.end()) return std::nullopt;
  return it->second.kind;
}

AtomResolver VerificationContext::resolver() const {
  return [this](std::string_view name) { return kind_of(name); };
}

std::optional<PrincipalId> VerificationContext::generator_of(std::string_view name) const {
  auto it = atoms_.find(name);
  if (it == atoms_.end()) return std::nullopt;
  return it->second.generator;
}

Atom VerificationContext::atom(std::string_view name, std::string_view session) const {
  auto kind = kind_of(name);
  if (!kind) throw UnknownAtom("unknown atom '" + std::string(name) + "'");
  return Atom{*kind, std::string(name), std::string(session), 0};
}

}  // namespace witness
