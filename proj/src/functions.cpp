#include "witness/functions.hpp"

#include "witness/errors.hpp"

namespace witness {

std::string_view to_string(SelectionVariant v) {
  switch (v) {
    case SelectionVariant::Max: return "max";
    case SelectionVariant::EK: return "ek";
    case SelectionVariant::N: return "n";
  }
  return "?";
}

std::optional<SelectionVariant> parse_variant(std::string_view name) {
  if (name == "max") return SelectionVariant::Max;
  if (name == "ek") return SelectionVariant::EK;
  if (name == "n") return SelectionVariant::N;
  return std::nullopt;
}

namespace {

template <class Drop>
Message derive_if(const Message& m, const Drop& drop) {
  switch (m.kind()) {
    case Message::Kind::Variable: return drop(m.as_variable()) ? Message() : m;
    case Message::Kind::Concat: {
      std::vector<Message> parts;
      for (const auto& p : m.parts()) parts.push_back(derive_if(p, drop));
      return Message::concat(std::move(parts));
    }
    case Message::Kind::Enc: return Message::enc(derive_if(m.body(), drop), m.key());
    default: return m;
  }
}

}  // namespace

Message derive(const Message& m, const std::optional<Variable>& keep) {
  return derive_if(m, [&](const Variable& v) { return !keep || v != *keep; });
}

Message derive_vars(const Message& m, const std::set<Variable>& remove) {
  return derive_if(m, [&](const Variable& v) { return remove.contains(v); });
}

namespace {

struct Enclosing {
  Atom key;
  Position position;
};

const Atom& key_atom(const Message& enc) {
  if (!enc.key().is_atom() || enc.key().as_atom().kind != AtomKind::Key)
    throw UnsupportedKey("only atomic symmetric keys are supported, got '" +
                         to_string(enc.key()) + "'");
  return enc.key().as_atom();
}

void find_occurrences(const Message& target, const Message& m, const SecurityLevel& target_level,
                      const VerificationContext& ctx, Position& here,
                      std::vector<Enclosing>& around, std::vector<Occurrence>& out) {
  if (m == target) {
    Occurrence occ{here, std::nullopt, {}};
    for (const auto& e : around) {
      if (leq(target_level, ctx.level_of(ctx.reverse_key(e.key)))) {
        occ.key = e.key;
        occ.protected_section = e.position;
        break;
      }
    }
    out.push_back(std::move(occ));
    return;
  }
  if (m.is_concat()) {
    for (std::size_t i = 0; i < m.parts().size(); ++i) {
      here.push_back(i);
      find_occurrences(target, m.parts()[i], target_level, ctx, here, around, out);
      here.pop_back();
    }
  } else if (m.is_enc()) {
    around.push_back({key_atom(m), here});
    here.push_back(0);
    find_occurrences(target, m.body(), target_level, ctx, here, around, out);
    here.pop_back();
    around.pop_back();
  }
}

const Message& at(const Message& m, const Position& p) {
  const Message* cur = &m;
  for (auto i : p) cur = cur->is_concat() ? &cur->parts()[i] : (i == 0 ? &cur->body() : &cur->key());
  return *cur;
}

void collect_identities(const Message& m, std::set<Atom>& out) {
  for (const auto& a : content_atoms(m))
    if (a.kind == AtomKind::Identity) out.insert(a);
}

}  // namespace

std::vector<Occurrence> protective_key(const Message& target, const Message& m,
                                       const VerificationContext& ctx) {
  if (!target.is_leaf()) throw Error("protective_key expects an atom or a variable");
  std::vector<Occurrence> out;
  Position here;
  std::vector<Enclosing> around;
  find_occurrences(target, m, ctx.level_of(target), ctx, here, around, out);
  if (out.empty()) throw AtomAbsent("'" + to_string(target) + "' does not occur in '" + to_string(m) + "'");
  return out;
}

std::string Selection::str() const {
  switch (kind) {
    case Kind::Infimum: return "infimum";
    case Kind::Supremum: return "supremum";
    case Kind::Section: break;
  }
  std::string out = "{";
  bool first = true;
  for (const auto& a : atoms) {
    if (!first) out += ", ";
    out += to_string(a);
    if (a.kind == AtomKind::Key) out += "⁻¹";
    first = false;
  }
  return out + "}";
}

std::vector<Selection> select(SelectionVariant v, const Message& target, const Message& m,
                              const VerificationContext& ctx) {
  if (!occurs_in_content(target, m)) return {Selection{Selection::Kind::Supremum, {}, {}}};
  std::vector<Selection> out;
  for (const auto& occ : protective_key(target, m, ctx)) {
    if (!occ.key) {
      out.push_back(Selection{Selection::Kind::Infimum, {}, {}});
      continue;
    }
    Selection s{Selection::Kind::Section, {}, occ.key};
    if (v != SelectionVariant::EK) collect_identities(at(m, occ.protected_section).body(), s.atoms);
    if (v != SelectionVariant::N) s.atoms.insert(ctx.reverse_key(*occ.key));
    out.push_back(std::move(s));
  }
  return out;
}

SecurityLevel psi(const Selection& s, const VerificationContext& ctx) {
  switch (s.kind) {
    case Selection::Kind::Infimum: return SecurityLevel::bottom();
    case Selection::Kind::Supremum: return SecurityLevel::top();
    case Selection::Kind::Section: break;
  }
  PrincipalSet ids;
  for (const auto& a : s.atoms) {
    if (a.kind == AtomKind::Identity) {
      ids.emplace(a.name);
    } else if (a.kind == AtomKind::Key) {
      auto level = ctx.level_of(a);
      if (level.is_bottom()) return level;
      ids.insert(level.authorized().begin(), level.authorized().end());
    }
  }
  return ctx.make_level(std::move(ids));
}

SecurityLevel eval_f(SelectionVariant v, const Message& target, const Message& m,
                     const VerificationContext& ctx) {
  SecurityLevel out = SecurityLevel::top();
  for (const auto& s : select(v, target, m, ctx)) out = meet(out, psi(s, ctx));
  return out;
}

SecurityLevel eval_f(SelectionVariant v, const Message& target, std::span<const Message> ms,
                     const VerificationContext& ctx) {
  SecurityLevel out = SecurityLevel::top();
  for (const auto& m : ms) out = meet(out, eval_f(v, target, m, ctx));
  return out;
}

SecurityLevel f_prime(SelectionVariant v, const Message& target, const Message& m,
                      const VerificationContext& ctx, const Substitution* run) {
  if (target.is_variable()) return eval_f(v, target, derive(m, target.as_variable()), ctx);
  if (!target.is_atom()) throw Error("f_prime expects an atom or a variable");

  Message dm = derive(m);
  if (occurs_in_content(target, dm)) return eval_f(v, target, dm, ctx);
  if (run) {
    SecurityLevel out = SecurityLevel::top();
    bool instantiated = false;
    for (const auto& x : vars_of(m)) {
      Message xm = Message::var(x);
      if (apply(*run, xm) == target) {
        out = meet(out, eval_f(v, xm, derive(m, x), ctx));
        instantiated = true;
      }
    }
    if (instantiated) return out;
  }
  return SecurityLevel::top();
}

}  // namespace witness
