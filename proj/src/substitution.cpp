#include "witness/substitution.hpp"

#include <utility>
#include <vector>

#include "witness/errors.hpp"

namespace witness {

bool is_bindable(const Message& m) {
  return m.is_variable() || (m.is_atom() && m.as_atom().is_parameter());
}

void Substitution::bind(const Message& leaf, Message value) {
  if (!is_bindable(leaf)) throw Error("cannot bind non-variable '" + to_string(leaf) + "'");
  map_.insert_or_assign(leaf, std::move(value));
}

const Message* Substitution::find(const Message& leaf) const {
  auto it = map_.find(leaf);
  return it == map_.end() ? nullptr : &it->second;
}

std::string Substitution::str() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : map_) {
    if (!first) out += ", ";
    out += to_string(k) + " ↦ " + to_string(v);
    first = false;
  }
  return out + "}";
}

namespace {

template <class Leaf>
Message map_leaves(const Message& m, const Leaf& f) {
  switch (m.kind()) {
    case Message::Kind::Atom:
    case Message::Kind::Variable: return f(m);
    case Message::Kind::Concat: {
      std::vector<Message> parts;
      parts.reserve(m.parts().size());
      for (const auto& p : m.parts()) parts.push_back(map_leaves(p, f));
      return Message::concat(std::move(parts));
    }
    case Message::Kind::Enc: return Message::enc(map_leaves(m.body(), f), map_leaves(m.key(), f));
    case Message::Kind::Empty: break;
  }
  return m;
}

class Unifier {
 public:
  bool unify(const Message& a, const Message& b) {
    std::vector<std::pair<Message, Message>> work{{a, b}};
    while (!work.empty()) {
      auto [s, t] = std::move(work.back());
      work.pop_back();
      s = walk(s);
      t = walk(t);
      if (s == t) continue;
      if (s.is_variable()) {
        if (!bind(s, t)) return false;
      } else if (t.is_variable()) {
        if (!bind(t, s)) return false;
      } else if (s.is_atom() && t.is_atom()) {
        if (s.as_atom().kind != t.as_atom().kind) return false;
        if (s.as_atom().is_parameter()) {
          bind(s, t);
        } else if (t.as_atom().is_parameter()) {
          bind(t, s);
        } else {
          return false;
        }
      } else if (s.kind() != t.kind()) {
        return false;
      } else if (s.is_concat()) {
        if (s.parts().size() != t.parts().size()) return false;
        for (std::size_t i = s.parts().size(); i-- > 0;) work.emplace_back(s.parts()[i], t.parts()[i]);
      } else if (s.is_enc()) {
        work.emplace_back(s.key(), t.key());
        work.emplace_back(s.body(), t.body());
      } else {
        return false;
      }
    }
    return true;
  }

  Substitution result() const {
    Substitution out;
    for (const auto& [leaf, value] : bound_) out.bind(leaf, resolve(value));
    return out;
  }

 private:
  Message walk(Message m) const {
    while (is_bindable(m)) {
      auto it = bound_.find(m);
      if (it == bound_.end()) break;
      m = it->second;
    }
    return m;
  }

  Message resolve(const Message& m) const {
    return map_leaves(m, [&](const Message& leaf) {
      Message w = walk(leaf);
      return w == leaf ? leaf : resolve(w);
    });
  }

  bool occurs(const Message& leaf, const Message& m) const {
    Message w = walk(m);
    if (w == leaf) return true;
    if (w.is_concat()) {
      for (const auto& p : w.parts())
        if (occurs(leaf, p)) return true;
    } else if (w.is_enc()) {
      return occurs(leaf, w.body()) || occurs(leaf, w.key());
    }
    return false;
  }

  bool bind(const Message& leaf, const Message& value) {
    if (occurs(leaf, value)) return false;
    bound_.emplace(leaf, value);
    return true;
  }

  std::map<Message, Message> bound_;
};

}  // namespace

Message apply(const Substitution& s, const Message& m) {
  if (s.empty()) return m;
  return map_leaves(m, [&](const Message& leaf) {
    const Message* v = s.find(leaf);
    return v ? *v : leaf;
  });
}

std::optional<Substitution> unify(const Message& a, const Message& b) {
  Unifier u;
  if (!u.unify(a, b)) return std::nullopt;
  return u.result();
}

Message rename_apart(const Message& m, unsigned tag) {
  return map_leaves(m, [tag](const Message& leaf) {
    if (leaf.is_atom()) {
      Atom a = leaf.as_atom();
      a.copy = tag;
      return Message::atom(std::move(a));
    }
    Variable v = leaf.as_variable();
    v.index = tag;
    return Message::var(std::move(v));
  });
}

Message erase_parameters(const Message& m) {
  return map_leaves(m, [](const Message& leaf) {
    if (leaf.is_atom()) return Message::atom(leaf.as_atom().erased());
    return Message::var(Variable{leaf.as_variable().name, 0});
  });
}

Message alpha_normal(const Message& m) {
  std::map<Variable, Variable> names;
  return map_leaves(m, [&](const Message& leaf) {
    if (leaf.is_atom()) return Message::atom(leaf.as_atom().erased());
    auto [it, fresh] = names.try_emplace(leaf.as_variable(), Variable{"v", 0});
    if (fresh) it->second.index = static_cast<unsigned>(names.size());
    return Message::var(it->second);
  });
}

}  // namespace witness
