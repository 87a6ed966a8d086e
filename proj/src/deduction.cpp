#include "witness/deduction.hpp"

#include <vector>

#include "witness/errors.hpp"

namespace witness {

namespace {

bool is_key_atom(const Message& m) { return m.is_atom() && m.as_atom().kind == AtomKind::Key; }

void check_depth(unsigned depth, unsigned max_depth) {
  if (depth > max_depth)
    throw DepthExceeded("deduction depth " + std::to_string(depth) + " exceeds the limit of " +
                        std::to_string(max_depth));
}

}  // namespace

KnowledgeSet analyze(KnowledgeSet known, const VerificationContext& ctx) {
  std::vector<Message> todo(known.begin(), known.end());
  // encryptions waiting for their key
  std::vector<Message> locked;
  auto add = [&](const Message& m) {
    if (!m.is_empty() && known.insert(m).second) todo.push_back(m);
  };
  while (!todo.empty()) {
    Message m = todo.back();
    todo.pop_back();
    if (m.is_concat()) {
      for (const auto& p : m.parts()) add(p);
    } else if (m.is_enc()) {
      if (!is_key_atom(m.key())) continue;
      if (known.contains(Message::atom(ctx.reverse_key(m.key().as_atom()))))
        add(m.body());
      else
        locked.push_back(m);
    } else if (is_key_atom(m)) {
      // a new key may open something seen earlier
      std::vector<Message> still;
      for (const auto& e : locked) {
        if (Message::atom(ctx.reverse_key(e.key().as_atom())) == m)
          add(e.body());
        else
          still.push_back(e);
      }
      locked.swap(still);
    }
  }
  return known;
}

KnowledgeSet saturate(const KnowledgeSet& m, unsigned depth, const VerificationContext& ctx,
                      unsigned max_depth) {
  check_depth(depth, max_depth);
  KnowledgeSet known = analyze(m, ctx);
  // Composed terms decompose into what is already known, so analysis never
  // needs to run again after a synthesis round.
  for (unsigned round = 0; round < depth; ++round) {
    std::vector<Message> current(known.begin(), known.end());
    std::vector<Message> keys;
    for (const auto& k : current)
      if (is_key_atom(k)) keys.push_back(k);
    for (const auto& a : current) {
      for (const auto& b : current) known.insert(Message::concat({a, b}));
      for (const auto& k : keys) known.insert(Message::enc(a, k));
    }
  }
  return known;
}

bool derives(const KnowledgeSet& known, const Message& m, unsigned depth,
             const VerificationContext& ctx, unsigned max_depth) {
  return saturate(known, depth, ctx, max_depth).contains(m);
}

}  // namespace witness
