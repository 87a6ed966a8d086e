#pragma once

#include <set>

#include "witness/context.hpp"
#include "witness/message.hpp"

namespace witness {

/// Ground messages known to the opponent.
using KnowledgeSet = std::set<Message>;

inline constexpr unsigned kDefaultMaxDepth = 3;

/// Closure under unpairing and decryption with known reverse keys.
KnowledgeSet analyze(KnowledgeSet m, const VerificationContext& ctx);

/// analyze(m) extended by `depth` rounds of pairing and encryption under
/// known atomic keys. Throws DepthExceeded when depth > max_depth.
KnowledgeSet saturate(const KnowledgeSet& m, unsigned depth, const VerificationContext& ctx,
                      unsigned max_depth = kDefaultMaxDepth);

/// m ∈ saturate(known, depth).
bool derives(const KnowledgeSet& known, const Message& m, unsigned depth,
             const VerificationContext& ctx, unsigned max_depth = kDefaultMaxDepth);

}  // namespace witness
