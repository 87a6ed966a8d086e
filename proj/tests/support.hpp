#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "witness/context.hpp"
#include "witness/message.hpp"
#include "witness/protocol.hpp"

namespace wtest {

inline std::string corpus_path(const std::string& file) {
  return std::string(WITNESS_CORPUS_DIR) + "/" + file;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline witness::VerificationContext corpus_ctx(const std::string& name) {
  return witness::VerificationContext::load(corpus_path(name + ".ctx"));
}

inline witness::ProtocolModel corpus_model(const std::string& name,
                                           const witness::VerificationContext& ctx) {
  return witness::build_model(witness::parse_narration(slurp(corpus_path(name + ".proto")), ctx),
                              ctx);
}

// messages in display syntax, unknown names read as variables
inline witness::Message msg(const witness::VerificationContext& ctx, std::string_view text) {
  return witness::parse_message(text, ctx.resolver());
}

inline witness::SecurityLevel lvl(const witness::VerificationContext& ctx,
                                  std::initializer_list<std::string_view> names) {
  return ctx.make_level(witness::principals(names));
}

// every protocol shipped in protocols/
inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names{"woolam_mod", "woolam_orig", "keytransport",
                                              "broadcast", "leaky"};
  return names;
}

}  // namespace wtest
