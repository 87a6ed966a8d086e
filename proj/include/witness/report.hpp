#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "witness/context.hpp"
#include "witness/functions.hpp"
#include "witness/lattice.hpp"
#include "witness/protocol.hpp"
#include "witness/witness.hpp"

namespace witness {

inline constexpr int kReportFormatVersion = 1;

// Report records hold messages in display syntax so a report can be written
// and read back without a context.

struct SourceRecord {
  std::size_t pattern = 0;  // 1-based
  std::string pattern_text;
  std::string mgu;
  std::string instance;
  SecurityLevel value;
  friend bool operator==(const SourceRecord&, const SourceRecord&) = default;
};

struct DirectRecord {
  std::string component;
  SecurityLevel value;
  friend bool operator==(const DirectRecord&, const DirectRecord&) = default;
};

struct ReceivedRecord {
  std::string message;
  SecurityLevel value;
  friend bool operator==(const ReceivedRecord&, const ReceivedRecord&) = default;
};

struct StepRecord {
  std::string role;
  std::string step;
  std::string target;
  std::string sent;
  SecurityLevel declared;
  SecurityLevel received_bound;
  SecurityLevel lower_bound;
  std::vector<ReceivedRecord> received;
  std::vector<SourceRecord> sources;
  std::vector<DirectRecord> direct;
  bool pass = false;
  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct AuthRecord {
  std::string verifier;
  std::string claimant;
  std::string challenge;
  std::string step;
  std::string message;
  SecurityLevel level;
  bool claimant_in_level = false;
  bool above_bottom = false;
  bool pass = false;
  friend bool operator==(const AuthRecord&, const AuthRecord&) = default;
};

struct RoleRecord {
  std::string name;
  std::string text;
  friend bool operator==(const RoleRecord&, const RoleRecord&) = default;
};

enum class Verdict { Pass, NoDecision, NotChecked };

std::string_view to_string(Verdict v);

struct AnalysisReport {
  int format_version = kReportFormatVersion;
  std::string protocol;
  std::string function;
  std::string context_digest;
  std::vector<RoleRecord> roles;
  std::vector<std::string> patterns;
  std::vector<StepRecord> steps;
  Verdict secrecy = Verdict::NotChecked;
  std::optional<AuthRecord> authentication;
  Verdict authentication_verdict = Verdict::NotChecked;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

/// Hex SHA-256 of the context source text.
std::string context_digest(const VerificationContext& ctx);

/// Runs the secrecy check and, when `challenge` is given, the authentication
/// check, and records every intermediate value.
AnalysisReport build_report(const ProtocolModel& model, const VerificationContext& ctx,
                            SelectionVariant v, const std::optional<Challenge>& challenge);

/// Overall result: the authentication verdict when authentication was
/// checked, the secrecy verdict otherwise.
Verdict overall(const AnalysisReport& r);

/// Both renderers re-derive every verdict from the recorded levels and throw
/// Error when a recorded verdict disagrees.
std::string render_text(const AnalysisReport& r);
std::string render_json(const AnalysisReport& r);

/// Inverse of render_json. Throws Error on malformed input.
AnalysisReport report_from_json(std::string_view text);

}  // namespace witness
