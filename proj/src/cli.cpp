#include "witness/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "witness/errors.hpp"
#include "witness/report.hpp"

namespace witness {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Witness-function analysis of cryptographic protocols", "witness-analyze"};
  std::string protocol_path, context_path, out_path;
  std::string function = "max";
  std::string check = "all";
  std::string format = "text";

  app.add_option("--protocol", protocol_path, "protocol narration file")->required();
  app.add_option("--context", context_path, "verification context file")->required();
  app.add_option("--function", function, "selection: max, ek or n")
      ->check(CLI::IsMember({"max", "ek", "n"}))
      ->default_str("max");
  app.add_option("--check", check, "secrecy, auth or all")
      ->check(CLI::IsMember({"secrecy", "auth", "all"}))
      ->default_str("all");
  app.add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->default_str("text");
  app.add_option("--out", out_path, "write the report here instead of stdout");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    auto ctx = VerificationContext::parse(read_file(context_path));
    auto narration = parse_narration(read_file(protocol_path), ctx);
    auto model = build_model(std::move(narration), ctx);

    std::optional<Challenge> challenge;
    if (check != "secrecy") challenge = ctx.challenge();
    if (check == "auth" && !challenge)
      throw Error("--check auth needs a challenge declaration in the context");

    auto report = build_report(model, ctx, *parse_variant(function), challenge);
    std::string text = format == "json" ? render_json(report) : render_text(report);
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!(f << text)) throw Error("cannot write '" + out_path + "'");
    }
    return overall(report) == Verdict::Pass ? kExitPass : kExitNoDecision;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace witness
