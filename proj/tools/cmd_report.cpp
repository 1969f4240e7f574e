#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ccw::cli {
namespace {

void summarize(std::ostringstream& os, const std::string& key, const Json& value, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (value.is_object()) {
    os << pad << key << ":\n";
    for (const auto& [k, v] : value.items()) summarize(os, k, v, indent + 2);
  } else if (value.is_array()) {
    const bool scalars = std::all_of(value.begin(), value.end(), [](const Json& v) { return v.is_primitive(); });
    if (scalars && value.size() <= 8) {
      os << pad << key << ": " << value.dump() << "\n";
    } else {
      os << pad << key << ": " << value.size() << " entries\n";
    }
  } else if (value.is_string()) {
    os << pad << key << ": " << value.get<std::string>() << "\n";
  } else {
    os << pad << key << ": " << value.dump() << "\n";
  }
}

}  // namespace

int cmd_report(const Options& opt) {
  if (opt.in.empty()) fail(ErrorKind::InvalidArgument, "--in is required");
  auto l = load(opt.in);
  expect_schema(l.doc, "certificate");
  const Json& cert = l.doc;
  std::ostringstream os;
  try {
    os << "certificate " << l.path << " (sha256 " << l.sha256 << ")\n";
    os << "command: " << cert.at("command").get<std::string>() << "\n";
    os << "verdict: " << cert.at("verdict").get<std::string>() << "\n";
    summarize(os, "result", cert.at("result"), 0);
    const Json& man = cert.at("manifest");
    summarize(os, "params", man.at("params"), 0);
    os << "inputs:\n";
    for (const auto& [role, in] : man.at("inputs").items()) {
      os << "  " << role << ": " << in.at("path").get<std::string>() << " " << in.at("sha256").get<std::string>()
         << "\n";
    }
    if (cert.contains("model")) {
      os << "model:\n";
      for (const auto& note : cert.at("model")) os << "  " << note.get<std::string>() << "\n";
    }
  } catch (const Json::exception& e) {
    fail(ErrorKind::Schema, std::string("malformed certificate: ") + e.what());
  }
  const std::string text = os.str();
  if (opt.out.empty() || opt.out == "-") {
    std::cout << text;
  } else {
    std::ofstream out(opt.out, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + opt.out);
    out << text;
  }
  return verdict_code(cert.at("verdict").get<std::string>());
}

}  // namespace ccw::cli
