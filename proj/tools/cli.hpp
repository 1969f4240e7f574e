#pragma once

#include "ccw/characterisations.hpp"
#include "ccw/error.hpp"
#include "ccw/serialize.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ccw::cli {

/// Union of every option the subcommands accept; unused ones stay empty.
struct Options {
  std::string kind;  // generate/check kind or convert direction
  std::string out;
  std::string cert;  // convert: certificate path, default <out>.cert.json
  std::string in;

  std::string space, homotopy, cover, interior_cover, map;
  std::string group;  // generate: group name such as z2 or f2; refine-equivariant: window document
  std::vector<std::string> input_certs;

  std::string mode = "translation";
  std::string family = "vcyc";

  std::optional<int> R, m, depth, rank, L, layers, prefix, k, n, blocks, order, base, sections, margin;
  std::optional<std::string> alpha, d, r;
  std::optional<std::uint64_t> seed;
  double break_probability = 0;
};

enum ExitCode : int { kPass = 0, kFail = 2, kInconclusive = 3, kBadInput = 4 };

/// A loaded document together with its path and content hash.
struct Loaded {
  std::string path;
  std::string sha256;
  Json doc;
};

std::string sha256_hex(const std::string& bytes);
Loaded load(const std::string& path);
/// Writes the canonical dump plus a newline via a temporary file and rename.
std::string write_document(const std::string& path, const Json& doc);

/// Everything a command may need about the ground set.
struct Context {
  WindowPtr window;
  std::size_t n_points = 0;
  std::optional<CompactificationModel> model;
  std::shared_ptr<AdbEngine> engine;
  std::map<std::string, Loaded> inputs;

  GroundPtr ground(ActionMode mode) const;
};

/// Loads --space and --homotopy when given.
Context make_context(const Options& opt);
CoverFamily load_cover(Context& ctx, const std::string& path, const std::string& role = "cover");

/// Builds the manifest: inputs with hashes, parameters and outputs.
class Manifest {
 public:
  void input(const Loaded& l, const std::string& role);
  void inputs(const Context& ctx);
  void param(const std::string& name, Json value) { params_[name] = std::move(value); }
  void output(const std::string& role, const std::string& path, const std::string& hash);
  /// Records an upstream certificate; convert chains the certificates of its inputs.
  void chain(const Loaded& cert);
  Json json() const;

 private:
  Json chained_ = Json::array();
  Json inputs_ = Json::object();
  Json params_ = Json::object();
  Json outputs_ = Json::object();
};

/// Chains --input-cert files and any "<input>.cert.json" sitting next to an input.
void chain_certificates(Manifest& manifest, const Options& opt, const Context& ctx);

Json certificate(const std::string& command, const std::string& verdict, Json result, const Manifest& manifest);
int verdict_code(const std::string& verdict);

/// "z", "z2", "f2", "c6" and products such as "zxc2".
std::shared_ptr<const Group> parse_group(const std::string& text);
WindowPtr build_window(const std::string& group, int radius);

Rational parse_param(const std::optional<std::string>& text, const std::string& name);
template <class T>
T need(const std::optional<T>& v, const std::string& name) {
  if (!v) fail(ErrorKind::InvalidArgument, "--" + name + " is required");
  return *v;
}

int cmd_generate(const Options& opt);
int cmd_check(const Options& opt);
int cmd_convert(const Options& opt);
int cmd_report(const Options& opt);

}  // namespace ccw::cli
