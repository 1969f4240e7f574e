#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace ccw::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::InvalidArgument, "SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

Loaded load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Json doc = Json::parse(bytes, nullptr, false);
  if (doc.is_discarded()) fail(ErrorKind::Schema, path + " is not valid JSON");
  // Hash the canonical form so reformatting a document does not change its identity.
  return {path, sha256_hex(canonical_dump(doc)), std::move(doc)};
}

std::string write_document(const std::string& path, const Json& doc) {
  const std::string bytes = canonical_dump(doc) + "\n";
  if (path.empty() || path == "-") {
    std::fwrite(bytes.data(), 1, bytes.size(), stdout);
    return sha256_hex(canonical_dump(doc));
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + path);
    out << bytes;
  }
  std::filesystem::rename(tmp, path);
  return sha256_hex(canonical_dump(doc));
}

GroundPtr Context::ground(ActionMode mode) const {
  if (engine) {
    if (mode != ActionMode::Translation) fail(ErrorKind::InvalidArgument, "homotopy grounds use the translation mode");
    return engine->ground_ptr();
  }
  if (!window) fail(ErrorKind::InvalidArgument, "need --space or --homotopy to fix the ground set");
  std::shared_ptr<const PartialAction> action;
  if (model) action = std::make_shared<PartialAction>(model->action);
  if (mode != ActionMode::Translation && !action) fail(ErrorKind::InvalidArgument, "this mode needs --space");
  return std::make_shared<GroundSet>(window, n_points, mode, action, max_ground_from_env());
}

Context make_context(const Options& opt) {
  Context ctx;
  const std::size_t cap = max_ground_from_env();
  if (!opt.space.empty()) {
    auto l = load(opt.space);
    ctx.model = model_from_doc(l.doc, cap);
    ctx.window = ctx.model->action.window();
    ctx.n_points = ctx.model->space.size();
    ctx.inputs["space"] = std::move(l);
  }
  if (!opt.homotopy.empty()) {
    auto l = load(opt.homotopy);
    auto ha = homotopy_from_doc(l.doc, cap);
    if (ctx.model && ha.n_points != ctx.n_points) {
      fail(ErrorKind::Schema, "homotopy and space disagree on the number of points");
    }
    ctx.window = ha.window;
    ctx.n_points = ha.n_points;
    if (ctx.window->size() * ctx.n_points > cap) fail(ErrorKind::SizeCap, "ground set exceeds CCW_MAX_GROUND");
    ctx.engine = std::make_shared<AdbEngine>(ha);
    ctx.inputs["homotopy"] = std::move(l);
  }
  return ctx;
}

CoverFamily load_cover(Context& ctx, const std::string& path, const std::string& role) {
  if (path.empty()) fail(ErrorKind::InvalidArgument, "--" + role + " is required");
  auto l = load(path);
  const ActionMode mode = cover_mode(l.doc);
  GroundPtr ground;
  if (mode == ActionMode::PointsOnly) {
    if (!ctx.model) fail(ErrorKind::InvalidArgument, "points-only covers need --space");
    ground = std::make_shared<GroundSet>(ctx.window, ctx.n_points, mode,
                                         std::make_shared<PartialAction>(ctx.model->action), max_ground_from_env());
  } else {
    ground = ctx.ground(mode);
  }
  auto cover = cover_from_doc(l.doc, ground);
  ctx.inputs[role] = std::move(l);
  return cover;
}

void Manifest::input(const Loaded& l, const std::string& role) {
  inputs_[role] = Json{{"path", l.path}, {"sha256", l.sha256}};
}

void Manifest::inputs(const Context& ctx) {
  for (const auto& [role, l] : ctx.inputs) input(l, role);
}

void Manifest::output(const std::string& role, const std::string& path, const std::string& hash) {
  outputs_[role] = Json{{"path", path}, {"sha256", hash}};
}

void Manifest::chain(const Loaded& cert) {
  chained_.push_back(Json{{"path", cert.path}, {"sha256", cert.sha256}});
}

Json Manifest::json() const {
  return Json{{"inputs", inputs_},   {"params", params_}, {"outputs", outputs_},
              {"chained", chained_}, {"tool", "ccw 0.1.0"}};
}

void chain_certificates(Manifest& manifest, const Options& opt, const Context& ctx) {
  for (const auto& path : opt.input_certs) manifest.chain(load(path));
  for (const auto& [role, l] : ctx.inputs) {
    const std::string sibling = l.path + ".cert.json";
    if (std::filesystem::exists(sibling)) manifest.chain(load(sibling));
  }
}

Json certificate(const std::string& command, const std::string& verdict, Json result, const Manifest& manifest) {
  return Json{{"schema", schema_name("certificate")},
              {"command", command},
              {"verdict", verdict},
              {"result", std::move(result)},
              {"manifest", manifest.json()},
              {"model", Json::array({"finite ground set: every subset is open",
                                     "conclusions concern the finite model only"})}};
}

int verdict_code(const std::string& verdict) {
  if (verdict == "pass") return kPass;
  if (verdict == "inconclusive") return kInconclusive;
  return kFail;
}

std::shared_ptr<const Group> parse_group(const std::string& text) {
  std::vector<std::shared_ptr<const Group>> factors;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('x', start), text.size());
    const std::string part = text.substr(start, end - start);
    if (part.empty()) fail(ErrorKind::InvalidArgument, "bad group '" + text + "'");
    int arg = 1;
    if (part.size() > 1) {
      try {
        std::size_t used = 0;
        arg = std::stoi(part.substr(1), &used);
        if (used != part.size() - 1) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        fail(ErrorKind::InvalidArgument, "bad group '" + text + "'");
      }
    }
    if (arg < 1) fail(ErrorKind::InvalidArgument, "bad group '" + text + "'");
    switch (part[0]) {
      case 'z': factors.push_back(make_free_abelian(arg)); break;
      case 'f': factors.push_back(make_free(arg)); break;
      case 'c': factors.push_back(FiniteGroup::cyclic(arg)); break;
      default: fail(ErrorKind::InvalidArgument, "bad group '" + text + "' (z<n>, f<n>, c<n>, joined by x)");
    }
    start = end + 1;
  }
  if (factors.size() == 1) return factors.front();
  return std::make_shared<ProductGroup>(std::move(factors));
}

WindowPtr build_window(const std::string& group, int radius) {
  if (radius < 0) fail(ErrorKind::InvalidArgument, "--R must be nonnegative");
  return GroupWindow::build(parse_group(group), radius, max_ground_from_env());
}

Rational parse_param(const std::optional<std::string>& text, const std::string& name) {
  if (!text) fail(ErrorKind::InvalidArgument, "--" + name + " is required");
  try {
    return parse_rational(*text);
  } catch (const Error&) {
    fail(ErrorKind::InvalidArgument, "--" + name + " must be an integer or p/q");
  }
}

}  // namespace ccw::cli
