#include "cli.hpp"

#include <iostream>

namespace ccw::cli {
namespace {

struct Checked {
  std::string verdict;
  Json result;
};

Json window_meta(const GroupWindow& w, const std::optional<Rational>& alpha = {}) {
  Json j{{"group", w.group().name()}, {"radius", w.radius()}, {"size", w.size()}};
  if (alpha) j["inner_radius"] = rational_json(Rational(w.radius() + 1) - *alpha);
  return j;
}

Json witness_json(const GroundSet& ground, const std::optional<std::size_t>& p) {
  if (!p) return nullptr;
  return Json{{"index", *p}, {"element", ground.format(*p)}};
}

Json index_list(const GroupWindow& w, const std::vector<Index>& elements) {
  Json out = Json::array();
  for (Index g : elements) out.push_back(w.format(g));
  return out;
}

Checked lebesgue(const Options& opt, Context& ctx, Manifest& man) {
  auto cover = load_cover(ctx, opt.cover);
  const Rational alpha = parse_param(opt.alpha, "alpha");
  man.param("alpha", rational_json(alpha));
  auto res = lebesgue_check(cover, alpha);
  Json j{{"pass", res.pass},
         {"witness", witness_json(*cover.ground, res.witness)},
         {"inner_size", res.inner_size},
         {"alpha_is_infinite", res.alpha_is_infinite},
         {"window", window_meta(*cover.ground->window(), alpha)}};
  return {res.pass ? "pass" : "fail", j};
}

Checked f_subset(const Options& opt, Context& ctx, Manifest& man) {
  auto cover = load_cover(ctx, opt.cover);
  const auto family = FamilyPredicate::parse(opt.family);
  man.param("family", family.name());
  Json members = Json::array();
  std::string verdict = "pass";
  for (std::size_t i = 0; i < cover.size(); ++i) {
    auto v = f_subset_check(*cover.ground, cover.members[i], family);
    Json m{{"member", i},
           {"status", to_string(v.status)},
           {"window_stabilizer", index_list(*cover.ground->window(), v.stabilizer)},
           {"in_family", v.family.holds},
           {"decision_exact", v.family.exact},
           {"determined", v.determined},
           {"window_size", v.window_size}};
    if (v.witness) m["witness"] = cover.ground->window()->format(*v.witness);
    members.push_back(std::move(m));
    if (v.status == FSubsetVerdict::Status::InsufficientDomain) {
      if (verdict == "pass") verdict = "inconclusive";
    } else if (v.status != FSubsetVerdict::Status::Ok) {
      verdict = "fail";
    }
  }
  return {verdict, Json{{"members", members},
                        {"family_virtually_closed", family.virtually_closed()},
                        {"stabilizer_kind", "window-stabilizer"},
                        {"window", window_meta(*cover.ground->window())}}};
}

Checked dimension(const Options& opt, Context& ctx, Manifest& man) {
  auto cover = load_cover(ctx, opt.cover);
  const int dim = family_dimension(cover);
  Json j{{"dimension", dim},
         {"members", cover.size()},
         {"covers_ground", cover.covers_ground()},
         {"witness", witness_json(*cover.ground, max_multiplicity_point(cover))}};
  bool ok = true;
  if (opt.n) {
    man.param("n", *opt.n);
    ok = dim <= *opt.n;
  }
  return {ok ? "pass" : "fail", j};
}

Checked multiplicity(const Options& opt, Context& ctx, Manifest& man) {
  auto cover = load_cover(ctx, opt.cover);
  const Rational d = parse_param(opt.d, "d");
  man.param("d", rational_json(d));
  auto res = g_multiplicity(cover, d);
  Json j{{"multiplicity", res.value},
         {"witness", witness_json(*cover.ground, res.witness)},
         {"inner_size", res.inner_size},
         {"window", window_meta(*cover.ground->window(), d)}};
  bool ok = true;
  if (opt.n) {
    man.param("n", *opt.n);
    ok = res.value <= *opt.n + 1;
  }
  return {ok ? "pass" : "fail", j};
}

Checked disjoint(const Options& opt, Context& ctx, Manifest& man) {
  auto cover = load_cover(ctx, opt.cover);
  const Rational r = parse_param(opt.r, "r");
  man.param("r", rational_json(r));
  auto res = r_disjointness_check(cover, r);
  Json j{{"pass", res.pass}, {"window", window_meta(*cover.ground->window(), r)}};
  if (!res.pass) {
    j["first"] = res.first;
    j["second"] = res.second;
    j["witness"] = witness_json(*cover.ground, res.witness);
  }
  return {res.pass ? "pass" : "fail", j};
}

Checked longness(const Options& opt, Context& ctx, Manifest& man) {
  if (!ctx.engine) fail(ErrorKind::InvalidArgument, "--homotopy is required");
  auto cover = load_cover(ctx, opt.cover);
  const int n = need(opt.n, "n");
  const int margin = opt.margin.value_or(0);
  man.param("n", n);
  man.param("margin", margin);
  auto res = n_long_check(cover, *ctx.engine, n, margin);
  Json j{{"pass", res.pass},
         {"clipped", res.inconclusive},
         {"seeds", res.seeds},
         {"step_length", ctx.engine->action().step_length()},
         {"witness", witness_json(*cover.ground, res.witness)},
         {"window", window_meta(*cover.ground->window())}};
  if (!res.pass) return {"fail", j};
  return {res.inconclusive ? "inconclusive" : "pass", j};
}

Checked homotopy(const Options&, Context& ctx, Manifest&) {
  if (!ctx.engine) fail(ErrorKind::InvalidArgument, "--homotopy is required");
  const auto& ha = ctx.engine->action();
  auto v = validate_homotopy_action(ha);
  Json j{{"ok", v.ok},
         {"violation", v.violation},
         {"generators", index_list(*ha.window, ha.S)},
         {"time_samples", ha.time_grid.size()},
         {"window", window_meta(*ha.window)}};
  return {v.ok ? "pass" : "fail", j};
}

Checked zero_dim(const Options& opt, Context& ctx, Manifest& man) {
  auto cover = load_cover(ctx, opt.cover);
  const Rational alpha = parse_param(opt.alpha, "alpha");
  man.param("alpha", rational_json(alpha));
  auto rep = zero_dim_structure_check(cover, alpha);
  Json fibers = Json::array();
  for (std::size_t i = 0; i < rep.fibers.size(); ++i) {
    fibers.push_back(Json{{"points", rep.fibers[i]}, {"orbit_size", rep.orbit_sizes[i]}});
  }
  Json j{{"product", rep.product},
         {"fibers", fibers},
         {"inner_size", rep.inner_size},
         {"witness", witness_json(*cover.ground, rep.witness)},
         {"window", window_meta(*cover.ground->window(), alpha)}};
  if (rep.bad_member) j["bad_member"] = *rep.bad_member;
  return {rep.product ? "pass" : "fail", j};
}

Checked bridge(const Options& opt, Context& ctx, Manifest& man) {
  if (!ctx.model) fail(ErrorKind::InvalidArgument, "--space is required");
  const Rational alpha = parse_param(opt.alpha, "alpha");
  if (alpha.denominator() != 1 || alpha < 1) fail(ErrorKind::InvalidArgument, "--alpha must be a positive integer");
  man.param("alpha", rational_json(alpha));
  auto rep = adb_bridge_check(ctx.model->action, static_cast<int>(alpha.numerator()));
  Json j{{"checked", rep.checked}, {"mismatches", rep.mismatches}, {"window", window_meta(*ctx.window, alpha)}};
  if (rep.first_mismatch) j["first_mismatch"] = *rep.first_mismatch;
  if (rep.checked == 0) return {"inconclusive", j};
  return {rep.mismatches == 0 ? "pass" : "fail", j};
}

Checked run(const Options& opt, Context& ctx, Manifest& man) {
  const std::string& k = opt.kind;
  if (k == "lebesgue") return lebesgue(opt, ctx, man);
  if (k == "f-subset") return f_subset(opt, ctx, man);
  if (k == "dimension") return dimension(opt, ctx, man);
  if (k == "multiplicity") return multiplicity(opt, ctx, man);
  if (k == "disjoint") return disjoint(opt, ctx, man);
  if (k == "long") return longness(opt, ctx, man);
  if (k == "homotopy") return homotopy(opt, ctx, man);
  if (k == "zero-dim") return zero_dim(opt, ctx, man);
  if (k == "bridge") return bridge(opt, ctx, man);
  fail(ErrorKind::InvalidArgument, "unknown check '" + k + "'");
}

}  // namespace

int cmd_check(const Options& opt) {
  Context ctx = make_context(opt);
  Manifest man;
  Checked c;
  try {
    c = run(opt, ctx, man);
  } catch (const Error& e) {
    // A window too small to decide still gets a certificate.
    if (e.kind() != ErrorKind::InsufficientDomain && e.kind() != ErrorKind::EmptyInnerWindow) throw;
    c = {"inconclusive", Json{{"reason", to_string(e.kind())}, {"message", e.what()}}};
  }
  man.inputs(ctx);
  write_document(opt.out, certificate("check " + opt.kind, c.verdict, c.result, man));
  std::cerr << "check " << opt.kind << ": " << c.verdict << "\n";
  return verdict_code(c.verdict);
}

}  // namespace ccw::cli
