#include "cli.hpp"

#include "ccw/boundary.hpp"
#include "ccw/generators.hpp"
#include "ccw/refine.hpp"

#include <iostream>
#include <set>

namespace ccw::cli {
namespace {

struct Converted {
  Json output;
  std::string verdict;
  Json result;
};

const AdbEngine& engine_of(const Context& ctx) {
  if (!ctx.engine) fail(ErrorKind::InvalidArgument, "--homotopy is required");
  return *ctx.engine;
}

Loaded load_input(Context& ctx, const std::string& path, const std::string& role) {
  if (path.empty()) fail(ErrorKind::InvalidArgument, "--" + role + " is required");
  auto l = load(path);
  ctx.inputs[role] = l;
  return l;
}

Json table_hash(const std::vector<L1Point>& table) {
  Json rows = Json::array();
  for (const auto& p : table) rows.push_back(l1_json(p));
  return sha256_hex(canonical_dump(rows));
}

Converted cover_to_map_cmd(const Options& opt, Context& ctx, Manifest& man) {
  const auto& engine = engine_of(ctx);
  auto cover = load_cover(ctx, opt.cover);
  const int k = need(opt.k, "k");
  man.param("k", k);
  auto phi = cover_to_map(cover, engine, k);
  auto eq = check_equivariance(phi);
  const auto shape = domain_shape(phi);
  Json j{{"dimension", phi.dimension},
         {"measured_constant", rational_json(phi.measured_constant)},
         {"certified_bound", rational_json(phi.certified_bound)},
         {"nerve_vertices", phi.complex.n_vertices()},
         {"nerve_dimension", phi.complex.dimension()},
         {"domain_size", phi.domain.count()},
         {"domain_radius", shape.radius},
         {"equivariant", eq.exact},
         {"equivariance_checked", eq.checked}};
  const bool ok = phi.certified_bound == 0 || phi.measured_constant <= phi.certified_bound;
  return {eqmap_doc(phi), ok ? "pass" : "fail", j};
}

Converted map_to_families_cmd(const Options& opt, Context& ctx, Manifest& man) {
  const auto& engine = engine_of(ctx);
  auto l = load_input(ctx, opt.map, "map");
  auto phi = eqmap_from_doc(l.doc, engine.ground_ptr());
  const int n = opt.n.value_or(phi.dimension);
  man.param("n", n);
  const Rational sk = subdivision_constant(phi, engine);
  int r = 0;
  if (opt.r) {
    const Rational given = parse_param(opt.r, "r");
    if (given.denominator() != 1 || given < 0) fail(ErrorKind::InvalidArgument, "--r must be a nonnegative integer");
    r = static_cast<int>(given.numerator());
  } else {
    auto best = admissible_r(sk, n, opt.k.value_or(8));
    if (!best) {
      fail(ErrorKind::Precondition, "constant into the subdivision " + to_string(sk) +
                                        " exceeds 1/(n+1) for n = " + std::to_string(n));
    }
    r = *best;
  }
  man.param("r", r);
  auto fam = map_to_disjoint_families(phi, engine, n, r);
  Json families = Json::array();
  Json sizes = Json::array();
  for (const auto& f : fam.families) {
    families.push_back(cover_doc(f));
    sizes.push_back(f.size());
  }
  Json out{{"schema", schema_name("families")}, {"n", n}, {"r", r}, {"families", families},
           {"united", cover_doc(fam.united)}};
  Json j{{"k_constant", rational_json(fam.k_constant)},
         {"sk_constant", rational_json(fam.sk_constant)},
         {"threshold", rational_json(fam.threshold)},
         {"r", r},
         {"family_sizes", sizes},
         {"disjoint", fam.disjoint},
         {"long", fam.longness.pass},
         {"long_clipped", fam.longness.inconclusive},
         {"long_seeds", fam.longness.seeds}};
  std::string verdict = "pass";
  if (!fam.disjoint || !fam.longness.pass) {
    verdict = "fail";
  } else if (fam.longness.inconclusive) {
    verdict = "inconclusive";
  }
  return {out, verdict, j};
}

Converted phi_psi_cmd(const Options& opt, Context& ctx, Manifest& man) {
  const auto& engine = engine_of(ctx);
  auto l = load_input(ctx, opt.map, "map");
  const bool from_psi = l.doc.value("form", "") == "psi";
  man.param("direction", from_psi ? "psi-to-phi" : "phi-to-psi");
  Json j;
  Json out;
  AlmostEquivariantMap psi;
  if (from_psi) {
    psi = psi_from_doc(l.doc, engine.ground().window());
    auto phi = psi_to_phi(psi, engine);
    j["antidiagonal_constant"] = rational_json(antidiagonal_constant(phi, engine));
    j["domain_size"] = phi.domain.count();
    out = eqmap_doc(phi);
  } else {
    auto phi = eqmap_from_doc(l.doc, engine.ground_ptr());
    psi = phi_to_psi(phi, engine);
    j["antidiagonal_constant"] = rational_json(antidiagonal_constant(phi, engine));
    out = psi_doc(psi);
  }
  const auto defect = equivariance_defect(psi, engine);
  j["equivariance_defect"] = rational_json(defect.value);
  j["defect_coverage"] = rational_json(defect.coverage());
  auto back = phi_to_psi(psi_to_phi(psi, engine), engine);
  const Json before = table_hash(psi.table);
  const Json after = table_hash(back.table);
  j["psi_table_sha256"] = before;
  j["round_trip_table_sha256"] = after;
  j["round_trip_identical"] = before == after;
  return {out, before == after ? "pass" : "fail", j};
}

Converted cover_to_mult_cmd(const Options& opt, Context& ctx, Manifest& man) {
  auto cover = load_cover(ctx, opt.cover);
  const Rational d = parse_param(opt.d, "d");
  man.param("d", rational_json(d));
  auto mc = cover_to_multiplicity_cover(cover, d);
  Json j{{"multiplicity", mc.multiplicity.value},
         {"source_dimension", mc.source_dimension},
         {"covers_inner", mc.covers_inner},
         {"stabilizers_match", mc.stabilizers_match},
         {"stabilizer_kind", "window-stabilizer on the inner window"}};
  const bool ok = mc.covers_inner && mc.stabilizers_match && mc.multiplicity.value <= mc.source_dimension + 1;
  return {cover_doc(mc.family), ok ? "pass" : "fail", j};
}

Converted mult_to_cover_cmd(const Options& opt, Context& ctx, Manifest& man) {
  auto cover = load_cover(ctx, opt.cover);
  const Rational alpha = parse_param(opt.alpha, "alpha");
  man.param("alpha", rational_json(alpha));
  auto lc = multiplicity_to_lebesgue_cover(cover, alpha);
  Json j{{"multiplicity", lc.multiplicity},
         {"dimension", lc.dimension},
         {"inner_dimension", lc.inner_dimension},
         {"lebesgue", lc.lebesgue.pass},
         {"stabilizer_index_bound", lc.stabilizer_index_bound}};
  const bool ok = lc.lebesgue.pass && lc.inner_dimension <= lc.multiplicity - 1;
  return {cover_doc(lc.family), ok ? "pass" : "fail", j};
}

Converted boundary_extend_cmd(const Options& opt, Context& ctx, Manifest& man) {
  if (!ctx.model) fail(ErrorKind::InvalidArgument, "--space is required");
  auto boundary = load_cover(ctx, opt.cover);
  const Rational alpha = parse_param(opt.alpha, "alpha");
  man.param("alpha", rational_json(alpha));
  auto ext = extend_boundary_cover(boundary, *ctx.model);
  CoverFamily interior = opt.interior_cover.empty()
                             ? make_singleton_cover(boundary.ground, ctx.model->interior_points())
                             : load_cover(ctx, opt.interior_cover, "interior_cover");
  auto full = assemble_full_cover(ext.family, interior, *ctx.model, alpha);
  const std::string ledger = std::to_string(full.dim_boundary_part) + " + " + std::to_string(full.dim_interior_part) +
                             " + 1";
  Json j{{"restriction_exact", ext.restriction_exact},
         {"intersection_law", ext.intersection_law},
         {"intersections_checked", ext.intersections_checked},
         {"equivariant", ext.equivariant},
         {"equivariance_checked", ext.equivariance_checked},
         {"coverage", rational_json(ext.coverage)},
         {"dim_source", ext.dim_source},
         {"dim_extension", ext.dim_extension},
         {"dim", full.dim},
         {"bound", full.bound},
         {"dim_ledger", std::to_string(full.dim) + " <= " + ledger},
         {"lebesgue", full.lebesgue.pass},
         {"boundary_lebesgue", full.boundary_lebesgue.pass},
         {"interior_lebesgue", full.interior_lebesgue.pass}};
  const bool ok = ext.restriction_exact && ext.intersection_law && ext.equivariant && full.dim <= full.bound &&
                  full.lebesgue.pass;
  return {cover_doc(full.family), ok ? "pass" : "fail", j};
}

Converted refine_equivariant_cmd(const Options& opt, Context& ctx, Manifest& man) {
  if (!ctx.model) fail(ErrorKind::InvalidArgument, "--space is required");
  if (!opt.group.empty()) {
    auto l = load_input(ctx, opt.group, "group");
    auto w = window_from_doc(l.doc, max_ground_from_env());
    if (w->group().name() != ctx.window->group().name() || w->radius() != ctx.window->radius()) {
      fail(ErrorKind::Schema, "--group does not match the window of --space");
    }
  }
  auto cover = load_cover(ctx, opt.cover);
  if (cover.ground->mode() != ActionMode::PointsOnly) fail(ErrorKind::InvalidArgument, "expected a points cover");
  auto q = quotient_space(ctx.model->space, ctx.model->action);
  std::set<std::vector<Point>> images;
  for (const auto& u : cover.members) {
    std::set<Point> img;
    for (auto p = u.find_first(); p != Subset::npos; p = u.find_next(p)) img.insert(static_cast<Point>(q.class_of[p]));
    images.emplace(img.begin(), img.end());
  }
  std::vector<std::vector<Point>> quotient_cover(images.begin(), images.end());
  auto ref = min_dim_refinement(q.classes.size(), quotient_cover);
  auto lift = equivariant_lift(ref.members, cover, q);
  Json j{{"quotient_points", q.classes.size()},
         {"quotient_cover", quotient_cover},
         {"refinement", ref.members},
         {"refinement_optimal", ref.optimal},
         {"unchanged_members", ref.unchanged},
         {"choice", lift.choice},
         {"dim_lift", lift.dim_lift},
         {"dim_refinement", lift.dim_refinement},
         {"refines", lift.refines},
         {"covers", lift.covers},
         {"parts_disjoint", lift.parts_disjoint},
         {"stabilizers_match", lift.stabilizers_match}};
  const bool ok = lift.refines && lift.covers && lift.parts_disjoint && lift.stabilizers_match &&
                  lift.dim_lift <= lift.dim_refinement;
  return {cover_doc(lift.cover), ok ? "pass" : "fail", j};
}

Converted partition_lu_cmd(const Options& opt, Context& ctx, Manifest& man) {
  auto cover = load_cover(ctx, opt.cover);
  const int k = need(opt.k, "k");
  man.param("k", k);
  auto pm = partition_lU(cover, k);
  Json j{{"lipschitz", pm.lipschitz},
         {"invariant", pm.invariant},
         {"invariance_checked", pm.invariance_checked},
         {"support", pm.support},
         {"bound", rational_json(pm.bound)},
         {"domain_size", pm.map.domain.count()}};
  if (ctx.engine) {
    const Rational c = antidiagonal_constant(pm.map, *ctx.engine);
    j["antidiagonal_constant"] = rational_json(c);
  }
  const bool ok = pm.lipschitz && pm.invariant && pm.support;
  return {eqmap_doc(pm.map), ok ? "pass" : "fail", j};
}

Converted run(const Options& opt, Context& ctx, Manifest& man) {
  const std::string& k = opt.kind;
  if (k == "cover-to-map") return cover_to_map_cmd(opt, ctx, man);
  if (k == "map-to-families") return map_to_families_cmd(opt, ctx, man);
  if (k == "phi-psi") return phi_psi_cmd(opt, ctx, man);
  if (k == "cover-to-mult") return cover_to_mult_cmd(opt, ctx, man);
  if (k == "mult-to-cover") return mult_to_cover_cmd(opt, ctx, man);
  if (k == "boundary-extend") return boundary_extend_cmd(opt, ctx, man);
  if (k == "refine-equivariant") return refine_equivariant_cmd(opt, ctx, man);
  if (k == "partition-lu") return partition_lu_cmd(opt, ctx, man);
  fail(ErrorKind::InvalidArgument, "unknown conversion '" + k + "'");
}

}  // namespace

int cmd_convert(const Options& opt) {
  if (opt.out.empty() || opt.out == "-") fail(ErrorKind::InvalidArgument, "convert needs -o <file>");
  Context ctx = make_context(opt);
  Manifest man;
  Converted c = run(opt, ctx, man);
  man.inputs(ctx);
  chain_certificates(man, opt, ctx);
  man.output("document", opt.out, write_document(opt.out, c.output));
  const std::string cert_path = opt.cert.empty() ? opt.out + ".cert.json" : opt.cert;
  write_document(cert_path, certificate("convert " + opt.kind, c.verdict, c.result, man));
  std::cerr << "convert " << opt.kind << ": " << c.verdict << "\n";
  return verdict_code(c.verdict);
}

}  // namespace ccw::cli
