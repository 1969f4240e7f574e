#include "cli.hpp"

#include "ccw/generators.hpp"

#include <iostream>

namespace ccw::cli {
namespace {

std::uint64_t seed_of(const Options& opt) { return opt.seed.value_or(0); }

std::string group_of(const Options& opt, const char* fallback) {
  return opt.group.empty() ? fallback : opt.group;
}

GroundPtr cover_ground(const Options& opt, const Context& ctx) {
  return ctx.ground(parse_action_mode(opt.mode));
}

Json generate(const Options& opt) {
  const std::string& kind = opt.kind;
  if (kind == "window") {
    return window_doc(*build_window(group_of(opt, "z"), need(opt.R, "R")));
  }
  if (kind == "interval") {
    return space_doc(make_interval_compactification(build_window("z", need(opt.R, "R"))));
  }
  if (kind == "tree") {
    const int rank = opt.rank ? *opt.rank : opt.k.value_or(2);
    auto window = build_window("f" + std::to_string(rank), need(opt.R, "R"));
    return space_doc(make_tree_boundary_model(window, need(opt.depth, "depth"), max_ground_from_env()));
  }
  if (kind == "cyclic") {
    return space_doc(make_cyclic_model(build_window(group_of(opt, "z"), need(opt.R, "R")), need(opt.m, "m")));
  }
  if (kind == "orbit-space") {
    const int order = need(opt.order, "order");
    auto window = build_window("c" + std::to_string(order), order);
    return space_doc(make_free_orbit_space(window, need(opt.base, "base"), seed_of(opt)));
  }
  if (kind == "homotopy") {
    if (!opt.space.empty()) {
      Context ctx = make_context(opt);
      return homotopy_doc(genuine_to_homotopy(ctx.model->action, standard_generating_set(*ctx.window)));
    }
    auto window = build_window("z", need(opt.R, "R"));
    return homotopy_doc(make_perturbed_interval_homotopy(window, need(opt.m, "m"), seed_of(opt)));
  }

  Context ctx = make_context(opt);
  if (kind == "whole-cover") return cover_doc(make_whole_cover(cover_ground(opt, ctx)));
  if (kind == "brick-cover") {
    return cover_doc(make_brick_cover(cover_ground(opt, ctx), need(opt.L, "L"), need(opt.layers, "layers")));
  }
  if (kind == "cylinder-cover") {
    if (!ctx.model) fail(ErrorKind::InvalidArgument, "--space is required");
    return cover_doc(make_cylinder_cover(cover_ground(opt, ctx), *ctx.model, need(opt.prefix, "prefix")));
  }
  if (kind == "random-cover") {
    RandomCoverParams params;
    params.blocks = opt.blocks.value_or(params.blocks);
    params.break_probability = opt.break_probability;
    if (params.blocks < 1) fail(ErrorKind::InvalidArgument, "--blocks must be positive");
    if (params.break_probability < 0 || params.break_probability > 1) {
      fail(ErrorKind::InvalidArgument, "--break-probability must lie in [0, 1]");
    }
    return cover_doc(make_random_disjoint_cover(cover_ground(opt, ctx), seed_of(opt), params));
  }
  if (kind == "section-cover") {
    if (!ctx.model) fail(ErrorKind::InvalidArgument, "--space is required");
    auto ground = std::make_shared<GroundSet>(ctx.window, ctx.n_points, ActionMode::PointsOnly,
                                              std::make_shared<PartialAction>(ctx.model->action),
                                              max_ground_from_env());
    return cover_doc(make_section_cover(ground, seed_of(opt), opt.sections.value_or(3)));
  }
  fail(ErrorKind::InvalidArgument, "unknown generate kind '" + kind + "'");
}

}  // namespace

int cmd_generate(const Options& opt) {
  const Json doc = generate(opt);
  const std::string hash = write_document(opt.out, doc);
  if (!opt.out.empty() && opt.out != "-") std::cerr << opt.out << " sha256 " << hash << "\n";
  return kPass;
}

}  // namespace ccw::cli
