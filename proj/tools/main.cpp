#include "cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using ccw::cli::Options;

void add_common(CLI::App& app, Options& opt) {
  app.add_option("-o,--out", opt.out, "Output file (stdout when omitted)");
  app.add_option("--space", opt.space, "Space document");
  app.add_option("--homotopy", opt.homotopy, "Homotopy action document");
  app.add_option("--cover", opt.cover, "Cover document");
  app.add_option("--mode", opt.mode, "Action on Window x Points: translation, diagonal or points");
  app.add_option("--seed", opt.seed, "64-bit seed");
}

int exit_for(ccw::ErrorKind kind) {
  using ccw::ErrorKind;
  switch (kind) {
    case ErrorKind::Precondition:
    case ErrorKind::EmptyCover: return ccw::cli::kFail;
    case ErrorKind::InsufficientDomain:
    case ErrorKind::EmptyInnerWindow: return ccw::cli::kInconclusive;
    case ErrorKind::InvalidArgument:
    case ErrorKind::SizeCap:
    case ErrorKind::Schema: return ccw::cli::kBadInput;
  }
  return ccw::cli::kBadInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant cover construction and certification on finite models"};
  app.require_subcommand(1);
  Options opt;

  auto* gen = app.add_subcommand("generate", "Write a window, space, homotopy or cover document");
  gen->add_option("kind", opt.kind,
                  "window | interval | tree | cyclic | homotopy | orbit-space | whole-cover | brick-cover | "
                  "cylinder-cover | random-cover | section-cover")
      ->required();
  add_common(*gen, opt);
  gen->add_option("--group", opt.group, "Group: z, z<n>, f<n>, c<n>, joined by x");
  gen->add_option("--R", opt.R, "Window radius");
  gen->add_option("--m", opt.m, "Model size");
  gen->add_option("--depth", opt.depth, "Tree depth");
  gen->add_option("--rank,--k", opt.rank, "Free group rank");
  gen->add_option("--L", opt.L, "Brick length");
  gen->add_option("--layers", opt.layers, "Brick layers");
  gen->add_option("--prefix", opt.prefix, "Cylinder prefix length");
  gen->add_option("--blocks", opt.blocks, "Random cover blocks");
  gen->add_option("--break-probability", opt.break_probability, "Random cover break probability");
  gen->add_option("--order", opt.order, "Finite cyclic group order");
  gen->add_option("--base", opt.base, "Orbit-space base points");
  gen->add_option("--sections", opt.sections, "Section cover sections");

  auto* check = app.add_subcommand("check", "Certify a property; writes a certificate");
  check->add_option("kind", opt.kind,
                    "lebesgue | f-subset | dimension | multiplicity | disjoint | long | homotopy | zero-dim | bridge")
      ->required();
  add_common(*check, opt);
  check->add_option("--family", opt.family, "trivial | fin | vcyc | all");
  check->add_option("--alpha", opt.alpha, "Radius, integer or p/q");
  check->add_option("--d", opt.d, "Multiplicity radius");
  check->add_option("--r", opt.r, "Disjointness radius");
  check->add_option("--n", opt.n, "Dimension or longness parameter");
  check->add_option("--margin", opt.margin, "Extra window margin for longness seeds");

  auto* convert = app.add_subcommand("convert", "Transform a document; writes it and a certificate");
  convert
      ->add_option("kind", opt.kind,
                   "cover-to-map | map-to-families | phi-psi | cover-to-mult | mult-to-cover | boundary-extend | "
                   "refine-equivariant | partition-lu")
      ->required();
  add_common(*convert, opt);
  convert->add_option("--cert", opt.cert, "Certificate path (default <out>.cert.json)");
  convert->add_option("--map", opt.map, "Map document");
  convert->add_option("--interior-cover", opt.interior_cover, "Interior cover for boundary-extend");
  convert->add_option("--group", opt.group, "Window document the space must match");
  convert->add_option("--input-cert", opt.input_certs, "Upstream certificates to chain");
  convert->add_option("--alpha", opt.alpha, "Radius, integer or p/q");
  convert->add_option("--d", opt.d, "Shrink radius");
  convert->add_option("--k", opt.k, "Longness parameter (map-to-families: cap on r)");
  convert->add_option("--n", opt.n, "Dimension");
  convert->add_option("--r", opt.r, "Longness of the families (default: largest admissible)");

  auto* report = app.add_subcommand("report", "Plain-text summary of a certificate");
  report->add_option("--in", opt.in, "Certificate")->required();
  report->add_option("-o,--out", opt.out, "Output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ccw::cli::kBadInput;
  }

  try {
    if (*gen) return ccw::cli::cmd_generate(opt);
    if (*check) return ccw::cli::cmd_check(opt);
    if (*convert) return ccw::cli::cmd_convert(opt);
    return ccw::cli::cmd_report(opt);
  } catch (const ccw::Error& e) {
    std::cerr << "ccw: " << ccw::to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "ccw: Schema: " << e.what() << "\n";
    return ccw::cli::kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "ccw: " << e.what() << "\n";
    return ccw::cli::kBadInput;
  }
}
