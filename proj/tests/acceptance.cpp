// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 when any fails.

#include "ccw/boundary.hpp"
#include "ccw/characterisations.hpp"
#include "ccw/error.hpp"
#include "ccw/generators.hpp"
#include "ccw/refine.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <set>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#ifndef CCW_CLI_PATH
#define CCW_CLI_PATH "ccw"
#endif

using namespace ccw;
using namespace ccw::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Records the first failure; later failures only bump the count.
class Tally {
 public:
  void require(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (first_.empty()) first_ = what;
  }
  Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, summary + "; " + std::to_string(failures_) + " failure(s), first: " + first_};
  }

 private:
  std::size_t failures_ = 0;
  std::string first_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. {G x X} over the interval model of a Z window of radius 64.
Outcome cyclic_to_zero() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  auto model = make_interval_compactification(z_window(64));
  auto ground = ground_for(model, ActionMode::Diagonal);
  auto cover = make_whole_cover(ground);
  auto v = f_subset_check(*ground, cover.members[0], FamilyPredicate{FamilyKind::VirtuallyCyclic});
  t.require(v.status == FSubsetVerdict::Status::Ok && v.complete(), "f_subset_check");
  t.require(family_dimension(cover) == 0, "dimension");
  for (int alpha = 1; alpha <= 65; ++alpha) {
    t.require(lebesgue_check(cover, Rational(alpha)).pass, "lebesgue alpha=" + std::to_string(alpha));
  }
  const double secs = seconds_since(t0);
  t.require(secs < 1.0, "runtime");
  char buf[96];
  std::snprintf(buf, sizeof buf, "VCyc member, dim 0, alpha 1..65 (%.2f s, limit 1 s)", secs);
  return t.outcome(buf);
}

// 2. Product form of disjoint covers with Lebesgue number 2.
Outcome zero_dim_structure() {
  Tally t;
  std::vector<CompactificationModel> models;
  models.push_back(make_tree_boundary_model(f_window(2, 2), 2));
  models.push_back(make_tree_boundary_model(f_window(2, 3), 2));
  models.push_back(make_tree_boundary_model(f_window(2, 3), 3));
  models.push_back(make_interval_compactification(z_window(8)));
  models.push_back(make_interval_compactification(z_window(30)));
  models.push_back(make_cyclic_model(zn_window(2, 4), 7));
  models.push_back(make_cyclic_model(z_window(32), 64));
  std::size_t verified = 0, rejected = 0, counterexamples = 0;
  std::uint64_t seed = 1;
  for (const auto& model : models) {
    t.require(model.space.size() <= 64 && model.action.window()->radius() <= 32, "instance size");
    for (auto mode : {ActionMode::Translation, ActionMode::Diagonal}) {
      auto ground = ground_for(model, mode);
      for (int i = 0; i < 12; ++i, ++seed) {
        RandomCoverParams params{1 + static_cast<int>(seed % 5), i % 4 == 3 ? 0.5 : 0.0};
        auto cover = make_random_disjoint_cover(ground, seed, params);
        if (family_dimension(cover) != 0 || !lebesgue_check(cover, Rational(2)).pass) {
          ++rejected;
          continue;
        }
        ++verified;
        auto report = zero_dim_structure_check(cover, Rational(2));
        if (!report.product) ++counterexamples;
      }
    }
  }
  t.require(verified >= 100, "fewer than 100 verified covers");
  t.require(counterexamples == 0, "product form counterexample");
  return t.outcome(std::to_string(verified) + " covers with Lebesgue 2 (" + std::to_string(rejected) +
                   " generated without it), " + std::to_string(counterexamples) + " counterexamples");
}

// 3. cover -> map -> disjoint families for n in {0,1,2}, k in {5,11,23}.
Outcome conversion_chain() {
  Tally t;
  double worst = 0;
  std::ostringstream constants;
  std::vector<std::string> vacuous;  // constant into SK above 1/(n+1): no r >= 0 qualifies
  for (int n = 0; n <= 2; ++n) {
    for (int k : {5, 11, 23}) {
      const auto t0 = std::chrono::steady_clock::now();
      const std::string tag = "n=" + std::to_string(n) + " k=" + std::to_string(k);
      try {
        auto ha = make_perturbed_interval_homotopy(z_window(6 * k + 30), 4, static_cast<std::uint64_t>(10 * n + k));
        AdbEngine engine(ha);
        CoverFamily cover;
        if (n == 0) cover = make_whole_cover(engine.ground_ptr());
        if (n == 1) cover = make_brick_cover(engine.ground_ptr(), 4 * k + 4, 2);
        if (n == 2) cover = make_brick_cover(engine.ground_ptr(), 3 * k + 6, 3);
        t.require(family_dimension(cover) == n, tag + " cover dimension");
        auto phi = cover_to_map(cover, engine, k);
        t.require(phi.measured_constant <= Rational(3 * (n + 1), k + 1), tag + " constant above 3(n+1)/(k+1)");
        const Rational sk = subdivision_constant(phi, engine);
        auto r = admissible_r(sk, n, k);
        // Longness is monotone in r, so the largest admissible r covers the smaller ones.
        if (!r) vacuous.push_back(tag);
        if (r) {
          auto fam = map_to_disjoint_families(phi, engine, n, *r);
          t.require(fam.disjoint, tag + " families not disjoint");
          t.require(fam.longness.pass && !fam.longness.inconclusive, tag + " not r-long");
          t.require(fam.families.size() == static_cast<std::size_t>(n + 1), tag + " family count");
          constants << " " << tag << ":" << to_string(phi.measured_constant) << "," << to_string(sk) << ",r=" << *r;
        }
      } catch (const Error& e) {
        t.require(false, tag + " " + e.what());
      }
      const double secs = seconds_since(t0);
      worst = std::max(worst, secs);
      t.require(secs < 30.0, tag + " runtime");
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, " (slowest %.2f s, limit 30 s)", worst);
  std::string none;
  for (const auto& v : vacuous) none += " " + v;
  return t.outcome("constants K,SK" + constants.str() + "; no admissible r:" + (none.empty() ? " none" : none) + buf);
}

// 4. cover -> multiplicity cover -> cover, and exhaustive pad/shrink.
Outcome multiplicity_equivalence() {
  Tally t;
  std::size_t round_trips = 0;
  for (int R : {24, 31, 40}) {
    auto w = z_window(R);
    for (std::size_t pts = 1; pts <= 3; ++pts) {
      auto ground = std::make_shared<GroundSet>(w, pts, ActionMode::Translation);
      for (int layers = 1; layers <= 3; ++layers) {
        for (int length : {6, 9, 12, 16}) {
          auto cover = make_brick_cover(ground, length, layers);
          for (int d = 1; d <= 4; ++d) {
            if (!lebesgue_check(cover, Rational(d)).pass) continue;
            auto mult = cover_to_multiplicity_cover(cover, Rational(d));
            auto back = multiplicity_to_lebesgue_cover(mult.family, Rational(d));
            ++round_trips;
            const std::string tag = "R=" + std::to_string(R) + " L=" + std::to_string(length) + " d=" + std::to_string(d);
            t.require(mult.covers_inner, tag + " shrunk family misses the inner window");
            t.require(mult.multiplicity.value <= mult.source_dimension + 1, tag + " multiplicity above dim + 1");
            t.require(back.lebesgue.pass, tag + " Lebesgue number not recovered");
            t.require(back.inner_dimension <= mult.multiplicity.value - 1, tag + " dimension bound");
            for (std::size_t i = 0; i < cover.members.size(); ++i) {
              t.require(back.family.members[i].is_subset_of(cover.members[i]), tag + " not a refinement");
            }
          }
        }
      }
    }
  }
  t.require(round_trips >= 100, "fewer than 100 round trips");

  std::size_t subsets = 0;
  std::vector<GroundPtr> tiny{std::make_shared<GroundSet>(z_window(2), 2, ActionMode::Translation),
                              std::make_shared<GroundSet>(z_window(1), 4, ActionMode::Translation),
                              std::make_shared<GroundSet>(f_window(2, 1), 2, ActionMode::Translation),
                              std::make_shared<GroundSet>(zn_window(2, 1), 2, ActionMode::Translation)};
  for (const auto& ground : tiny) {
    const auto& w = *ground->window();
    t.require(ground->size() <= 12, "tiny ground too large");
    for (std::uint32_t mask = 0; mask < (1u << ground->size()); ++mask) {
      Subset u(ground->size(), mask);
      ++subsets;
      for (int a = 1; a <= w.radius() + 2; ++a) {
        Subset padded = ground->empty(), shrunk = ground->empty();
        for (Index h = 0; h < static_cast<Index>(w.size()); ++h) {
          for (std::size_t x = 0; x < ground->n_points(); ++x) {
            bool meets = false, inside = true;
            for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
              if (Rational(w.distance(g, h)) >= Rational(a)) continue;
              const bool in = u.test(ground->index(g, static_cast<Point>(x)));
              meets = meets || in;
              inside = inside && in;
            }
            padded[ground->index(h, static_cast<Point>(x))] = meets;
            shrunk[ground->index(h, static_cast<Point>(x))] = inside;
          }
        }
        t.require(pad(*ground, u, Rational(a)) == padded, "pad differs from the oracle");
        t.require(shrink(*ground, u, Rational(a)) == shrunk, "shrink differs from the oracle");
      }
    }
  }
  return t.outcome(std::to_string(round_trips) + " round trips, " + std::to_string(subsets) +
                   " exhaustive subsets bit-identical");
}

// 5. Boundary extension of a cylinder cover on the depth-4 tree model.
Outcome boundary_extension() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  auto model = make_tree_boundary_model(f_window(2, 4), 4);
  auto ground = ground_for(model, ActionMode::Translation);
  auto cyl = make_cylinder_cover(ground, model, 2);
  t.require(family_dimension(cyl) == 0, "cylinder cover dimension");
  auto ext = extend_boundary_cover(cyl, model);
  t.require(ext.restriction_exact, "U(V) meets the boundary outside V");
  t.require(ext.intersection_law && ext.intersections_checked > 0, "intersection law");
  t.require(ext.equivariant && ext.equivariance_checked > 0, "equivariance");
  t.require(ext.dim_extension == 0, "extension dimension");
  auto interior = make_singleton_cover(ground, model.interior_points());
  std::string ledger;
  for (int alpha : {2, 3}) {
    auto full = assemble_full_cover(ext.family, interior, model, Rational(alpha));
    t.require(full.dim <= full.bound, "dim above ledger bound");
    t.require(full.bound == full.dim_boundary_part + full.dim_interior_part + 1, "ledger bound");
    t.require(full.lebesgue.pass, "full cover Lebesgue alpha=" + std::to_string(alpha));
    t.require(full.boundary_lebesgue.pass && full.interior_lebesgue.pass, "part Lebesgue alpha=" + std::to_string(alpha));
    ledger = std::to_string(full.dim) + " <= " + std::to_string(full.dim_boundary_part) + " + " +
             std::to_string(full.dim_interior_part) + " + 1";
  }
  const double secs = seconds_since(t0);
  t.require(secs < 10.0, "runtime");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu cylinders, dim ledger %s, alpha 2,3 (%.2f s, limit 10 s)", cyl.members.size(),
                ledger.c_str(), secs);
  return t.outcome(buf);
}

// 6. ADB of constant homotopies equals the translated ball.
Outcome adb_bridge() {
  Tally t;
  std::size_t checked = 0;
  std::vector<CompactificationModel> models;
  models.push_back(make_cyclic_model(z_window(12), 7));
  models.push_back(make_cyclic_model(zn_window(2, 9), 5));
  models.push_back(make_cyclic_model(f_window(2, 8), 3));
  for (const auto& model : models) {
    for (int alpha = 1; alpha <= 8; ++alpha) {
      auto rep = adb_bridge_check(model.action, alpha);
      checked += rep.checked;
      t.require(rep.checked > 0, "empty inner window alpha=" + std::to_string(alpha));
      t.require(rep.mismatches == 0, "mismatch alpha=" + std::to_string(alpha));
    }
  }
  return t.outcome(std::to_string(checked) + " seeds over Z, Z^2, F2 for alpha 1..8, exact equality");
}

// 7. Modulus probe on perturbed and constant homotopies.
Outcome modulus_probe() {
  Tally t;
  std::size_t instances = 0, probes = 0, perturbed = 0;
  const Rational epsilons[] = {Rational(1, 1000), Rational(1, 20), Rational(1, 4), Rational(1, 2), Rational(1),
                               Rational(3)};
  auto space = make_interval_compactification(z_window(4)).space;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto ha = make_perturbed_interval_homotopy(z_window(8), 4, seed);
    AdbEngine engine(ha);
    ++instances;
    ++perturbed;
    for (Point x : {0, 3, 5, 10}) {
      Subset a = engine.ground().empty();
      a.set(engine.ground().index(0, x));
      for (int n = 0; n <= 2; ++n) {
        for (const auto& eps : epsilons) {
          ++probes;
          t.require(adb_modulus_probe(engine, space, a, n, eps).delta > 0, "delta = 0");
        }
      }
    }
  }
  for (int m : {3, 5}) {
    auto w = z_window(8);
    auto model = make_cyclic_model(w, m);
    AdbEngine engine(genuine_to_homotopy(model.action, standard_generating_set(*w)));
    ++instances;
    Subset a = engine.ground().empty();
    a.set(engine.ground().index(0, 0));
    for (int n = 0; n <= 2; ++n) {
      for (const auto& eps : epsilons) {
        ++probes;
        t.require(adb_modulus_probe(engine, model.space, a, n, eps).delta > 0, "delta = 0 (constant)");
      }
    }
  }
  t.require(perturbed >= 20, "fewer than 20 perturbed instances");
  return t.outcome(std::to_string(instances) + " instances (" + std::to_string(perturbed) + " perturbed), " +
                   std::to_string(probes) + " probes with delta > 0");
}

// 8. Quotients, refinements and equivariant lifts.
Outcome quotient_refine_lift() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::size_t instances = 0, oracle_runs = 0;
  std::mt19937_64 rng(0x5eed0a08);
  for (std::uint64_t seed = 1; instances < 60; ++seed) {
    const int order = 1 + static_cast<int>(seed % 6);
    const int base = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(24 / order));
    auto h = GroupWindow::build(FiniteGroup::cyclic(order), order);
    auto model = make_free_orbit_space(h, base, seed);
    auto action = std::make_shared<PartialAction>(model.action);
    auto ground = std::make_shared<GroundSet>(h, model.space.size(), ActionMode::PointsOnly, action);
    auto cover = make_section_cover(ground, seed);
    ++instances;
    const std::string tag = "instance " + std::to_string(seed);

    auto q = quotient_space(model.space, *action);
    t.require(q.classes.size() * static_cast<std::size_t>(order) == model.space.size(), tag + " quotient size");
    for (std::size_t a = 0; a < q.classes.size(); ++a) {
      for (std::size_t b = 0; b < q.classes.size(); ++b) {
        t.require(q.space.distance(static_cast<Point>(a), static_cast<Point>(b)) ==
                      class_distance_oracle(model.space, q.classes[a], q.classes[b]),
                  tag + " quotient metric");
      }
    }

    std::set<std::vector<Point>> images;
    for (const auto& u : cover.members) {
      std::set<Point> img;
      for (auto p = u.find_first(); p != Subset::npos; p = u.find_next(p)) {
        img.insert(static_cast<Point>(q.class_of[p]));
      }
      images.emplace(img.begin(), img.end());
    }
    std::vector<std::vector<Point>> quotient_cover(images.begin(), images.end());
    auto ref = min_dim_refinement(q.classes.size(), quotient_cover);
    if (q.classes.size() <= 12 && refinement_oracle_cost(q.classes.size(), quotient_cover) <= 2e6) {
      ++oracle_runs;
      t.require(ref.assignment == refinement_oracle(q.classes.size(), quotient_cover), tag + " refinement oracle");
    }
    auto lift = equivariant_lift(ref.members, cover, q);
    t.require(lift.covers && lift.refines, tag + " lift does not refine and cover");
    t.require(lift.parts_disjoint && lift.stabilizers_match, tag + " lift parts");
    t.require(lift.dim_lift <= lift.dim_refinement, tag + " dim(lift) > dim(refinement)");
    for (const auto& m : lift.cover.members) {
      t.require(f_subset_check(*ground, m, FamilyPredicate{FamilyKind::Trivial}).status == FSubsetVerdict::Status::Ok ||
                    f_subset_check(*ground, m, FamilyPredicate{FamilyKind::Finite}).status ==
                        FSubsetVerdict::Status::Ok,
                tag + " lifted member fails f_subset_check");
    }
  }
  // Stand-alone refinement instances up to 12 points.
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 6 + static_cast<std::size_t>(rng() % 7);
    std::vector<std::vector<Point>> cover(4);
    for (std::size_t x = 0; x < n; ++x) {
      bool placed = false;
      for (auto& m : cover) {
        if (rng() % 3 == 0) {
          m.push_back(static_cast<Point>(x));
          placed = true;
        }
      }
      if (!placed) cover[rng() % 4].push_back(static_cast<Point>(x));
    }
    ++oracle_runs;
    auto ref = min_dim_refinement(n, cover);
    t.require(ref.optimal && ref.assignment == refinement_oracle(n, cover), "stand-alone refinement oracle");
  }
  const double secs = seconds_since(t0);
  t.require(secs < 60.0, "runtime");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu lift instances, %zu exhaustive refinement comparisons (%.2f s, limit 60 s)",
                instances, oracle_runs, secs);
  return t.outcome(buf);
}

// 9. Every CLI command twice on identical inputs, byte-compared.
Outcome cli_determinism() {
  Tally t;
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / ("ccw-acceptance-" + std::to_string(::getpid()));
  const std::vector<std::string> script = {
      "generate interval --R 8 -o interval.json",
      "generate tree --rank 2 --R 3 --depth 3 -o tree.json",
      "generate cyclic --group f2 --R 3 --m 5 -o cyclic.json",
      "generate homotopy --R 24 --m 4 --seed 3 -o h.json",
      "generate homotopy --space cyclic.json -o hc.json",
      "generate whole-cover --space interval.json --mode diagonal -o whole.json",
      "generate brick-cover --homotopy h.json --L 12 --layers 2 -o bricks.json",
      "generate cylinder-cover --space tree.json --prefix 2 --mode translation -o cyl.json",
      "generate random-cover --space tree.json --mode translation --seed 4 --blocks 3 -o rc.json",
      "generate orbit-space --order 3 --base 2 --seed 5 -o y.json",
      "generate section-cover --space y.json --seed 5 -o u.json",
      "check lebesgue --cover bricks.json --homotopy h.json --alpha 3 -o c-leb.json",
      "check f-subset --cover whole.json --space interval.json --family vcyc -o c-fsub.json",
      "check dimension --cover bricks.json --homotopy h.json -o c-dim.json",
      "check multiplicity --cover bricks.json --homotopy h.json --d 2 -o c-mult.json",
      "check disjoint --cover cyl.json --space tree.json --r 1 -o c-disj.json",
      "check long --cover bricks.json --homotopy h.json --n 2 -o c-long.json",
      "check homotopy --homotopy h.json -o c-hom.json",
      "check zero-dim --cover rc.json --space tree.json --alpha 2 -o c-zd.json",
      "check bridge --space cyclic.json --alpha 2 -o c-bridge.json",
      "convert cover-to-map --cover bricks.json --homotopy h.json --k 2 -o map.json",
      "convert map-to-families --map map.json --homotopy h.json --n 1 -o fam.json",
      "convert phi-psi --map map.json --homotopy h.json -o psi.json",
      "convert cover-to-mult --cover bricks.json --homotopy h.json --d 2 -o mult.json",
      "convert mult-to-cover --cover mult.json --homotopy h.json --alpha 2 -o back.json",
      "convert boundary-extend --cover cyl.json --space tree.json --alpha 2 -o ext.json",
      "convert refine-equivariant --cover u.json --space y.json -o w.json",
      "convert partition-lu --cover bricks.json --homotopy h.json --k 2 -o plu.json",
      "report --in c-leb.json -o report.txt",
  };
  std::vector<int> codes[2];
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = root / ("run" + std::to_string(run));
    fs::create_directories(dir);
    for (const auto& cmd : script) {
      const std::string line = "cd '" + dir.string() + "' && '" CCW_CLI_PATH "' " + cmd + " > /dev/null 2>&1";
      int status = std::system(line.c_str());
      codes[run].push_back(WIFEXITED(status) ? WEXITSTATUS(status) : -1);
    }
  }
  t.require(codes[0] == codes[1], "exit codes differ between runs");
  for (std::size_t i = 0; i < script.size(); ++i) {
    t.require(codes[0][i] == 0 || codes[0][i] == 2, "'" + script[i] + "' exited " + std::to_string(codes[0][i]));
  }
  std::size_t files = 0;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  for (const auto& entry : fs::directory_iterator(root / "run0")) {
    const fs::path other = root / "run1" / entry.path().filename();
    ++files;
    t.require(fs::exists(other) && slurp(entry.path()) == slurp(other),
              entry.path().filename().string() + " differs");
  }
  t.require(files >= script.size(), "missing outputs");
  fs::remove_all(root);
  return t.outcome(std::to_string(script.size()) + " commands, " + std::to_string(files) + " files byte-identical");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cyclic-to-zero", cyclic_to_zero},
      {"zero-dim-structure", zero_dim_structure},
      {"conversion-chain", conversion_chain},
      {"multiplicity-equivalence", multiplicity_equivalence},
      {"boundary-extension", boundary_extension},
      {"adb-bridge", adb_bridge},
      {"modulus-probe", modulus_probe},
      {"quotient-refine-lift", quotient_refine_lift},
      {"cli-determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
