// Command-line front end: scenario in, signatures / trajectories / SVG out.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>

#include <CLI11.hpp>

#include "homolink/homolink.hpp"

namespace fs = std::filesystem;
using namespace homolink;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSingular = 3;

struct CommonArgs {
  std::string scenario_path;
  std::string out_dir = "out";
  int threads = -1;  // -1: not set on the command line
  int quad_order = 0;
  std::string project = "xy";
  bool svg = false;
};

int resolve_threads(const CommonArgs& args, const Scenario& scenario) {
  if (args.threads >= 0) return args.threads;
  if (const char* env = std::getenv("HOMOLINK_THREADS")) {
    try {
      return std::max(0, std::stoi(env));
    } catch (...) {
    }
  }
  return scenario.threads;
}

Scenario load(const CommonArgs& args, std::string& base_dir) {
  base_dir = fs::path(args.scenario_path).parent_path().string();
  if (base_dir.empty()) base_dir = ".";
  Scenario s = load_scenario(args.scenario_path);
  if (args.quad_order > 0) s.quad_order = args.quad_order;
  s.threads = resolve_threads(args, s);
  return s;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::array<int, 2> projection_axes(const std::string& name) {
  if (name.size() != 2) throw std::runtime_error("bad projection: " + name);
  auto axis = [](char c) {
    switch (c) {
      case 'x': return 1;
      case 'y': return 2;
      case 'z': return 3;
      case 't': return 4;
      default: throw std::runtime_error("bad projection axis");
    }
  };
  return {axis(name[0]), axis(name[1])};
}

int report_validation(const ValidationReport& report) {
  for (const auto& v : report.violations)
    std::cerr << "violation [" << v.code << "] " << v.message << "\n";
  return report.ok() ? 0 : kExitValidation;
}

int check_skeletons(const Scenario& scenario, const SkeletonSet& set) {
  const auto report =
      validate_skeleton_set(set, scenario.D, scenario.N, scenario.tol.eps_sing);
  return report_validation(report);
}

int cmd_invariant(const CommonArgs& args) {
  std::string base_dir;
  const Scenario scenario = load(args, base_dir);
  const SkeletonSet set = build_skeleton_set(scenario, base_dir);
  if (const int rc = check_skeletons(scenario, set)) return rc;
  if (scenario.candidates.empty()) {
    std::cerr << "scenario has no candidates\n";
    return kExitValidation;
  }

  EngineStats stats;
  const EngineConfig cfg = scenario.engine_config(&stats);
  ResultBundle bundle;
  bundle.skeleton_labels = set.labels;

  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& g : scenario.candidates) {
    const Chain cand = build_geometry(g, scenario.D, base_dir);
    if (cand.dim() != scenario.N - 1) {
      std::cerr << "candidate '" << g.label << "' has dimension " << cand.dim()
                << ", expected N - 1\n";
      return kExitValidation;
    }
    const Signature sig = phi_vector(cand, set, cfg);
    std::cout << g.label << ":";
    for (double v : sig.values) std::cout << " " << v;
    std::cout << "\n";
    bundle.signatures.push_back(CandidateResult{g.label, sig});
  }
  const auto t1 = std::chrono::steady_clock::now();
  bundle.quadrature_leaf_pairs = stats.leaf_pairs;
  bundle.quadrature_subdivisions = stats.subdivisions;

  write_file(fs::path(args.out_dir) / "results.json",
             serialize_results(bundle));
  std::cerr << "wall time: " << std::chrono::duration<double>(t1 - t0).count()
            << " s\n";
  return 0;
}

struct PlanContext {
  Scenario scenario;
  SkeletonSet set;
  std::unique_ptr<GridGraph> grid;
  EdgeSignatureCache cache;
  int start = 0, goal = 0;
  EngineStats stats;
};

int prepare_plan(const CommonArgs& args, PlanContext& ctx) {
  std::string base_dir;
  ctx.scenario = load(args, base_dir);
  if (!ctx.scenario.grid || !ctx.scenario.has_endpoints) {
    std::cerr << "plan scenarios need 'grid', 'start' and 'goal'\n";
    return kExitValidation;
  }
  ctx.set = build_skeleton_set(ctx.scenario, base_dir);
  if (const int rc = check_skeletons(ctx.scenario, ctx.set)) return rc;
  const auto& gs = *ctx.scenario.grid;
  ctx.grid = std::make_unique<GridGraph>(
      build_grid_graph(gs.min, gs.max, gs.res, gs.blocked));
  ctx.start = ctx.grid->vertex_at_point(ctx.scenario.start);
  ctx.goal = ctx.grid->vertex_at_point(ctx.scenario.goal);
  ctx.cache = edge_signatures(*ctx.grid, ctx.set,
                              ctx.scenario.engine_config(&ctx.stats));
  return 0;
}

void fill_paths(const GridGraph& grid, ResultBundle& bundle) {
  for (const auto& cls : bundle.classes) {
    std::vector<Vec> pts;
    pts.reserve(cls.path.size());
    for (int v : cls.path) pts.push_back(grid.position(v));
    bundle.class_positions.push_back(std::move(pts));
  }
}

int emit_plan_outputs(const CommonArgs& args, const Scenario& scenario,
                      const SearchOutcome& outcome, ResultBundle& bundle,
                      const GridGraph& grid, const EngineStats& stats) {
  bundle.classes = outcome.classes;
  bundle.expansions = outcome.expansions;
  bundle.budget_exhausted = outcome.budget_exhausted;
  bundle.quadrature_leaf_pairs = stats.leaf_pairs;
  bundle.quadrature_subdivisions = stats.subdivisions;
  fill_paths(grid, bundle);

  for (const auto& cls : outcome.classes) {
    std::cout << "class " << cls.rank << ": cost=" << cls.cost << " c=(";
    for (std::size_t i = 0; i < cls.signature.values.size(); ++i)
      std::cout << (i ? ", " : "") << cls.signature.values[i];
    std::cout << ")\n";
  }

  write_file(fs::path(args.out_dir) / "results.json",
             serialize_results(bundle));
  write_file(fs::path(args.out_dir) / "paths.csv", paths_to_csv(bundle));
  if (args.svg) {
    const auto axes =
        scenario.D == 2 ? std::array<int, 2>{1, 2} : projection_axes(args.project);
    write_file(fs::path(args.out_dir) / "plan.svg",
               emit_svg(scenario, bundle, axes));
  }
  return 0;
}

int cmd_plan(const CommonArgs& args, int classes_override,
             const std::string& target_csv) {
  PlanContext ctx;
  if (const int rc = prepare_plan(args, ctx)) return rc;

  SearchMode mode;
  if (!target_csv.empty()) {
    Signature target;
    std::istringstream ss(target_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) target.values.push_back(std::stod(tok));
    if (target.size() != ctx.set.size()) {
      std::cerr << "--target-signature needs " << ctx.set.size()
                << " components\n";
      return kExitValidation;
    }
    mode = SearchMode::target_class(std::move(target));
  } else if (ctx.scenario.mode.type == "target" && classes_override <= 0) {
    mode = SearchMode::target_class(Signature(ctx.scenario.mode.target));
  } else {
    mode = SearchMode::enumerate(classes_override > 0 ? classes_override
                                                      : ctx.scenario.mode.k);
  }

  SearchOptions opts;
  opts.eps_key = ctx.scenario.tol.eps_key;
  const auto t0 = std::chrono::steady_clock::now();
  const SearchOutcome outcome =
      augmented_search(*ctx.grid, ctx.cache, ctx.start, ctx.goal, mode, opts);
  const auto t1 = std::chrono::steady_clock::now();
  std::cerr << "expansions: " << outcome.expansions << ", wall time: "
            << std::chrono::duration<double>(t1 - t0).count() << " s\n";

  ResultBundle bundle;
  bundle.skeleton_labels = ctx.set.labels;
  const int rc = emit_plan_outputs(args, ctx.scenario, outcome, bundle,
                                   *ctx.grid, ctx.stats);
  if (rc) return rc;
  if (mode.target && !outcome.target_found) {
    std::cerr << "target class not reached within the node budget\n";
    return kExitValidation;
  }
  if (outcome.classes.empty()) {
    std::cerr << "no path found\n";
    return kExitValidation;
  }
  return 0;
}

int cmd_quotient_plan(const CommonArgs& args, int classes_override,
                      bool connected) {
  PlanContext ctx;
  if (const int rc = prepare_plan(args, ctx)) return rc;
  if (!ctx.scenario.subspace) {
    std::cerr << "quotient-plan scenarios need 'subspace'\n";
    return kExitValidation;
  }
  const auto& sub = *ctx.scenario.subspace;
  SubspaceSpec spec;
  spec.boxes = sub.boxes;
  spec.eps_w_scale = sub.eps_w_scale;
  const std::vector<char> mask = subspace_mask(*ctx.grid, spec);

  QLattice q;
  if (!sub.generators.empty()) {
    std::vector<Signature> sigs;
    EngineConfig cfg = ctx.scenario.engine_config();
    for (const auto& loop : sub.generators) {
      const Chain chain = sample_polyline_loop(loop, true);
      sigs.push_back(phi_vector(chain, ctx.set, cfg));
    }
    q = q_lattice_from_signatures(sigs, ctx.set.size(),
                                  ctx.scenario.tol.eps_int,
                                  ctx.scenario.tol.eps_q);
  } else {
    q = q_lattice_from_subgraph(*ctx.grid, ctx.cache, mask,
                                ctx.scenario.tol.eps_int,
                                ctx.scenario.tol.eps_q);
  }
  std::cerr << "Q lattice rank: " << q.rank() << "\n";

  const int k = classes_override > 0 ? classes_override : ctx.scenario.mode.k;
  SearchOptions opts;
  opts.eps_key = ctx.scenario.tol.eps_key;
  const auto t0 = std::chrono::steady_clock::now();
  const SearchOutcome outcome =
      connected ? connected_quotient_search(*ctx.grid, ctx.cache, q, mask,
                                            ctx.start, ctx.goal, k, opts,
                                            spec.eps_w_scale)
                : quotient_augmented_search(*ctx.grid, ctx.cache, q, mask,
                                            ctx.start, ctx.goal, k, opts,
                                            spec.eps_w_scale);
  const auto t1 = std::chrono::steady_clock::now();
  std::cerr << "expansions: " << outcome.expansions << ", wall time: "
            << std::chrono::duration<double>(t1 - t0).count() << " s\n";

  ResultBundle bundle;
  bundle.skeleton_labels = ctx.set.labels;
  const int rc = emit_plan_outputs(args, ctx.scenario, outcome, bundle,
                                   *ctx.grid, ctx.stats);
  if (rc) return rc;
  if (outcome.classes.empty()) {
    std::cerr << "no path found\n";
    return kExitValidation;
  }
  return 0;
}

int cmd_validate(const CommonArgs& args) {
  std::string base_dir;
  const Scenario scenario = load(args, base_dir);
  const SkeletonSet set = build_skeleton_set(scenario, base_dir);
  const auto report =
      validate_skeleton_set(set, scenario.D, scenario.N, scenario.tol.eps_sing);
  int rc = report_validation(report);

  for (const auto& g : scenario.candidates) {
    const Chain cand = build_geometry(g, scenario.D, base_dir);
    if (cand.dim() >= 1 && !boundary(cand).empty()) {
      std::cerr << "violation [not-a-cycle] candidate '" << g.label << "'\n";
      rc = kExitValidation;
    }
  }
  if (rc) return rc;

  const bool residue = scenario.D == 2 && scenario.N == 2;
  const bool biot = scenario.D == 3 && scenario.N == 2;
  const bool gauss = scenario.D == 3 && scenario.N == 3;
  if (!(residue || biot || gauss)) {
    std::cout << "closed-form cross-check: not applicable for D=" << scenario.D
              << ", N=" << scenario.N << "\n";
    return 0;
  }

  std::mt19937 rng(scenario.seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double worst = 0.0;
  for (int s = 0; s < set.size(); ++s) {
    const Chain& skel = set.skeletons[s];
    FormField psi(skel, scenario.D, scenario.N, scenario.quad_config(),
                  set.labels[s]);
    int checked = 0;
    while (checked < 50) {
      Vec x(scenario.D);
      for (int d = 0; d < scenario.D; ++d) x[d] = u(rng);
      if (chain_distance(skel, make_point_chain(x), 1.0) < 0.3) continue;
      ++checked;
      const auto coeffs = psi.psi_coefficients(x);
      std::vector<double> expect;
      if (residue) {
        const Vec rf = residue_form(x, skel.terms[0].simplex.vertices[0]);
        expect = {rf[0], rf[1]};
      } else if (biot) {
        const Vec B = biot_savart_field(x, skel, scenario.quad_config());
        expect = {B[0], B[1], B[2]};
      } else {
        const Vec E = gauss_flux_form(x, skel.terms[0].simplex.vertices[0]);
        expect = {E[2], -E[1], E[0]};
      }
      for (std::size_t i = 0; i < expect.size(); ++i) {
        const double scale = std::max(1e-12, std::abs(expect[i]));
        worst = std::max(worst, std::abs(coeffs[i] - expect[i]) / scale);
      }
    }
  }
  std::cout << "closed-form cross-check: max relative error " << worst << "\n";
  if (worst > 1e-8) {
    std::cerr << "violation [closed-form] relative error " << worst
              << " exceeds 1e-8\n";
    return kExitValidation;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homology-class invariants and class-aware grid planning"};
  app.require_subcommand(1);

  CommonArgs args;
  int classes = 0;
  std::string target_csv;
  bool connected = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", args.scenario_path, "scenario JSON file")
        ->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--threads", args.threads,
                    "worker threads (0 = all cores)");
    cmd->add_option("--quad-order", args.quad_order,
                    "override quadrature order");
  };

  CLI::App* invariant = app.add_subcommand(
      "invariant", "signatures of the scenario's candidate cycles");
  add_common(invariant);

  CLI::App* plan =
      app.add_subcommand("plan", "least-cost trajectories per homology class");
  add_common(plan);
  plan->add_option("--classes", classes, "number of classes to enumerate");
  plan->add_option("--target-signature", target_csv,
                   "comma-separated signature to search for");
  plan->add_flag("--svg", args.svg, "write plan.svg");
  plan->add_option("--project", args.project,
                   "projection axes for D > 2 (e.g. xy, xz)");

  CLI::App* quotient = app.add_subcommand(
      "quotient-plan", "classes of the scene with the subspace collapsed");
  add_common(quotient);
  quotient->add_option("--classes", classes, "number of classes to enumerate");
  quotient->add_flag("--connected", connected,
                     "keep the outside-subspace portion connected");
  quotient->add_flag("--svg", args.svg, "write plan.svg");
  quotient->add_option("--project", args.project, "projection axes for D > 2");

  CLI::App* validate = app.add_subcommand(
      "validate", "skeleton checks and closed-form cross-checks");
  add_common(validate);

  CLI11_PARSE(app, argc, argv);

  try {
    if (invariant->parsed()) return cmd_invariant(args);
    if (plan->parsed()) return cmd_plan(args, classes, target_csv);
    if (quotient->parsed()) return cmd_quotient_plan(args, classes, connected);
    if (validate->parsed()) return cmd_validate(args);
  } catch (const SingularProximityError& e) {
    std::cerr << "singular proximity: " << e.what() << "\n";
    return kExitSingular;
  } catch (const ScenarioParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const ScenarioFieldError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
