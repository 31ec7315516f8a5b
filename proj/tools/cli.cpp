#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <ostream>

#include "rifs/attractor.hpp"
#include "rifs/errors.hpp"
#include "rifs/export.hpp"
#include "rifs/group_closure.hpp"
#include "rifs/hausdorff.hpp"
#include "rifs/radial.hpp"
#include "rifs/scene.hpp"

namespace rifs::cli {

namespace {

using nlohmann::json;

/// Raised when a check ran and failed; maps to exit code 2.
struct VerificationFailed {
  std::string message;
};

json group_json(const GroupClosureResult& group) {
  if (const auto* finite = std::get_if<FiniteGroup>(&group))
    return {{"verdict", "finite"}, {"order", finite->size()}, {"element_orders", finite->orders}};
  return {{"verdict", "cap_exceeded"}, {"cap", std::get<CapExceeded>(group).cap}};
}

json rect_json(const Rect& r) { return json::array({r.xmin, r.ymin, r.xmax, r.ymax}); }

json residual_json(const ResidualReport& r) {
  return {{"forward", r.forward}, {"backward", r.backward}, {"symmetric", r.symmetric}, {"cell", r.cell}};
}

struct Common {
  unsigned threads = 0;
  double eps = kDefaultGroupEps;
  std::size_t cap = kDefaultGroupCap;
};

int cmd_render(const std::string& path, std::optional<int> resolution, const std::string& out_path, int max_passes,
               const Common& common, std::ostream& out, std::ostream& err) {
  const Scene scene = load_scene(path);
  GridOptions options;
  options.max_passes = max_passes;
  options.threads = common.threads;
  options.group_eps = common.eps;
  options.group_cap = common.cap;
  const auto acc = grid_accumulate(scene.system, scene.window, resolution.value_or(scene.resolution), options);
  write_ppm(acc.grid, out_path);
  out << json{{"out", out_path},
              {"resolution", acc.grid.resolution()},
              {"window", rect_json(acc.grid.window())},
              {"passes", acc.passes},
              {"converged", acc.converged},
              {"occupied_cells", acc.grid.occupied_count()}}
             .dump(2)
      << "\n";
  if (!acc.converged) {
    err << "grid accumulation did not converge within " << max_passes << " passes\n";
    return kVerificationFailed;
  }
  return kOk;
}

int cmd_chaos(const std::string& path, std::size_t points, std::uint64_t seed, std::optional<std::size_t> burn_in,
              const std::string& csv_path, const std::string& ppm_path, const Common& common, std::ostream& out) {
  const Scene scene = load_scene(path);
  const double cell = scene.window.width() / scene.resolution;
  const std::size_t burn = burn_in.value_or(default_burn_in(scene.system, cell));
  const PointCloud cloud = chaos_game(scene.system, points, burn, seed, common.threads);
  write_csv(cloud, csv_path);
  if (!ppm_path.empty()) write_ppm(rasterize(cloud, scene.window, scene.resolution), ppm_path);
  out << json{{"out", csv_path}, {"points", points}, {"seed", seed}, {"burn_in", burn}}.dump(2) << "\n";
  return kOk;
}

int cmd_group(const std::string& path, const Common& common, std::ostream& out) {
  const Scene scene = load_scene(path);
  out << group_json(close_group(scene.system.isometries(), common.eps, common.cap)).dump(2) << "\n";
  return kOk;
}

int cmd_flatten(const std::string& path, const std::string& out_path, const Common& common, std::ostream& out) {
  const Scene scene = load_scene(path);
  const auto group = close_group(scene.system.isometries(), common.eps, common.cap);
  const FlatIFS flat = flatten(scene.system, group);
  std::optional<Rect> window;
  std::optional<int> resolution;
  if (scene.window_from_file) window = scene.window;
  if (scene.resolution_from_file) resolution = scene.resolution;
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + out_path + "' for writing");
  file << flat_scene_json(flat, window, resolution);
  if (!file) throw IoError("failed writing '" + out_path + "'");
  out << json{{"out", out_path}, {"maps", flat.maps.size()}, {"group", group_json(group)}}.dump(2) << "\n";
  return kOk;
}

int cmd_verify(const std::string& path, std::optional<int> resolution, std::size_t points, std::uint64_t seed,
               std::size_t ball_samples, const Common& common, std::ostream& out, std::ostream& err) {
  const Scene scene = load_scene(path);
  const int res = resolution.value_or(scene.resolution);
  GridOptions options;
  options.threads = common.threads;
  options.group_eps = common.eps;
  options.group_cap = common.cap;

  const double lambda0 = bounding_radius(scene.system);
  const auto group = close_group(scene.system.isometries(), common.eps, common.cap);
  const auto acc = grid_accumulate(scene.system, scene.window, res, options);
  const double diag = acc.grid.cell_diagonal();
  const double tolerance = 2.0 * diag;

  const ResidualReport residual = invariance_residual(scene.system, acc.grid);
  const double ball_lambda = lambda0 > 0.0 ? 1.005 * lambda0 : 1.0;
  const bool ball_ok = ball_invariance_check(scene.system, ball_lambda, ball_samples, seed);

  const std::size_t burn = default_burn_in(scene.system, acc.grid.cell_size());
  const PointCloud cloud = chaos_game(scene.system, points, burn, seed, common.threads);
  const double cross = hausdorff_distance(cloud, acc.grid.to_cloud(), common.threads);

  json isometry = json::array();
  bool iso_ok = true;
  for (const auto& g : scene.system.isometries()) {
    GridSet image(acc.grid.window(), acc.grid.resolution());
    for (auto idx : acc.grid.occupied_indices()) image.mark(g(acc.grid.center(idx)));
    const double d = one_sided_hausdorff(image, acc.grid);
    iso_ok = iso_ok && d <= diag;
    isometry.push_back(d);
  }

  const bool residual_ok = residual.symmetric <= tolerance;
  const bool cross_ok = cross <= tolerance;
  const bool all_ok = acc.converged && residual_ok && ball_ok && cross_ok && iso_ok;

  json report{
      {"scene", path},
      {"parameters",
       {{"resolution", res}, {"window", rect_json(scene.window)}, {"seed", seed}, {"points", points},
        {"burn_in", burn}, {"ball_samples", ball_samples}, {"group_eps", common.eps}, {"group_cap", common.cap}}},
      {"lambda0", lambda0},
      {"group", group_json(group)},
      {"grid",
       {{"passes", acc.passes}, {"converged", acc.converged}, {"occupied_cells", acc.grid.occupied_count()},
        {"cell_diagonal", diag}, {"dropped", acc.dropped}}},
      {"residual", residual_json(residual)},
      {"residual_tolerance", tolerance},
      {"residual_ok", residual_ok},
      {"ball_invariance", {{"lambda", ball_lambda}, {"samples", ball_samples}, {"ok", ball_ok}}},
      {"cross_validation", {{"chaos_vs_grid_hausdorff", cross}, {"tolerance", tolerance}, {"ok", cross_ok}}},
      {"isometry_invariance", {{"one_sided", isometry}, {"tolerance", diag}, {"ok", iso_ok}}},
      {"ok", all_ok},
  };
  out << report.dump(2) << "\n";
  if (!all_ok) {
    err << "verification failed for " << path << "\n";
    return kVerificationFailed;
  }
  return kOk;
}

int cmd_profile(const std::string& path, std::optional<int> resolution, int depth, const Common& common,
                std::ostream& out, std::ostream& err) {
  const Scene scene = load_scene(path);
  const auto ifs = radial_ifs(scene.system);
  if (!ifs) throw ValidationError(path + ": profile needs every contraction to be radial with offset >= 0");
  GridOptions options;
  options.threads = common.threads;
  options.group_eps = common.eps;
  options.group_cap = common.cap;
  const auto acc = grid_accumulate(scene.system, scene.window, resolution.value_or(scene.resolution), options);
  const double cell = acc.grid.cell_size();
  const Profile1D profile = radial_profile(acc.grid, cell);
  const Profile1D oracle = oracle_attractor_1d(*ifs, depth);
  const double distance = profile_distance(profile, oracle);
  const double tolerance = 2.0 * cell;
  const double outer = oracle.values.back();

  json maps = json::array();
  for (const auto& f : ifs->maps()) maps.push_back({f.scale, f.offset});
  json report{
      {"scene", path},
      {"radial_ifs", maps},
      {"resolution", acc.grid.resolution()},
      {"depth", depth},
      {"grid_converged", acc.converged},
      {"profile_h", cell},
      {"oracle_h", oracle.h},
      {"profile_values", profile.values.size()},
      {"oracle_values", oracle.values.size()},
      {"distance", distance},
      {"tolerance", tolerance},
      {"outer_radius", outer},
      {"outer_coverage", outer > 0.0 ? angular_coverage(acc.grid, outer, 2.0 * cell) : 1.0},
      {"ok", acc.converged && distance <= tolerance},
  };
  out << report.dump(2) << "\n";
  if (!report["ok"].get<bool>()) {
    err << "radial profile differs from the 1D oracle by " << distance << " (tolerance " << tolerance << ")\n";
    return kVerificationFailed;
  }
  return kOk;
}

int cmd_compare(const std::string& path_a, const std::string& path_b, std::size_t points, std::uint64_t seed,
                std::optional<std::size_t> burn_in, std::optional<double> tol, const Common& common,
                std::ostream& out, std::ostream& err) {
  const Scene a = load_scene(path_a);
  const Scene b = load_scene(path_b);
  const std::size_t burn_a = burn_in.value_or(default_burn_in(a.system, a.window.width() / a.resolution));
  const std::size_t burn_b = burn_in.value_or(default_burn_in(b.system, b.window.width() / b.resolution));
  const PointCloud ca = chaos_game(a.system, points, burn_a, seed, common.threads);
  const PointCloud cb = chaos_game(b.system, points, burn_b, seed, common.threads);
  const double h = hausdorff_distance(ca, cb, common.threads);
  json report{{"a", path_a}, {"b", path_b}, {"points", points}, {"seed", seed}, {"hausdorff", h}};
  if (tol) {
    report["tolerance"] = *tol;
    report["ok"] = h <= *tol;
  }
  out << report.dump(2) << "\n";
  if (tol && h > *tol) {
    err << "Hausdorff distance " << h << " exceeds " << *tol << "\n";
    return kVerificationFailed;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal invariant sets of iterated function systems enriched with isometries"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.fallthrough();
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (0: RIFS_THREADS or all cores)");

  std::string scene, scene_b, out_path, ppm_path;
  std::optional<int> resolution;
  int max_passes = 200;
  int depth = 12;
  std::size_t points = 100000;
  std::size_t verify_points = 1000000;
  std::size_t ball_samples = 100000;
  std::uint64_t seed = 0;
  std::optional<std::size_t> burn_in;
  std::optional<double> tol;

  auto add_group_opts = [&](CLI::App* sub) {
    sub->add_option("--eps", common.eps, "Entrywise tolerance for identifying group elements");
    sub->add_option("--cap", common.cap, "Largest group size treated as finite");
  };

  auto* render = app.add_subcommand("render", "Grid-accumulate the attractor and write a PPM image");
  render->add_option("scene", scene, "Scene JSON file")->required();
  render->add_option("--resolution", resolution, "Cells per axis (default: the scene's)");
  render->add_option("--out", out_path, "Output file")->required();
  render->add_option("--max-passes", max_passes, "Give up after this many passes");
  add_group_opts(render);

  auto* chaos = app.add_subcommand("chaos", "Run the chaos game and write the points as CSV");
  chaos->add_option("scene", scene, "Scene JSON file")->required();
  chaos->add_option("--points", points, "Points to record");
  chaos->add_option("--seed", seed, "Random seed");
  chaos->add_option("--burn-in", burn_in, "Contraction steps to discard (default: from the scene's cell size)");
  chaos->add_option("--out", out_path, "Output file")->required();
  chaos->add_option("--ppm", ppm_path, "Also rasterize the points to this PPM at the scene resolution");

  auto* group = app.add_subcommand("group", "Close the isometry group and report its order");
  group->add_option("scene", scene, "Scene JSON file")->required();
  add_group_opts(group);

  auto* flat = app.add_subcommand("flatten", "Write the equivalent ordinary IFS as a scene");
  flat->add_option("scene", scene, "Scene JSON file")->required();
  flat->add_option("--out", out_path, "Output file")->required();
  add_group_opts(flat);

  auto* verify = app.add_subcommand("verify", "Check invariance residuals and cross-validate the constructions");
  verify->add_option("scene", scene, "Scene JSON file")->required();
  verify->add_option("--resolution", resolution, "Cells per axis (default: the scene's)");
  verify->add_option("--points", verify_points, "Chaos-game points");
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--ball-samples", ball_samples, "Samples for the bounding-ball check");
  add_group_opts(verify);

  auto* profile = app.add_subcommand("profile", "Compare the radial profile with the exhaustive 1D attractor");
  profile->add_option("scene", scene, "Scene JSON file")->required();
  profile->add_option("--resolution", resolution, "Cells per axis (default: the scene's)");
  profile->add_option("--depth", depth, "Word length of the 1D oracle");
  add_group_opts(profile);

  auto* compare = app.add_subcommand("compare", "Hausdorff distance between two chaos-game approximations");
  compare->add_option("scene_a", scene, "First scene")->required();
  compare->add_option("scene_b", scene_b, "Second scene")->required();
  compare->add_option("--points", verify_points, "Chaos-game points");
  compare->add_option("--seed", seed, "Random seed");
  compare->add_option("--burn-in", burn_in, "Contraction steps to discard (default: from the scene's cell size)");
  compare->add_option("--tol", tol, "Exit 2 when the distance exceeds this");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kValidationError;
  }

  try {
    if (render->parsed()) return cmd_render(scene, resolution, out_path, max_passes, common, out, err);
    if (chaos->parsed()) return cmd_chaos(scene, points, seed, burn_in, out_path, ppm_path, common, out);
    if (group->parsed()) return cmd_group(scene, common, out);
    if (flat->parsed()) return cmd_flatten(scene, out_path, common, out);
    if (verify->parsed()) return cmd_verify(scene, resolution, verify_points, seed, ball_samples, common, out, err);
    if (profile->parsed()) return cmd_profile(scene, resolution, depth, common, out, err);
    if (compare->parsed()) return cmd_compare(scene, scene_b, verify_points, seed, burn_in, tol, common, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }
  return kValidationError;
}

}  // namespace rifs::cli
