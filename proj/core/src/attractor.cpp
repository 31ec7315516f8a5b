#include "rifs/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <unordered_set>

#include "rifs/errors.hpp"
#include "rifs/hausdorff.hpp"
#include "rifs/parallel.hpp"
#include "rifs/random.hpp"

namespace rifs {

namespace {

constexpr int kSubgridFactor = 8;

struct MapList {
  std::span<const Isometry2> isometries;
  std::span<const Contraction2> contractions;

  std::size_t size() const { return isometries.size() + contractions.size(); }
  Point2 apply(std::size_t k, Point2 p) const {
    return k < isometries.size() ? isometries[k](p) : contractions[k - isometries.size()](p);
  }
};

MapList maps_of(const RSystem& s) { return {s.isometries(), s.contractions()}; }
MapList maps_of(const FlatIFS& f) { return {{}, f.maps}; }

double bounding_radius(std::span<const Contraction2> contractions) {
  double r = 0.0;
  for (const auto& f : contractions) r = std::max(r, f.lipschitz());
  double lambda0 = 0.0;
  for (const auto& f : contractions) lambda0 = std::max(lambda0, norm(f(Point2{})) / (1.0 - r));
  return lambda0;
}

/// Orbit of a point under the isometry group used by grid accumulation.
class Orbit {
 public:
  explicit Orbit(std::vector<Isometry2> elements) : elements_(std::move(elements)) {}
  Orbit(std::optional<Isometry2> reflection, double arc_spacing)
      : continuous_(true), reflection_(reflection), spacing_(arc_spacing) {}

  bool continuous() const { return continuous_; }

  template <class Sink>
  void for_each(Point2 p, Sink&& sink) const {
    if (!continuous_) {
      for (const auto& g : elements_) sink(g(p));
      return;
    }
    const double rho = norm(p);
    if (rho == 0.0) {
      sink(p);
      return;
    }
    const auto count = static_cast<std::size_t>(
        std::max(8.0, std::ceil(2.0 * std::numbers::pi * rho / spacing_)));
    const Point2 mirrored = reflection_ ? (*reflection_)(p) : p;
    for (std::size_t k = 0; k < count; ++k) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      sink(Point2{c * p.x - s * p.y, s * p.x + c * p.y});
      if (reflection_) sink(Point2{c * mirrored.x - s * mirrored.y, s * mirrored.x + c * mirrored.y});
    }
  }

 private:
  std::vector<Isometry2> elements_;
  bool continuous_ = false;
  std::optional<Isometry2> reflection_;
  double spacing_ = 0.0;
};

GridAccumulation accumulate(std::span<const Contraction2> contractions, const Orbit& orbit, bool finite_group,
                            double lambda0, Rect window, int resolution, const GridOptions& options) {
  if (resolution < 2) throw PreconditionError("grid_accumulate needs resolution >= 2");
  if (!(window.xmin <= -lambda0 && window.xmax >= lambda0 && window.ymin <= -lambda0 && window.ymax >= lambda0))
    throw PreconditionError("grid window must contain the ball of radius lambda0 = " + std::to_string(lambda0));
  if (options.seed_contraction >= contractions.size())
    throw PreconditionError("seed_contraction index out of range");
  if (options.max_passes < 1) throw PreconditionError("max_passes must be >= 1");

  GridAccumulation result{GridSet(window, resolution), 0, false, {}, 0, true};
  result.finite_group = finite_group;
  GridSet& grid = result.grid;
  const unsigned workers = resolve_threads(options.threads);

  const int sub_res = resolution * kSubgridFactor;
  const double sub_cell = grid.cell_size() / kSubgridFactor;
  auto sub_key = [&](Point2 p) -> std::optional<std::uint64_t> {
    if (!window.contains(p)) return std::nullopt;
    const auto sx = std::clamp(static_cast<std::int64_t>(std::floor((p.x - window.xmin) / sub_cell)),
                               std::int64_t{0}, std::int64_t{sub_res - 1});
    const auto sy = std::clamp(static_cast<std::int64_t>(std::floor((p.y - window.ymin) / sub_cell)),
                               std::int64_t{0}, std::int64_t{sub_res - 1});
    return static_cast<std::uint64_t>(sy) * static_cast<std::uint64_t>(sub_res) + static_cast<std::uint64_t>(sx);
  };
  auto sub_center = [&](std::uint64_t key) {
    const auto sx = static_cast<double>(key % static_cast<std::uint64_t>(sub_res));
    const auto sy = static_cast<double>(key / static_cast<std::uint64_t>(sub_res));
    return Point2{window.xmin + (sx + 0.5) * sub_cell, window.ymin + (sy + 0.5) * sub_cell};
  };
  std::unordered_set<std::uint64_t> processed_keys;

  struct Local {
    std::vector<std::size_t> cells;
    std::vector<std::uint64_t> keys;
    std::size_t dropped = 0;
  };
  // Appends the cells of every orbit point that is not yet occupied.
  auto collect_orbit = [&](Point2 p, Local& local) {
    orbit.for_each(p, [&](Point2 q) {
      const auto idx = grid.index_of(q);
      if (!idx) {
        ++local.dropped;
      } else if (!grid.occupied(*idx)) {
        local.cells.push_back(*idx);
      }
    });
  };
  auto merge = [&](std::vector<Local>& locals) {
    std::vector<std::size_t> added;
    for (auto& local : locals) {
      result.dropped += local.dropped;
      for (auto idx : local.cells)
        if (grid.mark(idx)) added.push_back(idx);
    }
    std::sort(added.begin(), added.end());
    return added;
  };

  std::vector<Local> seed_local(1);
  collect_orbit(contractions[options.seed_contraction].fixed_point(), seed_local[0]);
  std::vector<std::size_t> frontier = merge(seed_local);
  result.occupied_after_pass.push_back(grid.occupied_count());

  for (int pass = 1; pass <= options.max_passes; ++pass) {
    std::vector<Local> locals(workers);
    if (!orbit.continuous()) {
      parallel_for(frontier.size(), workers, [&](std::size_t begin, std::size_t end, unsigned w) {
        for (std::size_t i = begin; i < end; ++i) {
          const Point2 c = grid.center(frontier[i]);
          for (const auto& f : contractions) collect_orbit(f(c), locals[w]);
        }
      });
    } else {
      parallel_for(frontier.size(), workers, [&](std::size_t begin, std::size_t end, unsigned w) {
        for (std::size_t i = begin; i < end; ++i) {
          const Point2 c = grid.center(frontier[i]);
          for (const auto& f : contractions) {
            if (auto key = sub_key(f(c)))
              locals[w].keys.push_back(*key);
            else
              ++locals[w].dropped;
          }
        }
      });
      std::vector<std::uint64_t> keys;
      for (auto& local : locals) {
        keys.insert(keys.end(), local.keys.begin(), local.keys.end());
        local.keys.clear();
      }
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
      std::erase_if(keys, [&](std::uint64_t k) { return !processed_keys.insert(k).second; });
      parallel_for(keys.size(), workers, [&](std::size_t begin, std::size_t end, unsigned w) {
        for (std::size_t i = begin; i < end; ++i) collect_orbit(sub_center(keys[i]), locals[w]);
      });
    }
    frontier = merge(locals);
    result.occupied_after_pass.push_back(grid.occupied_count());
    result.passes = pass;
    if (frontier.empty()) {
      result.converged = true;
      break;
    }
  }
  return result;
}

template <class Maps>
GridSet grid_step(const Maps& maps, const GridSet& set) {
  GridSet out(set.window(), set.resolution());
  const auto cells = set.occupied_indices();
  for (std::size_t k = 0; k < maps.size(); ++k)
    for (auto idx : cells) out.mark(maps.apply(k, set.center(idx)));
  return out;
}

PointCloud cloud_step(const MapList& maps, const PointCloud& set) {
  std::vector<Point2> out;
  out.reserve(set.size() * maps.size());
  for (std::size_t k = 0; k < maps.size(); ++k)
    for (const auto& p : set.points()) out.push_back(maps.apply(k, p));
  return PointCloud(std::move(out));
}

template <class Set>
ResidualReport residual(const Set& set, const Set& image, double cell) {
  if (set.empty()) throw PreconditionError("invariance_residual needs a nonempty set");
  ResidualReport r;
  r.forward = one_sided_hausdorff(image, set);
  r.backward = one_sided_hausdorff(set, image);
  r.symmetric = std::max(r.forward, r.backward);
  r.cell = cell;
  return r;
}

}  // namespace

double bounding_radius(const RSystem& system) { return bounding_radius(system.contractions()); }
double bounding_radius(const FlatIFS& ifs) { return bounding_radius(std::span<const Contraction2>(ifs.maps)); }

bool ball_invariance_check(const RSystem& system, double lambda, std::size_t samples, std::uint64_t seed) {
  const double lambda0 = bounding_radius(system);
  if (!(lambda > lambda0))
    throw PreconditionError("ball_invariance_check needs lambda > lambda0 = " + std::to_string(lambda0));
  const MapList maps = maps_of(system);
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const double rho = lambda * std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    const Point2 p{rho * std::cos(theta), rho * std::sin(theta)};
    for (std::size_t k = 0; k < maps.size(); ++k)
      if (norm(maps.apply(k, p)) > lambda + 1e-9) return false;
  }
  return true;
}

std::size_t default_burn_in(const RSystem& system, std::optional<double> cell_size) {
  if (!cell_size) return 64;
  const double lambda0 = bounding_radius(system);
  const double r = system.max_ratio();
  const double target = *cell_size / 2.0;
  std::size_t k = 0;
  double bound = lambda0;
  while (bound >= target && k < 10000) {
    bound *= r;
    ++k;
  }
  return k;
}

PointCloud chaos_game(const RSystem& system, std::size_t n_points, std::size_t burn_in, std::uint64_t seed,
                      unsigned threads) {
  if (n_points == 0) throw PreconditionError("chaos_game needs n_points >= 1");
  const MapList maps = maps_of(system);
  const std::size_t m = maps.isometries.size();
  std::vector<double> cumulative;
  double acc = 0.0;
  for (double w : system.weights()) cumulative.push_back(acc += w);
  auto pick = [&](Rng& rng) {
    const double u = rng.uniform() * acc;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
  };

  const Point2 start = maps.contractions.front().fixed_point();
  const std::size_t shards = (n_points + kChaosShardPoints - 1) / kChaosShardPoints;
  std::vector<Point2> points(n_points);
  parallel_for(shards, threads, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t s = begin; s < end; ++s) {
      Rng rng(seed, s);
      Point2 x = start;
      for (std::size_t applied = 0; applied < burn_in;) {
        const std::size_t k = pick(rng);
        x = maps.apply(k, x);
        if (k >= m) ++applied;
      }
      const std::size_t first = s * kChaosShardPoints;
      const std::size_t last = std::min(n_points, first + kChaosShardPoints);
      for (std::size_t i = first; i < last; ++i) {
        x = maps.apply(pick(rng), x);
        points[i] = x;
      }
    }
  });
  return PointCloud(std::move(points));
}

PointCloud chaos_game(const FlatIFS& ifs, std::size_t n_points, std::size_t burn_in, std::uint64_t seed,
                      unsigned threads) {
  return chaos_game(as_rsystem(ifs), n_points, burn_in, seed, threads);
}

GridAccumulation grid_accumulate(const RSystem& system, Rect window, int resolution, const GridOptions& options) {
  const GroupClosureResult group = close_group(system.isometries(), options.group_eps, options.group_cap);
  const double cell = window.width() / std::max(resolution, 1);
  if (const auto* finite = std::get_if<FiniteGroup>(&group))
    return accumulate(system.contractions(), Orbit(finite->elements), true, bounding_radius(system), window,
                      resolution, options);
  std::optional<Isometry2> reflection;
  for (const auto& g : system.isometries())
    if (!g.is_rotation()) {
      reflection = g;
      break;
    }
  return accumulate(system.contractions(), Orbit(reflection, 0.25 * cell), false, bounding_radius(system), window,
                    resolution, options);
}

GridAccumulation grid_accumulate(const FlatIFS& ifs, Rect window, int resolution, const GridOptions& options) {
  if (ifs.maps.empty()) throw PreconditionError("grid_accumulate needs at least one map");
  return accumulate(ifs.maps, Orbit({Isometry2::identity()}), true, bounding_radius(ifs), window, resolution,
                    options);
}

GridSet hutchinson_step(const RSystem& system, const GridSet& set) { return grid_step(maps_of(system), set); }
GridSet hutchinson_step(const FlatIFS& ifs, const GridSet& set) { return grid_step(maps_of(ifs), set); }
PointCloud hutchinson_step(const RSystem& system, const PointCloud& set) { return cloud_step(maps_of(system), set); }
PointCloud hutchinson_step(const FlatIFS& ifs, const PointCloud& set) { return cloud_step(maps_of(ifs), set); }

ResidualReport invariance_residual(const RSystem& system, const GridSet& set) {
  return residual(set, hutchinson_step(system, set), set.cell_diagonal());
}
ResidualReport invariance_residual(const FlatIFS& ifs, const GridSet& set) {
  return residual(set, hutchinson_step(ifs, set), set.cell_diagonal());
}
ResidualReport invariance_residual(const RSystem& system, const PointCloud& set) {
  return residual(set, hutchinson_step(system, set), 0.0);
}
ResidualReport invariance_residual(const FlatIFS& ifs, const PointCloud& set) {
  return residual(set, hutchinson_step(ifs, set), 0.0);
}

Rect default_window(double lambda0) { return Rect::centered_square(1.2 * std::max(lambda0, 1.0)); }

}  // namespace rifs
