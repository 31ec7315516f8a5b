#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rifs/geometry.hpp"
#include "rifs/group_closure.hpp"
#include "rifs/map_algebra.hpp"

namespace rifs {

/// max_j |f_j(0)| / (1 - r), r the largest contraction ratio. Every closed
/// origin-centred ball of larger radius is mapped into itself by the system.
double bounding_radius(const RSystem& system);
double bounding_radius(const FlatIFS& ifs);

/// Samples `samples` points uniformly in the closed ball of radius lambda
/// and checks that every map sends each of them back into the ball (within
/// 1e-9). Throws PreconditionError if lambda <= bounding_radius(system).
bool ball_invariance_check(const RSystem& system, double lambda, std::size_t samples, std::uint64_t seed);

/// Burn-in used when none is given: the smallest k with r^k * lambda0 below
/// half a cell when a cell size is known, else 64.
std::size_t default_burn_in(const RSystem& system, std::optional<double> cell_size = std::nullopt);

/// Points per independent chaos-game stream. Stream s draws from Rng(seed, s)
/// and streams are concatenated in order, so the output does not depend on
/// how many threads run them.
inline constexpr std::size_t kChaosShardPoints = std::size_t{1} << 16;

/// Random iteration from the fixed point of the first contraction. Maps are
/// drawn by the system weights; burn_in counts contraction applications only
/// (isometries do not shrink the distance to the attractor).
PointCloud chaos_game(const RSystem& system, std::size_t n_points, std::size_t burn_in, std::uint64_t seed,
                      unsigned threads = 0);
PointCloud chaos_game(const FlatIFS& ifs, std::size_t n_points, std::size_t burn_in, std::uint64_t seed,
                      unsigned threads = 0);

struct GridOptions {
  int max_passes = 200;
  /// Which contraction's fixed point seeds the grid.
  std::size_t seed_contraction = 0;
  double group_eps = kDefaultGroupEps;
  std::size_t group_cap = kDefaultGroupCap;
  unsigned threads = 0;
};

struct GridAccumulation {
  GridSet grid;
  /// Number of passes run, including the final one that found nothing new.
  int passes = 0;
  bool converged = false;
  /// Occupied cell count after seeding (entry 0) and after every pass.
  std::vector<std::size_t> occupied_after_pass;
  /// Image points that fell outside the window.
  std::size_t dropped = 0;
  /// Whether the isometries generated a finite group within the cap.
  bool finite_group = true;
};

/// Deterministic approximation of the minimal invariant set on a grid.
///
/// The grid is seeded with the isometry orbit of the seed contraction's fixed
/// point. Each pass maps the centres of the cells added by the previous pass
/// through every contraction and then through every element of the isometry
/// group, marking the cells hit; the occupancy only grows, and accumulation
/// stops once a pass adds nothing. A finite group is applied element by
/// element. An infinite group of plane isometries has closure SO(2) or O(2)
/// (O(2) when a generator reverses orientation), and the minimal invariant
/// set is closed, so it is invariant under the whole closure; such orbits are
/// sampled by rotations spaced at most a quarter cell apart along the image
/// point's circle, from contraction images snapped to an 8x finer subgrid.
///
/// Throws PreconditionError if the window does not contain the ball of
/// radius bounding_radius(system), or resolution < 2.
GridAccumulation grid_accumulate(const RSystem& system, Rect window, int resolution, const GridOptions& options = {});
GridAccumulation grid_accumulate(const FlatIFS& ifs, Rect window, int resolution, const GridOptions& options = {});

/// One application of the Hutchinson operator over every map of the system
/// (isometries and contractions). Grid images are evaluated at cell centres
/// and re-discretised on the same grid; images outside the window are lost.
GridSet hutchinson_step(const RSystem& system, const GridSet& set);
GridSet hutchinson_step(const FlatIFS& ifs, const GridSet& set);
/// Map-major: all points through the first map, then the second, and so on.
PointCloud hutchinson_step(const RSystem& system, const PointCloud& set);
PointCloud hutchinson_step(const FlatIFS& ifs, const PointCloud& set);

struct ResidualReport {
  /// One-sided Hausdorff from F(A) to A.
  double forward = 0;
  /// One-sided Hausdorff from A to F(A).
  double backward = 0;
  double symmetric = 0;
  /// Measurement floor: the grid cell diagonal (0 for point clouds).
  double cell = 0;
};

ResidualReport invariance_residual(const RSystem& system, const GridSet& set);
ResidualReport invariance_residual(const FlatIFS& ifs, const GridSet& set);
ResidualReport invariance_residual(const RSystem& system, const PointCloud& set);
ResidualReport invariance_residual(const FlatIFS& ifs, const PointCloud& set);

/// Window used when a scene does not give one: the square of half-width
/// 1.2 * max(lambda0, 1) centred at the origin.
Rect default_window(double lambda0);

}  // namespace rifs
