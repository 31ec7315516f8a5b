#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rifs/geometry.hpp"
#include "rifs/map_algebra.hpp"

namespace rifs {

/// r -> scale * r + offset.
struct AffineMap1D {
  double scale = 0;
  double offset = 0;

  double operator()(double r) const { return scale * r + offset; }
};

/// A 1D IFS. Every |scale| must be < 1.
class Ifs1D {
 public:
  explicit Ifs1D(std::vector<AffineMap1D> maps);

  const std::vector<AffineMap1D>& maps() const { return maps_; }
  double max_ratio() const;

 private:
  std::vector<AffineMap1D> maps_;
};

/// Sorted, deduplicated radii at resolution h.
struct Profile1D {
  std::vector<double> values;
  double h = 0;
};

inline constexpr std::size_t kDefaultWordBudget = 10'000'000;

/// Exhaustive enumeration of the attractor of a 1D IFS: every depth-fold
/// composition of the maps is applied to the smallest interval the maps send
/// into itself, and the image midpoints are returned with h = (b - a) r^depth.
/// Shares no code with the 2D engine. Throws PreconditionError if depth < 1
/// or k^depth exceeds word_budget.
Profile1D oracle_attractor_1d(const Ifs1D& ifs, int depth, std::size_t word_budget = kDefaultWordBudget);

/// Smallest interval [a, b] with f([a, b]) inside [a, b] for every map: the
/// convex hull of the attractor.
std::pair<double, double> invariant_interval(const Ifs1D& ifs);

/// Norms of every point (or occupied cell centre), snapped to multiples of h,
/// deduplicated and sorted. Throws PreconditionError if h <= 0.
Profile1D radial_profile(const PointCloud& set, double h);
Profile1D radial_profile(const GridSet& set, double h);

/// Symmetric Hausdorff distance between two profiles as subsets of the line.
double profile_distance(const Profile1D& a, const Profile1D& b);

/// Applies every map to every value and re-quantises at the profile's h.
Profile1D hutchinson_step(const Ifs1D& ifs, const Profile1D& profile);

/// The radial action of the system's contractions: Radial{s, c} acts on the
/// norm as r -> s r + c, and isometries leave the norm alone. Returns nullopt
/// unless every contraction is Radial (possibly behind an isometry).
std::optional<Ifs1D> radial_ifs(const RSystem& system);

inline constexpr int kAngularBins = 360;

/// Fraction of 360 equal-angle bins that contain an occupied cell whose
/// centre has norm within tol of radius.
double angular_coverage(const GridSet& set, double radius, double tol);

}  // namespace rifs
