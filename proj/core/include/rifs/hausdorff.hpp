#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rifs/geometry.hpp"

namespace rifs {

/// Exact nearest-neighbour queries over a fixed point set, backed by a
/// uniform bucket grid (counting-sorted, so each bucket is a contiguous
/// slice of the point array).
class NearestNeighborIndex {
 public:
  explicit NearestNeighborIndex(std::span<const Point2> points);

  /// Euclidean distance from q to the closest indexed point; +inf if empty.
  double nearest_distance(Point2 q) const;

 private:
  std::int64_t bucket_x(double x) const;
  std::int64_t bucket_y(double y) const;
  double ring_lower_bound(Point2 q, std::int64_t bx, std::int64_t by, std::int64_t ring) const;

  std::vector<Point2> points_;
  std::vector<std::uint32_t> offsets_;
  Rect bounds_;
  double bucket_ = 1.0;
  std::int64_t nx_ = 0, ny_ = 0;
};

/// sup over a in `from` of the distance to `to`.
double one_sided_hausdorff(const PointCloud& from, const PointCloud& to, unsigned threads = 0);
/// Symmetric Hausdorff distance between two finite point sets.
double hausdorff_distance(const PointCloud& a, const PointCloud& b, unsigned threads = 0);

/// Exact squared Euclidean distance transform, in units of cells squared:
/// out[i] is the squared distance from cell i's center to the nearest
/// occupied cell center, or +inf if the grid is empty. Separable lower
/// envelope of parabolas (Felzenszwalb and Huttenlocher).
std::vector<double> squared_distance_transform(const GridSet& grid);

/// One-sided Hausdorff over occupied cell centers. Grids with identical
/// geometry go through the distance transform; otherwise cell centers are
/// compared as point clouds.
double one_sided_hausdorff(const GridSet& from, const GridSet& to);
double hausdorff_distance(const GridSet& a, const GridSet& b);

}  // namespace rifs
