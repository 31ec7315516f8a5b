#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rifs/map_algebra.hpp"

namespace rifs {

struct Rect {
  double xmin = 0, ymin = 0, xmax = 0, ymax = 0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  bool contains(Point2 p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }

  /// Square [-half_width, half_width]^2.
  static Rect centered_square(double half_width) { return {-half_width, -half_width, half_width, half_width}; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Finite multiset of points plus their bounding box.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(std::vector<Point2> points);

  std::span<const Point2> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  /// Bounding box; degenerate for a single point, all zeros when empty.
  const Rect& bounds() const { return bounds_; }

 private:
  std::vector<Point2> points_;
  Rect bounds_;
};

struct CellIndex {
  std::int32_t ix = 0;
  std::int32_t iy = 0;
};

/// Occupancy over a square window split into resolution x resolution square
/// cells. Cell (0, 0) is the lower-left corner of the window.
class GridSet {
 public:
  /// Throws ValidationError unless the window is a non-degenerate square and
  /// resolution >= 1.
  GridSet(Rect window, int resolution);

  const Rect& window() const { return window_; }
  int resolution() const { return resolution_; }
  double cell_size() const { return cell_; }
  double cell_diagonal() const;

  /// Cell containing p, or nullopt outside the window. Points on the upper
  /// window edge belong to the last cell.
  std::optional<CellIndex> cell_of(Point2 p) const;
  std::optional<std::size_t> index_of(Point2 p) const;
  Point2 center(CellIndex c) const;
  Point2 center(std::size_t index) const;
  std::size_t index(CellIndex c) const {
    return static_cast<std::size_t>(c.iy) * static_cast<std::size_t>(resolution_) + static_cast<std::size_t>(c.ix);
  }
  CellIndex cell(std::size_t index) const {
    return {static_cast<std::int32_t>(index % static_cast<std::size_t>(resolution_)),
            static_cast<std::int32_t>(index / static_cast<std::size_t>(resolution_))};
  }

  bool occupied(std::size_t index) const { return cells_[index] != 0; }
  bool occupied(CellIndex c) const { return occupied(index(c)); }
  /// Returns true if the cell was newly set.
  bool mark(std::size_t index);
  /// Marks the cell containing p; false if p is outside or already set.
  bool mark(Point2 p);

  std::size_t cell_count() const { return cells_.size(); }
  std::size_t occupied_count() const;
  bool empty() const { return occupied_count() == 0; }
  /// Indices of occupied cells in increasing order.
  std::vector<std::size_t> occupied_indices() const;
  /// Centers of occupied cells, in index order.
  PointCloud to_cloud() const;

  /// True if both grids share window and resolution.
  bool same_geometry(const GridSet& other) const;
  /// Every cell occupied here is occupied in `other` (same geometry required).
  bool subset_of(const GridSet& other) const;

  std::span<const std::uint8_t> raw() const { return cells_; }

  friend bool operator==(const GridSet&, const GridSet&) = default;

 private:
  Rect window_;
  int resolution_;
  double cell_;
  std::vector<std::uint8_t> cells_;
};

/// Marks the cell of every point that falls inside the window.
GridSet rasterize(const PointCloud& cloud, Rect window, int resolution);

}  // namespace rifs
