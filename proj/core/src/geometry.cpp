#include "rifs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rifs/errors.hpp"

namespace rifs {

PointCloud::PointCloud(std::vector<Point2> points) : points_(std::move(points)) {
  if (points_.empty()) return;
  bounds_ = {points_.front().x, points_.front().y, points_.front().x, points_.front().y};
  for (const auto& p : points_) {
    bounds_.xmin = std::min(bounds_.xmin, p.x);
    bounds_.ymin = std::min(bounds_.ymin, p.y);
    bounds_.xmax = std::max(bounds_.xmax, p.x);
    bounds_.ymax = std::max(bounds_.ymax, p.y);
  }
}

GridSet::GridSet(Rect window, int resolution) : window_(window), resolution_(resolution) {
  if (resolution < 1) throw ValidationError("grid resolution must be >= 1");
  const double w = window.width();
  const double h = window.height();
  if (!(w > 0.0) || !std::isfinite(w) || !std::isfinite(h)) throw ValidationError("grid window must be non-empty");
  if (std::abs(w - h) > 1e-12 * std::max(1.0, w)) throw ValidationError("grid window must be square");
  cell_ = w / resolution;
  cells_.assign(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution), 0);
}

double GridSet::cell_diagonal() const { return cell_ * std::numbers::sqrt2; }

std::optional<CellIndex> GridSet::cell_of(Point2 p) const {
  if (!window_.contains(p)) return std::nullopt;
  const auto ix = static_cast<std::int32_t>(std::floor((p.x - window_.xmin) / cell_));
  const auto iy = static_cast<std::int32_t>(std::floor((p.y - window_.ymin) / cell_));
  return CellIndex{std::clamp(ix, 0, resolution_ - 1), std::clamp(iy, 0, resolution_ - 1)};
}

std::optional<std::size_t> GridSet::index_of(Point2 p) const {
  if (auto c = cell_of(p)) return index(*c);
  return std::nullopt;
}

Point2 GridSet::center(CellIndex c) const {
  return {window_.xmin + (c.ix + 0.5) * cell_, window_.ymin + (c.iy + 0.5) * cell_};
}

Point2 GridSet::center(std::size_t idx) const { return center(cell(idx)); }

bool GridSet::mark(std::size_t idx) {
  if (cells_[idx]) return false;
  cells_[idx] = 1;
  return true;
}

bool GridSet::mark(Point2 p) {
  if (auto idx = index_of(p)) return mark(*idx);
  return false;
}

std::size_t GridSet::occupied_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> GridSet::occupied_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i]) out.push_back(i);
  return out;
}

PointCloud GridSet::to_cloud() const {
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i]) pts.push_back(center(i));
  return PointCloud(std::move(pts));
}

bool GridSet::same_geometry(const GridSet& other) const {
  return window_ == other.window_ && resolution_ == other.resolution_;
}

bool GridSet::subset_of(const GridSet& other) const {
  if (!same_geometry(other)) throw PreconditionError("subset_of requires grids with identical geometry");
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i] && !other.cells_[i]) return false;
  return true;
}

GridSet rasterize(const PointCloud& cloud, Rect window, int resolution) {
  GridSet grid(window, resolution);
  for (const auto& p : cloud.points()) grid.mark(p);
  return grid;
}

}  // namespace rifs
