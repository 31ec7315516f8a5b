#include "rifs/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rifs/parallel.hpp"

namespace rifs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::int64_t kMaxBucketsPerAxis = 4096;

}  // namespace

NearestNeighborIndex::NearestNeighborIndex(std::span<const Point2> points) {
  if (points.empty()) return;
  const PointCloud cloud(std::vector<Point2>(points.begin(), points.end()));
  bounds_ = cloud.bounds();
  const double w = bounds_.width();
  const double h = bounds_.height();
  const double n = static_cast<double>(points.size());
  if (w > 0.0 && h > 0.0)
    bucket_ = std::sqrt(2.0 * w * h / n);
  else if (std::max(w, h) > 0.0)
    bucket_ = std::max(w, h) / n;
  bucket_ = std::max({bucket_, w / kMaxBucketsPerAxis, h / kMaxBucketsPerAxis});
  if (!(bucket_ > 0.0)) bucket_ = 1.0;
  nx_ = std::clamp<std::int64_t>(static_cast<std::int64_t>(w / bucket_) + 1, 1, kMaxBucketsPerAxis);
  ny_ = std::clamp<std::int64_t>(static_cast<std::int64_t>(h / bucket_) + 1, 1, kMaxBucketsPerAxis);

  std::vector<std::uint32_t> counts(static_cast<std::size_t>(nx_ * ny_) + 1, 0);
  std::vector<std::uint32_t> slot(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    slot[i] = static_cast<std::uint32_t>(bucket_y(points[i].y) * nx_ + bucket_x(points[i].x));
    ++counts[slot[i] + 1];
  }
  for (std::size_t b = 1; b < counts.size(); ++b) counts[b] += counts[b - 1];
  offsets_ = counts;
  points_.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) points_[counts[slot[i]]++] = points[i];
}

std::int64_t NearestNeighborIndex::bucket_x(double x) const {
  return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((x - bounds_.xmin) / bucket_)), 0, nx_ - 1);
}

std::int64_t NearestNeighborIndex::bucket_y(double y) const {
  return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((y - bounds_.ymin) / bucket_)), 0, ny_ - 1);
}

double NearestNeighborIndex::nearest_distance(Point2 q) const {
  if (points_.empty()) return kInf;
  // Buckets are anchored at the projection of q onto the bounds. Projection
  // onto a convex set is 1-Lipschitz, so a point in ring r is at least
  // (r - 1) buckets away from q itself.
  const std::int64_t cx = bucket_x(q.x);
  const std::int64_t cy = bucket_y(q.y);
  const std::int64_t max_ring = std::max({cx, nx_ - 1 - cx, cy, ny_ - 1 - cy});
  double best2 = kInf;
  auto scan = [&](std::int64_t bx, std::int64_t by) {
    if (bx < 0 || by < 0 || bx >= nx_ || by >= ny_) return;
    const auto b = static_cast<std::size_t>(by * nx_ + bx);
    for (std::uint32_t i = offsets_[b]; i < offsets_[b + 1]; ++i) {
      const double dx = points_[i].x - q.x;
      const double dy = points_[i].y - q.y;
      best2 = std::min(best2, dx * dx + dy * dy);
    }
  };
  for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
    if (ring == 0) {
      scan(cx, cy);
    } else {
      for (std::int64_t bx = cx - ring; bx <= cx + ring; ++bx) {
        scan(bx, cy - ring);
        scan(bx, cy + ring);
      }
      for (std::int64_t by = cy - ring + 1; by <= cy + ring - 1; ++by) {
        scan(cx - ring, by);
        scan(cx + ring, by);
      }
    }
    const double reach = static_cast<double>(ring) * bucket_;
    if (best2 <= reach * reach) break;
  }
  return std::sqrt(best2);
}

double one_sided_hausdorff(const PointCloud& from, const PointCloud& to, unsigned threads) {
  if (from.empty()) return 0.0;
  if (to.empty()) return kInf;
  const NearestNeighborIndex index(to.points());
  const auto pts = from.points();
  const unsigned workers = resolve_threads(threads);
  std::vector<double> partial(workers, 0.0);
  parallel_for(pts.size(), workers, [&](std::size_t begin, std::size_t end, unsigned w) {
    double worst = 0.0;
    for (std::size_t i = begin; i < end; ++i) worst = std::max(worst, index.nearest_distance(pts[i]));
    partial[w] = worst;
  });
  return *std::max_element(partial.begin(), partial.end());
}

double hausdorff_distance(const PointCloud& a, const PointCloud& b, unsigned threads) {
  return std::max(one_sided_hausdorff(a, b, threads), one_sided_hausdorff(b, a, threads));
}

namespace {

// 1D squared distance transform of f (stride-accessed) into out.
void transform_1d(const double* f, std::size_t stride, std::size_t n, double* out, std::vector<std::size_t>& v,
                  std::vector<double>& z) {
  auto at = [&](std::size_t i) { return f[i * stride]; };
  std::size_t k = 0;
  std::size_t first = n;
  for (std::size_t i = 0; i < n; ++i)
    if (std::isfinite(at(i))) {
      first = i;
      break;
    }
  if (first == n) {
    for (std::size_t i = 0; i < n; ++i) out[i * stride] = kInf;
    return;
  }
  v[0] = first;
  z[0] = -kInf;
  z[1] = kInf;
  for (std::size_t q = first + 1; q < n; ++q) {
    if (!std::isfinite(at(q))) continue;
    const auto qd = static_cast<double>(q);
    auto intersect = [&](std::size_t p) {
      const auto pd = static_cast<double>(p);
      return ((at(q) + qd * qd) - (at(p) + pd * pd)) / (2.0 * qd - 2.0 * pd);
    };
    double s = intersect(v[k]);
    while (s <= z[k]) {
      --k;
      s = intersect(v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const auto qd = static_cast<double>(q);
    while (z[k + 1] < qd) ++k;
    const double d = qd - static_cast<double>(v[k]);
    out[q * stride] = d * d + at(v[k]);
  }
}

}  // namespace

std::vector<double> squared_distance_transform(const GridSet& grid) {
  const auto n = static_cast<std::size_t>(grid.resolution());
  std::vector<double> src(n * n);
  const auto raw = grid.raw();
  for (std::size_t i = 0; i < src.size(); ++i) src[i] = raw[i] ? 0.0 : kInf;
  std::vector<double> tmp(n * n);
  std::vector<std::size_t> v(n);
  std::vector<double> z(n + 1);
  // columns (vary y), then rows (vary x)
  for (std::size_t x = 0; x < n; ++x) transform_1d(src.data() + x, n, n, tmp.data() + x, v, z);
  for (std::size_t y = 0; y < n; ++y) transform_1d(tmp.data() + y * n, 1, n, src.data() + y * n, v, z);
  return src;
}

double one_sided_hausdorff(const GridSet& from, const GridSet& to) {
  if (!from.same_geometry(to)) return one_sided_hausdorff(from.to_cloud(), to.to_cloud());
  const auto from_cells = from.occupied_indices();
  if (from_cells.empty()) return 0.0;
  if (to.empty()) return kInf;
  const auto dt = squared_distance_transform(to);
  double worst = 0.0;
  for (auto i : from_cells) worst = std::max(worst, dt[i]);
  return std::sqrt(worst) * to.cell_size();
}

double hausdorff_distance(const GridSet& a, const GridSet& b) {
  return std::max(one_sided_hausdorff(a, b), one_sided_hausdorff(b, a));
}

}  // namespace rifs
