#include "rifs/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rifs/errors.hpp"

namespace rifs {

Ifs1D::Ifs1D(std::vector<AffineMap1D> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) throw ValidationError("1D IFS needs at least one map");
  for (std::size_t i = 0; i < maps_.size(); ++i)
    if (!(std::abs(maps_[i].scale) < 1.0) || !std::isfinite(maps_[i].offset))
      throw ValidationError("1D map " + std::to_string(i) + " is not a contraction");
}

double Ifs1D::max_ratio() const {
  double r = 0.0;
  for (const auto& f : maps_) r = std::max(r, std::abs(f.scale));
  return r;
}

std::pair<double, double> invariant_interval(const Ifs1D& ifs) {
  // Start from the hull of the fixed points and iterate I -> hull(U f_i(I)),
  // a contraction on intervals whose fixed point is the attractor's hull.
  double a = std::numeric_limits<double>::infinity();
  double b = -a;
  for (const auto& f : ifs.maps()) {
    const double p = f.offset / (1.0 - f.scale);
    a = std::min(a, p);
    b = std::max(b, p);
  }
  for (int iter = 0; iter < 100000; ++iter) {
    double na = std::numeric_limits<double>::infinity();
    double nb = -na;
    for (const auto& f : ifs.maps()) {
      const double u = f(a), v = f(b);
      na = std::min({na, u, v});
      nb = std::max({nb, u, v});
    }
    if (na >= a && nb <= b) break;
    a = std::min(a, na);
    b = std::max(b, nb);
  }
  return {a, b};
}

Profile1D oracle_attractor_1d(const Ifs1D& ifs, int depth, std::size_t word_budget) {
  if (depth < 1) throw PreconditionError("oracle depth must be >= 1");
  const auto& maps = ifs.maps();
  const double k = static_cast<double>(maps.size());
  if (std::pow(k, depth) > static_cast<double>(word_budget))
    throw PreconditionError(std::to_string(maps.size()) + "^" + std::to_string(depth) +
                            " words exceeds the budget of " + std::to_string(word_budget));

  const auto [a, b] = invariant_interval(ifs);
  // Level-by-level images of [a, b]; level d holds f_w([a, b]) for |w| = d.
  std::vector<std::pair<double, double>> level{{a, b}};
  for (int d = 0; d < depth; ++d) {
    std::vector<std::pair<double, double>> next;
    next.reserve(level.size() * maps.size());
    for (const auto& f : maps)
      for (const auto& [lo, hi] : level) {
        const double u = f(lo), v = f(hi);
        next.emplace_back(std::min(u, v), std::max(u, v));
      }
    level = std::move(next);
  }

  Profile1D out;
  out.h = (b - a) * std::pow(ifs.max_ratio(), depth);
  std::vector<double> mids;
  mids.reserve(level.size());
  for (const auto& [lo, hi] : level) mids.push_back(0.5 * (lo + hi));
  std::sort(mids.begin(), mids.end());
  for (double m : mids)
    if (out.values.empty() || m - out.values.back() >= out.h / 2.0) out.values.push_back(m);
  return out;
}

namespace {

Profile1D quantize(std::vector<double> radii, double h) {
  if (!(h > 0.0)) throw PreconditionError("profile resolution h must be > 0");
  for (double& r : radii) r = std::round(r / h) * h;
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  return {std::move(radii), h};
}

// Largest distance from a value of `from` to the nearest value of `to`.
double one_sided(const std::vector<double>& from, const std::vector<double>& to) {
  double worst = 0.0;
  for (double v : from) {
    const auto it = std::lower_bound(to.begin(), to.end(), v);
    double best = std::numeric_limits<double>::infinity();
    if (it != to.end()) best = *it - v;
    if (it != to.begin()) best = std::min(best, v - *std::prev(it));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

Profile1D radial_profile(const PointCloud& set, double h) {
  std::vector<double> radii;
  radii.reserve(set.size());
  for (const auto& p : set.points()) radii.push_back(norm(p));
  return quantize(std::move(radii), h);
}

Profile1D radial_profile(const GridSet& set, double h) {
  std::vector<double> radii;
  for (auto idx : set.occupied_indices()) radii.push_back(norm(set.center(idx)));
  return quantize(std::move(radii), h);
}

double profile_distance(const Profile1D& a, const Profile1D& b) {
  if (a.values.empty() && b.values.empty()) return 0.0;
  if (a.values.empty() || b.values.empty()) return std::numeric_limits<double>::infinity();
  return std::max(one_sided(a.values, b.values), one_sided(b.values, a.values));
}

Profile1D hutchinson_step(const Ifs1D& ifs, const Profile1D& profile) {
  std::vector<double> image;
  image.reserve(profile.values.size() * ifs.maps().size());
  for (const auto& f : ifs.maps())
    for (double v : profile.values) image.push_back(f(v));
  if (profile.h == 0.0) {
    // degenerate hull (a single fixed point): nothing to snap to
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    return {std::move(image), 0.0};
  }
  return quantize(std::move(image), profile.h);
}

std::optional<Ifs1D> radial_ifs(const RSystem& system) {
  std::vector<AffineMap1D> maps;
  for (const auto& f : system.contractions()) {
    const Radial* r = std::get_if<Radial>(&f.variant());
    if (const auto* c = std::get_if<Composed>(&f.variant())) r = std::get_if<Radial>(&c->base);
    if (!r) return std::nullopt;
    // the image (s|p| + c, 0) has norm |s|p| + c|; affine in |p| only when
    // the offset keeps it nonnegative
    if (r->offset_x < 0.0) return std::nullopt;
    maps.push_back({r->scale, r->offset_x});
  }
  return Ifs1D(std::move(maps));
}

double angular_coverage(const GridSet& set, double radius, double tol) {
  if (!(radius > 0.0)) throw PreconditionError("angular_coverage needs radius > 0");
  std::vector<bool> hit(kAngularBins, false);
  const double bin = 2.0 * std::numbers::pi / kAngularBins;
  for (auto idx : set.occupied_indices()) {
    const Point2 c = set.center(idx);
    if (std::abs(norm(c) - radius) > tol) continue;
    double theta = std::atan2(c.y, c.x);
    if (theta < 0.0) theta += 2.0 * std::numbers::pi;
    const auto b = std::min(kAngularBins - 1, static_cast<int>(theta / bin));
    hit[static_cast<std::size_t>(b)] = true;
  }
  return static_cast<double>(std::count(hit.begin(), hit.end(), true)) / kAngularBins;
}

}  // namespace rifs
