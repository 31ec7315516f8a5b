#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "rifs/geometry.hpp"
#include "rifs/map_algebra.hpp"

namespace rifs::test {

inline std::string scene_path(const std::string& name) { return std::string(RIFS_SCENE_DIR) + "/" + name; }

using cplx = std::complex<double>;

inline Point2 to_point(cplx z) { return {z.real(), z.imag()}; }
inline cplx to_complex(Point2 p) { return {p.x, p.y}; }

// Brute-force one-sided Hausdorff, O(|a| |b|).
inline double brute_one_sided(const std::vector<Point2>& from, const std::vector<Point2>& to) {
  double worst = 0.0;
  for (const auto& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : to) best = std::min(best, std::hypot(p.x - q.x, p.y - q.y));
    worst = std::max(worst, best);
  }
  return worst;
}

inline double brute_hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  return std::max(brute_one_sided(a, b), brute_one_sided(b, a));
}

inline std::vector<Point2> centers(const GridSet& grid) {
  std::vector<Point2> out;
  for (auto idx : grid.occupied_indices()) out.push_back(grid.center(idx));
  return out;
}

// Every depth-fold composition of `maps` applied to `start`. For an IFS with
// ratio r these points lie within r^depth * diam of the attractor and cover it
// to the same accuracy.
inline std::vector<Point2> word_oracle(const std::vector<std::function<cplx(cplx)>>& maps, cplx start, int depth) {
  std::vector<cplx> level{start};
  for (int d = 0; d < depth; ++d) {
    std::vector<cplx> next;
    next.reserve(level.size() * maps.size());
    for (const auto& f : maps)
      for (cplx z : level) next.push_back(f(z));
    level = std::move(next);
  }
  std::vector<Point2> out;
  out.reserve(level.size());
  for (cplx z : level) out.push_back(to_point(z));
  return out;
}

// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return integer(0, 1) == 1; }

  Point2 point(double half_width = 3.0) { return {uniform(-half_width, half_width), uniform(-half_width, half_width)}; }

  Point2 point_in_disc(double radius) {
    for (;;) {
      const Point2 p = point(radius);
      if (std::hypot(p.x, p.y) <= radius) return p;
    }
  }

  Isometry2 isometry() {
    const double t = uniform(0.0, 2.0 * std::numbers::pi);
    return coin() ? Isometry2::rotation(t) : Isometry2::reflection(t);
  }

  // Affine with operator norm <= max_ratio, built as R(a) diag(s1, s2) R(b).
  Contraction2 affine(double max_ratio) {
    const double a = uniform(0.0, 6.3), b = uniform(0.0, 6.3);
    const double s1 = uniform(0.05, max_ratio), s2 = uniform(-max_ratio, max_ratio);
    const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
    const double m11 = ca * s1 * cb - sa * s2 * sb, m12 = -ca * s1 * sb - sa * s2 * cb;
    const double m21 = sa * s1 * cb + ca * s2 * sb, m22 = -sa * s1 * sb + ca * s2 * cb;
    return Contraction2::affine(m11, m12, m21, m22, uniform(-1, 1), uniform(-1, 1));
  }

  Contraction2 similarity(double max_ratio) {
    return Contraction2::similarity(std::polar(uniform(0.05, max_ratio), uniform(0.0, 6.3)),
                                    {uniform(-1, 1), uniform(-1, 1)});
  }

  Contraction2 radial(double max_ratio) { return Contraction2::radial(uniform(0.05, max_ratio), uniform(0.0, 1.0)); }

  Contraction2 contraction(double max_ratio = 0.9) {
    switch (integer(0, 3)) {
      case 0: return affine(max_ratio);
      case 1: return similarity(max_ratio);
      case 2: return radial(max_ratio);
      default: {
        const Contraction2 base = coin() ? similarity(max_ratio) : radial(max_ratio);
        const auto* sim = std::get_if<Similarity>(&base.variant());
        BaseContraction b = sim ? BaseContraction(*sim) : BaseContraction(std::get<Radial>(base.variant()));
        return Contraction2(Composed{isometry(), b});
      }
    }
  }

  // A small system whose isometries generate a finite group: a rotation by
  // p/q turns, optionally with a reflection (dihedral group).
  RSystem finite_system(double max_ratio = 0.5) {
    const int q = integer(1, 6);
    std::vector<Isometry2> isos{Isometry2::rotation_turns(static_cast<double>(integer(0, q - 1)) / q)};
    if (coin()) isos.push_back(Isometry2::reflection(std::numbers::pi * integer(0, 2 * q - 1) / q));
    std::vector<Contraction2> cons;
    const int n = integer(1, 2);
    for (int i = 0; i < n; ++i) cons.push_back(coin() ? similarity(max_ratio) : affine(max_ratio));
    std::vector<double> weights(isos.size(), 0.8 / static_cast<double>(isos.size()));
    for (int i = 0; i < n; ++i) weights.push_back(0.2 / n);
    return RSystem(std::move(isos), std::move(cons), std::move(weights));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rifs::test
