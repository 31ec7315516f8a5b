#include "rifs/map_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "rifs/errors.hpp"

namespace rifs {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool all_finite(std::initializer_list<double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

Point2 apply_base(const BaseContraction& base, Point2 p) {
  return std::visit(
      Overloaded{
          [&](const Affine& a) -> Point2 {
            return {a.a11 * p.x + a.a12 * p.y + a.b1, a.a21 * p.x + a.a22 * p.y + a.b2};
          },
          [&](const Similarity& s) -> Point2 {
            const std::complex<double> w = s.lambda * std::complex<double>(p.x, p.y) + s.c;
            return {w.real(), w.imag()};
          },
          [&](const Radial& r) -> Point2 { return {r.scale * std::hypot(p.x, p.y) + r.offset_x, 0.0}; },
      },
      base);
}

double base_lipschitz(const BaseContraction& base) {
  return std::visit(Overloaded{
                        [](const Affine& a) { return operator_norm(a.a11, a.a12, a.a21, a.a22); },
                        [](const Similarity& s) { return std::abs(s.lambda); },
                        [](const Radial& r) { return std::abs(r.scale); },
                    },
                    base);
}

void validate_base(const BaseContraction& base) {
  std::visit(Overloaded{
                 [](const Affine& a) {
                   if (!all_finite({a.a11, a.a12, a.a21, a.a22, a.b1, a.b2}))
                     throw ValidationError("affine map has non-finite parameters");
                 },
                 [](const Similarity& s) {
                   if (!all_finite({s.lambda.real(), s.lambda.imag(), s.c.real(), s.c.imag()}))
                     throw ValidationError("similarity map has non-finite parameters");
                 },
                 [](const Radial& r) {
                   if (!all_finite({r.scale, r.offset_x}))
                     throw ValidationError("radial map has non-finite parameters");
                   if (r.scale < 0.0) throw ValidationError("radial scale must be >= 0");
                 },
             },
             base);
}

}  // namespace

double norm(Point2 p) { return std::hypot(p.x, p.y); }
double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// ---------------------------------------------------------------------------
// Isometry2

Isometry2 Isometry2::identity() { return {1.0, 0.0, 0.0, 1.0}; }

Isometry2 Isometry2::rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c, -s, s, c};
}

Isometry2 Isometry2::rotation_turns(double turns) {
  return rotation(2.0 * std::numbers::pi * turns);
}

Isometry2 Isometry2::reflection(double axis_angle) {
  const double c = std::cos(2.0 * axis_angle);
  const double s = std::sin(2.0 * axis_angle);
  return {c, s, s, -c};
}

Isometry2 Isometry2::from_matrix(double m11, double m12, double m21, double m22) {
  if (!all_finite({m11, m12, m21, m22})) throw ValidationError("isometry matrix has non-finite entries");
  // M^T M
  const double p11 = m11 * m11 + m21 * m21;
  const double p12 = m11 * m12 + m21 * m22;
  const double p22 = m12 * m12 + m22 * m22;
  if (std::abs(p11 - 1.0) > kOrthogonalityTolerance || std::abs(p12) > kOrthogonalityTolerance ||
      std::abs(p22 - 1.0) > kOrthogonalityTolerance)
    throw ValidationError("isometry matrix is not orthogonal (M^T M != I within 1e-12)");
  return {m11, m12, m21, m22};
}

bool Isometry2::is_exact_identity() const {
  return m11_ == 1.0 && m12_ == 0.0 && m21_ == 0.0 && m22_ == 1.0;
}

Isometry2 operator*(const Isometry2& a, const Isometry2& b) {
  return {a.m11_ * b.m11_ + a.m12_ * b.m21_, a.m11_ * b.m12_ + a.m12_ * b.m22_,
          a.m21_ * b.m11_ + a.m22_ * b.m21_, a.m21_ * b.m12_ + a.m22_ * b.m22_};
}

bool Isometry2::approx_equal(const Isometry2& o, double eps) const {
  return std::abs(m11_ - o.m11_) < eps && std::abs(m12_ - o.m12_) < eps &&
         std::abs(m21_ - o.m21_) < eps && std::abs(m22_ - o.m22_) < eps;
}

// ---------------------------------------------------------------------------
// Contraction2

double operator_norm(double a11, double a12, double a21, double a22) {
  // sigma_max = (|A + rot-part| + |A - rot-part|) / 2 in the conformal split
  const double p = std::hypot(a11 + a22, a21 - a12);
  const double q = std::hypot(a11 - a22, a21 + a12);
  return 0.5 * (p + q);
}

double lipschitz(const Contraction2::Variant& map) {
  return std::visit(Overloaded{
                        [](const Composed& c) { return base_lipschitz(c.base); },
                        [](const auto& base) { return base_lipschitz(BaseContraction(base)); },
                    },
                    map);
}

Contraction2::Contraction2(Variant map) : map_(std::move(map)) {
  std::visit(Overloaded{
                 [](const Composed& c) { validate_base(c.base); },
                 [](const auto& base) { validate_base(BaseContraction(base)); },
             },
             map_);
  lipschitz_ = rifs::lipschitz(map_);
  if (!(lipschitz_ < 1.0))
    throw ValidationError("contraction ratio >= 1 (got " + std::to_string(lipschitz_) + ")");
}

Contraction2 Contraction2::affine(double a11, double a12, double a21, double a22, double b1, double b2) {
  return Contraction2(Affine{a11, a12, a21, a22, b1, b2});
}

Contraction2 Contraction2::similarity(std::complex<double> lambda, std::complex<double> c) {
  return Contraction2(Similarity{lambda, c});
}

Contraction2 Contraction2::radial(double scale, double offset_x) {
  return Contraction2(Radial{scale, offset_x});
}

Point2 Contraction2::operator()(Point2 p) const {
  return std::visit(Overloaded{
                        [&](const Composed& c) { return c.pre(apply_base(c.base, p)); },
                        [&](const auto& base) { return apply_base(BaseContraction(base), p); },
                    },
                    map_);
}

Point2 Contraction2::fixed_point() const {
  // Banach iteration; the error after a step of size d is at most d r/(1-r).
  const double r = lipschitz_;
  std::size_t max_iter = 64;
  if (r > 0.0) max_iter += static_cast<std::size_t>(std::min(1e7, std::ceil(std::log(1e-18) / std::log(r))));
  Point2 x{};
  for (std::size_t i = 0; i < max_iter; ++i) {
    const Point2 next = (*this)(x);
    const double step = distance(next, x);
    x = next;
    if (step <= 1e-16 * (1.0 + norm(x))) break;
  }
  return x;
}

Point2 apply(const Isometry2& g, Point2 p) { return g(p); }
Point2 apply(const Contraction2& f, Point2 p) { return f(p); }

Contraction2 compose_iso(const Isometry2& g, const Contraction2& f) {
  if (g.is_exact_identity()) return f;
  return std::visit(
      Overloaded{
          [&](const Affine& a) {
            return Contraction2(Affine{g.m11() * a.a11 + g.m12() * a.a21, g.m11() * a.a12 + g.m12() * a.a22,
                                       g.m21() * a.a11 + g.m22() * a.a21, g.m21() * a.a12 + g.m22() * a.a22,
                                       g.m11() * a.b1 + g.m12() * a.b2, g.m21() * a.b1 + g.m22() * a.b2});
          },
          [&](const Similarity& s) {
            if (g.is_rotation()) {
              const std::complex<double> u(g.m11(), g.m21());
              return Contraction2(Similarity{u * s.lambda, u * s.c});
            }
            // A reflection is antiholomorphic; the composite is only affine.
            const double lr = s.lambda.real(), li = s.lambda.imag();
            const Affine a{lr, -li, li, lr, s.c.real(), s.c.imag()};
            return compose_iso(g, Contraction2(a));
          },
          [&](const Radial& r) { return Contraction2(Composed{g, r}); },
          [&](const Composed& c) { return Contraction2(Composed{g * c.pre, c.base}); },
      },
      f.variant());
}

// ---------------------------------------------------------------------------
// RSystem

namespace {

std::vector<double> uniform_weights(std::size_t count) {
  return std::vector<double>(count, count == 0 ? 0.0 : 1.0 / static_cast<double>(count));
}

}  // namespace

RSystem::RSystem(std::vector<Isometry2> isometries, std::vector<Contraction2> contractions)
    : isometries_(std::move(isometries)), contractions_(std::move(contractions)) {
  weights_ = uniform_weights(map_count());
  validate();
}

RSystem::RSystem(std::vector<Isometry2> isometries, std::vector<Contraction2> contractions,
                 std::vector<double> weights)
    : isometries_(std::move(isometries)), contractions_(std::move(contractions)), weights_(std::move(weights)) {
  validate();
}

void RSystem::validate() const {
  if (isometries_.empty()) throw ValidationError("m > 0 required: an R-IFS needs at least one isometry");
  if (contractions_.empty()) throw ValidationError("n > 0 required: an R-IFS needs at least one contraction");
  if (weights_.size() != map_count())
    throw ValidationError("expected " + std::to_string(map_count()) + " weights, got " +
                          std::to_string(weights_.size()));
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      throw ValidationError("weights[" + std::to_string(i) + "] must be positive");
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("weights must sum to 1");
}

double RSystem::max_ratio() const {
  double r = 0.0;
  for (const auto& f : contractions_) r = std::max(r, f.lipschitz());
  return r;
}

}  // namespace rifs
