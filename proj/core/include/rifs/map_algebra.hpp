#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace rifs {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

double norm(Point2 p);
double distance(Point2 a, Point2 b);

/// Tolerance used when validating orthogonality of user supplied matrices.
inline constexpr double kOrthogonalityTolerance = 1e-12;

/// Linear isometry of the plane (an orthogonal 2x2 matrix). Always fixes the
/// origin. Instances are orthogonal by construction: the only way to build
/// one from raw entries is from_matrix, which validates.
class Isometry2 {
 public:
  static Isometry2 identity();
  /// Counter-clockwise rotation by `angle` radians.
  static Isometry2 rotation(double angle);
  /// Rotation by 2*pi*turns; lets callers write 1/3 turn instead of 2*pi/3.
  static Isometry2 rotation_turns(double turns);
  /// Reflection across the line through the origin at `axis_angle` radians.
  static Isometry2 reflection(double axis_angle);
  /// Throws ValidationError unless M^T M = I within kOrthogonalityTolerance.
  static Isometry2 from_matrix(double m11, double m12, double m21, double m22);

  double m11() const { return m11_; }
  double m12() const { return m12_; }
  double m21() const { return m21_; }
  double m22() const { return m22_; }

  double det() const { return m11_ * m22_ - m12_ * m21_; }
  bool is_rotation() const { return det() > 0.0; }
  /// Exact (bitwise) identity matrix.
  bool is_exact_identity() const;

  Point2 operator()(Point2 p) const {
    return {m11_ * p.x + m12_ * p.y, m21_ * p.x + m22_ * p.y};
  }

  /// Composition: (a * b)(p) == a(b(p)).
  friend Isometry2 operator*(const Isometry2& a, const Isometry2& b);

  /// Inverse, which for an orthogonal matrix is its transpose.
  Isometry2 inverse() const { return {m11_, m21_, m12_, m22_}; }

  /// Entrywise comparison: all four entries differ by less than eps.
  bool approx_equal(const Isometry2& other, double eps) const;

 private:
  Isometry2(double m11, double m12, double m21, double m22)
      : m11_(m11), m12_(m12), m21_(m21), m22_(m22) {}

  double m11_, m12_, m21_, m22_;
};

/// x -> A x + b with A = [[a11, a12], [a21, a22]].
struct Affine {
  double a11 = 0, a12 = 0, a21 = 0, a22 = 0;
  double b1 = 0, b2 = 0;
};

/// z -> lambda z + c on the plane read as the complex line (x, y) <-> x + iy.
struct Similarity {
  std::complex<double> lambda;
  std::complex<double> c;
};

/// (x, y) -> (scale * |(x, y)| + offset_x, 0).
struct Radial {
  double scale = 0;
  double offset_x = 0;
};

using BaseContraction = std::variant<Affine, Similarity, Radial>;

/// pre o base: base is applied first.
struct Composed {
  Isometry2 pre;
  BaseContraction base;
};

/// A strict Banach contraction of the plane. Construction computes the
/// Lipschitz constant and rejects anything that is not < 1.
class Contraction2 {
 public:
  using Variant = std::variant<Affine, Similarity, Radial, Composed>;

  explicit Contraction2(Variant map);

  static Contraction2 affine(double a11, double a12, double a21, double a22, double b1, double b2);
  static Contraction2 similarity(std::complex<double> lambda, std::complex<double> c);
  static Contraction2 radial(double scale, double offset_x);

  const Variant& variant() const { return map_; }
  double lipschitz() const { return lipschitz_; }

  Point2 operator()(Point2 p) const;

  /// The unique fixed point, found by Banach iteration from the origin.
  Point2 fixed_point() const;

 private:
  Variant map_;
  double lipschitz_;
};

Point2 apply(const Isometry2& g, Point2 p);
Point2 apply(const Contraction2& f, Point2 p);

/// Largest singular value of [[a11, a12], [a21, a22]].
double operator_norm(double a11, double a12, double a21, double a22);

/// Lipschitz constant of a map. Valid for any parameters, including ones a
/// Contraction2 would reject.
double lipschitz(const Contraction2::Variant& map);
inline double lipschitz(const Contraction2& f) { return f.lipschitz(); }

/// g o f. Affine and Similarity inputs stay in closed form (a reflection
/// turns a Similarity into an Affine); Radial maps become Composed, and a
/// Composed input folds g into its isometry so nesting never exceeds one.
Contraction2 compose_iso(const Isometry2& g, const Contraction2& f);

/// An R-IFS: origin-fixing isometries plus Banach contractions, with
/// chaos-game selection weights (isometries first).
class RSystem {
 public:
  /// Uniform weights over all m + n maps.
  RSystem(std::vector<Isometry2> isometries, std::vector<Contraction2> contractions);
  /// Weights must be positive and sum to 1 within 1e-9.
  RSystem(std::vector<Isometry2> isometries, std::vector<Contraction2> contractions,
          std::vector<double> weights);

  std::span<const Isometry2> isometries() const { return isometries_; }
  std::span<const Contraction2> contractions() const { return contractions_; }
  std::span<const double> weights() const { return weights_; }

  std::size_t map_count() const { return isometries_.size() + contractions_.size(); }
  /// Largest contraction ratio r.
  double max_ratio() const;

 private:
  void validate() const;

  std::vector<Isometry2> isometries_;
  std::vector<Contraction2> contractions_;
  std::vector<double> weights_;
};

}  // namespace rifs
