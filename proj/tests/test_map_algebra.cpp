#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rifs/errors.hpp"
#include "rifs/map_algebra.hpp"
#include "support.hpp"

using namespace rifs;
using rifs::test::Gen;

namespace {

constexpr double kPi = std::numbers::pi;

bool near(Point2 a, Point2 b, double tol) { return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol; }

// Largest |A u| over 20000 unit directions; the true norm is at most
// this times 1/cos(pi/20000).
double sampled_operator_norm(double a11, double a12, double a21, double a22) {
  double best = 0.0;
  for (int k = 0; k < 20000; ++k) {
    const double t = kPi * k / 20000.0;
    const double x = std::cos(t), y = std::sin(t);
    best = std::max(best, std::hypot(a11 * x + a12 * y, a21 * x + a22 * y));
  }
  return best;
}

}  // namespace

TEST_CASE("rotation by a third of a turn sends (2,0) to (-1, sqrt3)") {
  const Isometry2 g = Isometry2::rotation(2.0 * kPi / 3.0);
  CHECK(near(g({2, 0}), {-1.0, std::sqrt(3.0)}, 1e-12));
  CHECK(near(Isometry2::rotation_turns(1.0 / 3.0)({2, 0}), {-1.0, std::sqrt(3.0)}, 1e-12));
}

TEST_CASE("similarity z/2 + 1 sends the origin to (1,0)") {
  const auto f = Contraction2::similarity(0.5, 1.0);
  CHECK(near(f({0, 0}), {1, 0}, 0.0));
  CHECK(f.lipschitz() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(near(f.fixed_point(), {2, 0}, 1e-12));
}

TEST_CASE("radial map evaluates the norm") {
  const auto f = Contraction2::radial(1.0 / 3.0, 2.0 / 3.0);
  CHECK(near(f({0, 3}), {5.0 / 3.0, 0}, 1e-15));
  CHECK(near(apply(f, {0, 3}), {5.0 / 3.0, 0}, 1e-15));
}

TEST_CASE("radial 1/3 is 1/3-Lipschitz on sampled pairs") {
  const auto f = Contraction2::radial(1.0 / 3.0, 0.0);
  CHECK(f.lipschitz() == doctest::Approx(1.0 / 3.0));
  Gen gen(11);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const Point2 p = gen.point_in_disc(1.0), q = gen.point_in_disc(1.0);
    const double d = distance(p, q);
    if (d == 0.0) continue;
    worst = std::max(worst, distance(f(p), f(q)) / d);
  }
  CHECK(worst <= 1.0 / 3.0 + 1e-12);
  CHECK(worst > 0.3);
}

TEST_CASE("operator norm matches a sampled maximum") {
  Gen gen(5);
  for (int i = 0; i < 50; ++i) {
    const double a = gen.uniform(-2, 2), b = gen.uniform(-2, 2), c = gen.uniform(-2, 2), d = gen.uniform(-2, 2);
    const double exact = operator_norm(a, b, c, d);
    const double sampled = sampled_operator_norm(a, b, c, d);
    CHECK(exact >= sampled - 1e-12);
    CHECK(exact <= sampled * 1.0000001 + 1e-12);
  }
  CHECK(operator_norm(0.5, 0, 0, 0.25) == doctest::Approx(0.5));
  CHECK(operator_norm(0, -0.7, 0.2, 0) == doctest::Approx(0.7));
}

TEST_CASE("composed contraction keeps the base ratio") {
  const Contraction2 f(Composed{Isometry2::reflection(0.3), Similarity{0.4, 1.0}});
  CHECK(f.lipschitz() == doctest::Approx(0.4));
  const Contraction2 r(Composed{Isometry2::rotation(1.0), Radial{0.25, 1.0}});
  CHECK(r.lipschitz() == doctest::Approx(0.25));
  // base first, then pre
  CHECK(near(r({3, 4}), Isometry2::rotation(1.0)({2.25, 0}), 1e-12));
}

TEST_CASE("compose_iso with a rotation stays a similarity") {
  const auto g = Isometry2::rotation(2.0 * kPi / 3.0);
  const auto f = Contraction2::similarity(0.5, 1.0);
  const auto h = compose_iso(g, f);
  const auto* s = std::get_if<Similarity>(&h.variant());
  REQUIRE(s != nullptr);
  const std::complex<double> w = std::polar(1.0, 2.0 * kPi / 3.0);
  CHECK(std::abs(s->lambda - w / 2.0) < 1e-12);
  CHECK(std::abs(s->c - w) < 1e-12);
  CHECK(h.lipschitz() == doctest::Approx(0.5));
}

TEST_CASE("compose_iso with the identity returns the same map") {
  const auto id = Isometry2::identity();
  const Contraction2 maps[] = {
      Contraction2::affine(0.3, 0.1, -0.2, 0.4, 1, 2),
      Contraction2::similarity({0.2, 0.3}, {1, -1}),
      Contraction2::radial(0.5, 0.25),
      Contraction2(Composed{Isometry2::reflection(0.4), Radial{0.3, 0.1}}),
  };
  for (const auto& f : maps) {
    const auto h = compose_iso(id, f);
    CHECK(h.variant().index() == f.variant().index());
    Gen gen(3);
    for (int i = 0; i < 20; ++i) {
      const Point2 p = gen.point();
      CHECK(h(p) == f(p));
    }
  }
  const auto* s = std::get_if<Similarity>(&compose_iso(id, maps[1]).variant());
  REQUIRE(s != nullptr);
  CHECK(s->lambda == std::complex<double>(0.2, 0.3));
  CHECK(s->c == std::complex<double>(1, -1));
}

TEST_CASE("compose_iso with a radial map applies both stages") {
  const double theta = 0.7;
  const auto h = compose_iso(Isometry2::rotation(theta), Contraction2::radial(1.0 / 3.0, 2.0 / 3.0));
  CHECK(std::holds_alternative<Composed>(h.variant()));
  const Point2 expect{5.0 / 3.0 * std::cos(theta), 5.0 / 3.0 * std::sin(theta)};
  CHECK(near(h({0, 3}), expect, 1e-12));
  // folding a second isometry keeps one level of nesting
  const auto h2 = compose_iso(Isometry2::reflection(0.2), h);
  const auto* c = std::get_if<Composed>(&h2.variant());
  REQUIRE(c != nullptr);
  CHECK(std::holds_alternative<Radial>(c->base));
}

TEST_CASE("reflection composed with a similarity becomes affine") {
  const auto h = compose_iso(Isometry2::reflection(0.0), Contraction2::similarity({0, 0.5}, {1, 1}));
  CHECK(std::holds_alternative<Affine>(h.variant()));
  CHECK(near(h({1, 0}), {1, -1.5}, 1e-15));
}

TEST_CASE("determinant sign follows the construction") {
  CHECK(Isometry2::rotation(1.234).det() == doctest::Approx(1.0));
  CHECK(Isometry2::reflection(1.234).det() == doctest::Approx(-1.0));
  CHECK(Isometry2::reflection(0.0)({1, 1}) == Point2{1, -1});
  CHECK(Isometry2::identity().is_exact_identity());
}

TEST_CASE("isometry construction rejects non-orthogonal matrices") {
  CHECK_THROWS_AS(Isometry2::from_matrix(1, 0, 0, 1.001), ValidationError);
  CHECK_THROWS_AS(Isometry2::from_matrix(0.5, 0, 0, 2), ValidationError);
  CHECK_NOTHROW(Isometry2::from_matrix(0, -1, 1, 0));
}

TEST_CASE("contraction construction rejects ratio >= 1") {
  CHECK_THROWS_WITH_AS(Contraction2::affine(1, 0, 0, 1, 0, 0), doctest::Contains("contraction ratio >= 1"),
                       ValidationError);
  CHECK_THROWS_AS(Contraction2::similarity({0.6, 0.8}, 0), ValidationError);
  CHECK_THROWS_AS(Contraction2::radial(1.0, 0), ValidationError);
  CHECK_THROWS_AS(Contraction2::radial(-0.5, 0), ValidationError);
  CHECK_THROWS_AS(Contraction2::similarity(std::nan(""), 0), ValidationError);
  CHECK_NOTHROW(Contraction2::similarity(0.0, 3.0));
}

TEST_CASE("R-IFS validation") {
  const auto f = Contraction2::similarity(0.5, 1.0);
  const auto g = Isometry2::identity();
  CHECK_THROWS_WITH_AS(RSystem({}, {f}), doctest::Contains("m > 0"), ValidationError);
  CHECK_THROWS_WITH_AS(RSystem({g}, {}), doctest::Contains("n > 0"), ValidationError);
  CHECK_THROWS_AS(RSystem({g}, {f}, {0.5}), ValidationError);
  CHECK_THROWS_AS(RSystem({g}, {f}, {1.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(RSystem({g}, {f}, {0.7, 0.7}), ValidationError);
  const RSystem ok({g}, {f, Contraction2::radial(0.25, 0)});
  CHECK(ok.map_count() == 3);
  CHECK(ok.max_ratio() == doctest::Approx(0.5));
  for (double w : ok.weights()) CHECK(w == doctest::Approx(1.0 / 3.0));
}
