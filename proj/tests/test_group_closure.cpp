#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "rifs/errors.hpp"
#include "rifs/group_closure.hpp"
#include "support.hpp"

using namespace rifs;

namespace {

constexpr double kPi = std::numbers::pi;

FiniteGroup finite(const GroupClosureResult& r) {
  REQUIRE(std::holds_alternative<FiniteGroup>(r));
  return std::get<FiniteGroup>(r);
}

// Simulates the angle orbit k * alpha (mod 1) in long double: true when some
// power 1..cap of the rotation by alpha turns is within eps of the identity
// entrywise, i.e. the closure would stop before exceeding the cap.
bool orbit_returns(long double alpha, std::size_t cap, double eps) {
  for (std::size_t k = 1; k <= cap; ++k) {
    long double t = k * alpha;
    t -= std::floor(t);
    const long double angle = 2.0L * std::numbers::pi_v<long double> * t;
    if (std::abs(std::cos(angle) - 1.0L) < eps && std::abs(std::sin(angle)) < eps) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("rotation by a third of a turn generates a group of order 3") {
  const Isometry2 g[] = {Isometry2::rotation(2.0 * kPi / 3.0)};
  const auto G = finite(close_group(g, 1e-9, 1000));
  CHECK(G.size() == 3);
  CHECK(G.elements[0].is_exact_identity());
  CHECK(G.orders == std::vector<std::size_t>{1, 3, 3});
}

TEST_CASE("a reflection generates a group of order 2") {
  const Isometry2 g[] = {Isometry2::reflection(0.0)};
  const auto G = finite(close_group(g, 1e-9, 1000));
  CHECK(G.size() == 2);
  CHECK(G.orders == std::vector<std::size_t>{1, 2});
}

TEST_CASE("an irrational rotation exceeds the cap") {
  const long double alpha = 1.0L / std::sqrt(2.0L);
  REQUIRE_FALSE(orbit_returns(alpha, 1000, 1e-9));
  const Isometry2 g[] = {Isometry2::rotation(2.0 * kPi * static_cast<double>(alpha))};
  const auto r = close_group(g, 1e-9, 1000);
  REQUIRE(std::holds_alternative<CapExceeded>(r));
  CHECK(std::get<CapExceeded>(r).cap == 1000);
}

TEST_CASE("dihedral group of the square") {
  const Isometry2 g[] = {Isometry2::rotation_turns(0.25), Isometry2::reflection(0.0)};
  const auto G = finite(close_group(g));
  CHECK(G.size() == 8);
  CHECK(std::count(G.orders.begin(), G.orders.end(), std::size_t{2}) == 5);
}

TEST_CASE("close_group rejects bad arguments") {
  const Isometry2 g[] = {Isometry2::identity()};
  CHECK_THROWS_AS(close_group(std::span<const Isometry2>{}), ValidationError);
  CHECK_THROWS_AS(close_group(g, 0.0), ValidationError);
  CHECK_THROWS_AS(close_group(g, -1.0), ValidationError);
  CHECK_THROWS_AS(close_group(g, 1e-9, 0), ValidationError);
  CHECK(finite(close_group(g)).size() == 1);
}

TEST_CASE("cap is a verdict at the boundary") {
  const Isometry2 g[] = {Isometry2::rotation_turns(1.0 / 7.0)};
  CHECK(finite(close_group(g, 1e-9, 7)).size() == 7);
  CHECK(std::holds_alternative<CapExceeded>(close_group(g, 1e-9, 6)));
}

TEST_CASE("flattening the Sierpinski system gives three maps") {
  const RSystem sys({Isometry2::rotation(2.0 * kPi / 3.0)}, {Contraction2::similarity(0.5, 1.0)});
  const FlatIFS flat = flatten(sys, close_group(sys.isometries()));
  REQUIRE(flat.maps.size() == 3);
  // f2, f1 o f2, f1 o f1 o f2 in complex form
  const std::complex<double> w = std::polar(1.0, 2.0 * kPi / 3.0);
  rifs::test::Gen gen(1);
  for (int i = 0; i < 20; ++i) {
    const Point2 p = gen.point();
    const std::complex<double> z{p.x, p.y};
    std::complex<double> rot = 1.0;
    for (std::size_t k = 0; k < 3; ++k, rot *= w) {
      const std::complex<double> expect = rot * (z / 2.0 + 1.0);
      const Point2 got = flat.maps[k](p);
      CHECK(std::abs(got.x - expect.real()) < 1e-12);
      CHECK(std::abs(got.y - expect.imag()) < 1e-12);
    }
  }
}

TEST_CASE("flattening with only the identity returns the original maps") {
  const std::vector<Contraction2> maps = {Contraction2::similarity(0.5, 0.0), Contraction2::similarity(0.5, 0.5),
                                          Contraction2::affine(0.3, 0.1, 0, 0.2, 1, 1),
                                          Contraction2::radial(0.2, 0.4)};
  const RSystem sys({Isometry2::identity()}, maps);
  const FlatIFS flat = flatten(sys, close_group(sys.isometries()));
  REQUIRE(flat.maps.size() == maps.size());
  rifs::test::Gen gen(2);
  for (std::size_t j = 0; j < maps.size(); ++j) {
    CHECK(flat.maps[j].variant().index() == maps[j].variant().index());
    for (int i = 0; i < 10; ++i) {
      const Point2 p = gen.point();
      CHECK(flat.maps[j](p) == maps[j](p));
    }
  }
}

TEST_CASE("n-gon flattening matches b^k lambda z + b^k") {
  const double lambda = 0.3;
  const RSystem sys({Isometry2::rotation(2.0 * kPi / 5.0)}, {Contraction2::similarity(lambda, 1.0)});
  const FlatIFS flat = flatten(sys, close_group(sys.isometries()));
  REQUIRE(flat.maps.size() == 5);
  std::vector<bool> matched(5, false);
  for (int k = 1; k <= 5; ++k) {
    const std::complex<double> b = std::polar(1.0, 2.0 * kPi * k / 5.0);
    int hits = 0;
    for (std::size_t i = 0; i < 5; ++i) {
      const auto* s = std::get_if<Similarity>(&flat.maps[i].variant());
      REQUIRE(s != nullptr);
      if (std::abs(s->lambda - b * lambda) < 1e-9 && std::abs(s->c - b) < 1e-9) {
        matched[i] = true;
        ++hits;
      }
    }
    CHECK(hits == 1);
  }
  CHECK(std::all_of(matched.begin(), matched.end(), [](bool b) { return b; }));
}

TEST_CASE("flatten rejects an infinite group") {
  const RSystem sys({Isometry2::rotation_turns(0.7071067811865476)}, {Contraction2::radial(1.0 / 3.0, 0)});
  const auto group = close_group(sys.isometries());
  REQUIRE(std::holds_alternative<CapExceeded>(group));
  CHECK_THROWS_WITH_AS(flatten(sys, group), doctest::Contains("cap of 4096"), ValidationError);
}

TEST_CASE("as_rsystem prepends the identity") {
  const FlatIFS flat{{Contraction2::similarity(0.5, 0.0), Contraction2::similarity(0.5, 1.0)}};
  const RSystem sys = as_rsystem(flat);
  REQUIRE(sys.isometries().size() == 1);
  CHECK(sys.isometries()[0].is_exact_identity());
  CHECK(sys.contractions().size() == 2);
}
