#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "rmz/curve.hpp"
#include "rmz/rng.hpp"
#include "rmz/valence.hpp"

using namespace rmz;

namespace {

// y^2 - x
BivariatePolynomial sqrt_curve_poly() {
  return BivariatePolynomial::from_terms(
      {{2, 0, {1, 0}}, {0, 1, {-1, 0}}});
}

// y^2 - (x^2 - 1)
BivariatePolynomial hyperbola_poly() {
  return BivariatePolynomial::from_terms(
      {{2, 0, {1, 0}}, {0, 2, {-1, 0}}, {0, 0, {1, 0}}});
}

std::vector<Complex> circle_path(Complex center, double radius, Complex start,
                                 int steps = 72) {
  double theta0 = std::arg(start - center);
  std::vector<Complex> path;
  for (int k = 0; k <= steps; ++k)
    path.push_back(center +
                   std::polar(radius, theta0 + 2 * std::numbers::pi * k / steps));
  return path;
}

}  // namespace

TEST_CASE("discriminant of y^2 - x") {
  auto delta = discriminant_x(sqrt_curve_poly());
  REQUIRE(delta.degree() == 1);
  auto roots = find_roots(delta);
  CHECK(std::abs(roots[0]) < 1e-10);
  CHECK(std::abs(delta(Complex(1, 0))) == doctest::Approx(4.0));
}

TEST_CASE("discriminant of y^2 - (x^2 - 1)") {
  auto delta = discriminant_x(hyperbola_poly());
  REQUIRE(delta.degree() == 2);
  auto roots = find_roots(delta);
  std::sort(roots.begin(), roots.end(),
            [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(roots[0] - Complex(-1, 0)) < 1e-9);
  CHECK(std::abs(roots[1] - Complex(1, 0)) < 1e-9);
}

TEST_CASE("discriminant of a linear-in-y curve is constant") {
  auto linear = BivariatePolynomial::from_terms(
      {{1, 0, {1, 0}}, {0, 1, {-1, 0}}});  // y - x
  auto delta = discriminant_x(linear);
  CHECK(delta.degree() == 0);
  CHECK(std::abs(delta(Complex(0.3, 0.1))) > 1e-12);
}

TEST_CASE("singular_points tags and bound") {
  auto locus = singular_points(sqrt_curve_poly());
  REQUIRE(locus.points.size() == 1);
  CHECK(std::abs(locus.points[0]) < 1e-9);
  CHECK(locus.sources[0] == SingularSource::Discriminant);

  // x*y - 1: the leading coefficient s_1 = x vanishes at 0.
  auto pole = BivariatePolynomial::from_terms({{1, 1, {1, 0}}, {0, 0, {-1, 0}}});
  auto locus2 = singular_points(pole);
  REQUIRE(locus2.points.size() == 1);
  CHECK(std::abs(locus2.points[0]) < 1e-9);

  for (const auto& poly : {sqrt_curve_poly(), hyperbola_poly()}) {
    auto l = singular_points(poly);
    long d = poly.deg_y();
    CHECK(static_cast<long>(l.points.size()) <= 2 * d * d);
  }
}

TEST_CASE("fiber values") {
  Curve curve(sqrt_curve_poly());
  auto f1 = curve.fiber({1, 0});
  REQUIRE(f1.size() == 2);
  CHECK(std::abs(f1[0] - Complex(-1, 0)) < 1e-10);
  CHECK(std::abs(f1[1] - Complex(1, 0)) < 1e-10);

  auto f4 = curve.fiber({4, 0});
  CHECK(std::abs(f4[0] - Complex(-2, 0)) < 1e-10);
  CHECK(std::abs(f4[1] - Complex(2, 0)) < 1e-10);

  Curve cubic(BivariatePolynomial::from_terms({{3, 0, {1, 0}}, {0, 1, {-1, 0}}}));
  auto f = cubic.fiber({1, 0});
  REQUIRE(f.size() == 3);
  for (Complex y : f) CHECK(std::abs(std::abs(y) - 1.0) < 1e-10);

  CHECK_THROWS_AS(curve.fiber({1e-8, 0}), ValidationError);
}

TEST_CASE("safe_radius") {
  Curve curve(sqrt_curve_poly());
  CHECK(curve.safe_radius({1, 0}) == doctest::Approx(1.0));
  Curve hyp(hyperbola_poly());
  CHECK(hyp.safe_radius({0, 0}) == doctest::Approx(1.0));
  // No singularities: y - x.
  Curve line(BivariatePolynomial::from_terms({{1, 0, {1, 0}}, {0, 1, {-1, 0}}}));
  CHECK(std::isinf(line.safe_radius({5, 2})));
}

TEST_CASE("continuation along real segment and loops") {
  Curve curve(sqrt_curve_poly());
  auto germ = curve.germ_at({1, 0}, 1);  // +sqrt branch
  CHECK(std::abs(germ.y_value - Complex(1, 0)) < 1e-10);

  auto moved = curve.continue_along(germ, {{1, 0}, {4, 0}});
  CHECK(std::abs(moved.y_value - Complex(2, 0)) < 1e-8);

  auto looped = curve.continue_along(germ, circle_path({0, 0}, 1.0, {1, 0}));
  CHECK(std::abs(looped.y_value - Complex(-1, 0)) < 1e-8);

  // Loop around x=3 does not enclose the branch point at 0.
  auto small_loop = curve.continue_along(moved, circle_path({3, 0}, 1.0, {4, 0}),
                                         PathCheck::Strict);
  CHECK(std::abs(small_loop.y_value - Complex(2, 0)) < 1e-8);

  // Paths through the singularity are rejected up front.
  CHECK_THROWS_AS(curve.continue_along(germ, {{1, 0}, {-1, 0}}),
                  ValidationError);
}

TEST_CASE("fiber consistency under continuation") {
  Curve curve(hyperbola_poly());
  auto rng = substream(31, 0);
  for (int trial = 0; trial < 6; ++trial) {
    Complex start(2.0 + 0.3 * trial, 1.5);
    Complex end(-0.4, 2.2 + 0.2 * trial);
    std::vector<Complex> path{start, Complex(1.8, 2.8), end};
    auto f0 = curve.fiber(start);
    auto f1 = curve.fiber(end);
    std::vector<bool> used(f1.size(), false);
    for (std::size_t j = 0; j < f0.size(); ++j) {
      auto moved = curve.continue_along(curve.germ_at(start, j), path);
      bool matched = false;
      for (std::size_t k = 0; k < f1.size(); ++k)
        if (!used[k] && std::abs(moved.y_value - f1[k]) < 1e-8) {
          used[k] = true;
          matched = true;
          break;
        }
      CHECK(matched);
    }
  }
}

TEST_CASE("monodromy of y^2 - x is the transposition") {
  Curve curve(sqrt_curve_poly());
  auto act = curve.monodromy({1, 0});
  REQUIRE(act.generators.size() == 1);
  CHECK(act.generators[0].permutation == std::vector<int>{1, 0});
  CHECK(act.group_order_estimate == 2);
}

TEST_CASE("monodromy of y^2 - (x^2-1): two transpositions, order 2") {
  Curve curve(hyperbola_poly());
  auto act = curve.monodromy({0, 2});
  REQUIRE(act.generators.size() == 2);
  for (const auto& gen : act.generators)
    CHECK(gen.permutation == std::vector<int>{1, 0});
  CHECK(act.group_order_estimate == 2);
}

TEST_CASE("monodromy of a single-branch curve is trivial") {
  Curve line(BivariatePolynomial::from_terms({{1, 0, {1, 0}}, {0, 1, {-1, 0}}}));
  auto act = line.monodromy({0.5, 0.5});
  CHECK(act.generators.empty());
  CHECK(act.group_order_estimate == 1);
}

TEST_CASE("composite of standard loops equals the loop at infinity") {
  Curve curve(hyperbola_poly());
  Complex base{0, 2};
  auto act = curve.monodromy(base);
  // Compose generators sorted by angle as seen from the basepoint.
  std::vector<std::size_t> order(act.generators.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::arg(act.generators[a].singular_point - base) <
           std::arg(act.generators[b].singular_point - base);
  });
  int d = curve.degree();
  std::vector<int> composite(d);
  for (int i = 0; i < d; ++i) composite[i] = i;
  for (std::size_t idx : order) {
    std::vector<int> next(d);
    for (int i = 0; i < d; ++i) next[i] = act.generators[idx].permutation[composite[i]];
    composite = next;
  }
  // One large circle enclosing the whole singular locus.
  auto f0 = curve.fiber(base);
  std::vector<int> big(d, -1);
  for (int j = 0; j < d; ++j) {
    auto end = curve.continue_along(curve.germ_at(base, j),
                                    circle_path({0, 0}, 2.0, base, 144));
    for (int k = 0; k < d; ++k)
      if (std::abs(end.y_value - f0[k]) < 1e-8) big[j] = k;
  }
  CHECK(composite == big);
}

TEST_CASE("implicit derivative matches finite differences") {
  Curve curve(hyperbola_poly());
  auto rng = substream(33, 1);
  int checked = 0;
  while (checked < 100) {
    Complex x = uniform_in_disk(rng, {0, 2.5}, 1.0);
    if (curve.safe_radius(x) < 0.3) continue;
    auto f = curve.fiber(x);
    for (Complex y : f) {
      Complex hp = curve.implicit_derivative(x, y);
      const double h = 1e-6;
      auto g0 = curve.continue_along(BranchGerm{x, y, 0},
                                     {x, x + Complex(h, 0)});
      Complex fd = (g0.y_value - y) / h;
      CHECK(std::abs(fd - hp) <= 1e-4 * std::max(1.0, std::abs(hp)));
      ++checked;
    }
  }
}

TEST_CASE("branch_restriction evaluates P(x, h(x))") {
  auto curve = std::make_shared<Curve>(sqrt_curve_poly());
  auto germ = curve->germ_at({1, 0}, 1);
  Disk dom{{1, 0}, 0.9};

  auto y_map = branch_restriction(
      curve, germ, BivariatePolynomial::from_terms({{1, 0, {1, 0}}}), dom);
  CHECK(std::abs(y_map->value({1.69, 0}) - Complex(1.3, 0)) < 1e-8);
  CHECK(y_map->poly_degree() == 1);

  auto x_map = branch_restriction(
      curve, germ, BivariatePolynomial::from_terms({{0, 1, {1, 0}}}), dom);
  CHECK(std::abs(x_map->value({1.5, 0}) - Complex(1.5, 0)) < 1e-10);
  CHECK(std::abs(x_map->derivative({1.5, 0}) - Complex(1, 0)) < 1e-8);

  // P = y^2 equals x on the curve.
  auto y2_map = branch_restriction(
      curve, germ, BivariatePolynomial::from_terms({{2, 0, {1, 0}}}), dom);
  auto rng = substream(34, 0);
  for (int i = 0; i < 25; ++i) {
    Complex x = uniform_in_disk(rng, {1, 0}, 0.85);
    CHECK(std::abs(y2_map->value(x) - x) < 1e-9);
  }

  // Domain reaching past the safe radius is rejected.
  CHECK_THROWS_AS(branch_restriction(curve, germ,
                                     BivariatePolynomial::from_terms(
                                         {{1, 0, {1, 0}}}),
                                     Disk{{1, 0}, 1.01}),
                  ValidationError);
}

TEST_CASE("branch restriction derivative cross-check") {
  auto curve = std::make_shared<Curve>(sqrt_curve_poly());
  auto germ = curve->germ_at({1, 0}, 1);
  auto map = branch_restriction(
      curve, germ,
      BivariatePolynomial::from_terms(
          {{1, 1, {1, 0}}, {2, 0, {0.5, 0}}, {0, 0, {-0.3, 0.2}}}),
      Disk{{1, 0}, 0.8});
  auto rng = substream(35, 0);
  for (int i = 0; i < 20; ++i) {
    Complex x = uniform_in_disk(rng, {1, 0}, 0.7);
    const double h = 1e-6;
    Complex fd =
        (map->value(x + Complex(h, 0)) - map->value(x - Complex(h, 0))) /
        (2 * h);
    Complex d = map->derivative(x);
    CHECK(std::abs(fd - d) <= 1e-4 * std::max(1.0, std::abs(d)));
  }
}

TEST_CASE("distortion bounds hold for a rescaled branch restriction") {
  // g(x) = sqrt(x) on a disk around 2 (safe radius 2), pulled back to the
  // unit disk; no zeros there, and the restriction is p-valent with
  // p = d * max(0, d1) <= 2.
  auto curve = std::make_shared<Curve>(sqrt_curve_poly());
  auto germ = curve->germ_at({2, 0}, 1);
  auto branch = branch_restriction(
      curve, germ, BivariatePolynomial::from_terms({{1, 0, {1, 0}}}),
      Disk{{2, 0}, 1.5});
  const Complex center{2, 0};
  const double scale = 1.4;
  CallableMap rescaled(
      [&, branch](Complex u) { return branch->value(center + scale * u); },
      [&, branch](Complex u) {
        return scale * branch->derivative(center + scale * u);
      },
      {{0, 0}, 1.0}, "sqrt branch pulled back to the unit disk", {});
  auto rep = verify_distortion(rescaled, {}, 2, 1000, 19);
  CHECK(rep.holds);
  CHECK(rep.min_upper_margin >= 0.0);
  CHECK(rep.min_lower_margin >= 0.0);
}

TEST_CASE("valence of branch restrictions stays within the Bezout budget") {
  auto curve = std::make_shared<Curve>(sqrt_curve_poly());
  auto germ = curve->germ_at({1, 0}, 0);
  auto map = branch_restriction(
      curve, germ,
      BivariatePolynomial::from_terms({{2, 0, {1, 0}}, {1, 1, {0.4, 0.1}}}),
      Disk{{1, 0}, 0.6});
  for (int s = 0; s <= 2; ++s) {
    auto rep = probe_valence(*map, map->domain(), s, 12, 17);
    CHECK(rep.max_count <= map->valence_budget(s));
  }
}
