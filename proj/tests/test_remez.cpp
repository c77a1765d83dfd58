#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rmz/remez.hpp"
#include "rmz/rng.hpp"

using namespace rmz;

TEST_CASE("real_remez_bound") {
  CHECK(real_remez_bound(1, 2.0) == doctest::Approx(1.0));
  CHECK(real_remez_bound(2, 1.0) == doctest::Approx(17.0));
  for (int d = 1; d <= 6; ++d)
    CHECK(real_remez_bound(d, 2.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(real_remez_bound(2, 0.0), ValidationError);
  CHECK_THROWS_AS(real_remez_bound(2, -1.0), ValidationError);

  // d = 1..5 at omega = 1 reproduces T_d(3) from the recurrence.
  double tm1 = 1.0, t = 3.0;
  for (int d = 1; d <= 5; ++d) {
    CHECK(real_remez_bound(d, 1.0) == doctest::Approx(t).epsilon(1e-12));
    double next = 6.0 * t - tm1;
    tm1 = t;
    t = next;
  }
}

TEST_CASE("complex_remez_bound and leading_coeff_bound") {
  CHECK(complex_remez_bound(1, kSixE) == doctest::Approx(1.0));
  CHECK(complex_remez_bound(2, 1.0) == doctest::Approx(kSixE * kSixE));
  CHECK(complex_remez_bound(2, 1.0) == doctest::Approx(266.006).epsilon(1e-4));
  CHECK(complex_remez_bound(3, kSixE) == doctest::Approx(1.0));
  CHECK_THROWS_AS(complex_remez_bound(2, 0.0), ValidationError);

  CHECK(leading_coeff_bound(1, kTwoE) == doctest::Approx(1.0));
  CHECK(leading_coeff_bound(2, 1.0) == doctest::Approx(29.556).epsilon(1e-4));
  CHECK(leading_coeff_bound(0, 0.37) == doctest::Approx(1.0));
  CHECK_THROWS_AS(leading_coeff_bound(2, -2.0), ValidationError);
}

TEST_CASE("sigma") {
  CHECK(sigma(0.0, 0.0) == doctest::Approx(1.0));
  CHECK(sigma(0.5, 0.0) == doctest::Approx(9.0));
  for (double r : {0.1, 0.4, 0.8})
    for (double rp : {0.0, 0.3, 0.6})
      CHECK(sigma(r, rp) == doctest::Approx(sigma(rp, r)));
  CHECK_THROWS_AS(sigma(1.0, 0.5), ValidationError);
  CHECK_THROWS_AS(sigma(0.5, 1.2), ValidationError);
}

TEST_CASE("sp_remez_bound") {
  CHECK(sp_remez_bound(0, 3, 0.5, 0.5, 1.0) ==
        doctest::Approx(std::pow(sigma(0.5, 0.5), 3)));
  CHECK(sp_remez_bound(1, 0, 0.2, 0.3, kSixE) == doctest::Approx(1.0));
  CHECK(sp_remez_bound(1, 2, 0.5, 0.5, 1.0) ==
        doctest::Approx(81.0 * 81.0 * kSixE).epsilon(1e-12));
  CHECK(sp_remez_bound(1, 2, 0.5, 0.5, 1.0) ==
        doctest::Approx(1.0701e5).epsilon(1e-3));
}

TEST_CASE("bound monotonicity grids") {
  for (int d = 1; d <= 4; ++d)
    for (double c : {0.1, 0.5, 1.0, 4.0}) {
      CHECK(complex_remez_bound(d, c) > complex_remez_bound(d, c + 0.1));
      if (c < kSixE)
        CHECK(complex_remez_bound(d + 1, c) > complex_remez_bound(d, c));
    }
  for (int s = 0; s <= 3; ++s)
    for (int p = 0; p <= 3; ++p)
      for (double r : {0.2, 0.5})
        CHECK(sp_remez_bound(s + 1, p, r, r, 1.0) >=
              sp_remez_bound(s, p, r, r, 1.0));
  for (int p = 0; p <= 3; ++p)
    CHECK(sp_remez_bound(1, p + 1, 0.4, 0.4, 1.0) >
          sp_remez_bound(1, p, 0.4, 0.4, 1.0));
}

TEST_CASE("distortion_bounds") {
  auto z = distortion_bounds(3, 0.0);
  CHECK(z.lower == doctest::Approx(1.0));
  CHECK(z.upper == doctest::Approx(1.0));

  auto b = distortion_bounds(1, 0.5);
  CHECK(b.lower == doctest::Approx(1.0 / 9.0));
  CHECK(b.upper == doctest::Approx(9.0));

  auto p0 = distortion_bounds(0, 0.7);
  CHECK(p0.lower == doctest::Approx(1.0));
  CHECK(p0.upper == doctest::Approx(1.0));

  for (int p = 0; p <= 5; ++p)
    for (double rho : {0.0, 0.2, 0.5, 0.9}) {
      auto d = distortion_bounds(p, rho);
      CHECK(d.lower * d.upper == doctest::Approx(1.0).epsilon(1e-12));
    }
  CHECK_THROWS_AS(distortion_bounds(1, 1.0), ValidationError);
}

TEST_CASE("verify_polynomial_remez holds on seeded ensembles") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    auto rng = substream(77, s);
    int d = 1 + static_cast<int>(s % 4);
    PointSet Z;
    int n = d + 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i)
      Z.points.push_back(uniform_in_disk(rng, {0.0, 0.0}, 1.0));
    auto certs = verify_polynomial_remez(Z, d, 40, 1000 + s);
    REQUIRE(certs.size() == 40);
    for (const auto& c : certs) {
      CHECK(c.holds);
      CHECK(c.observed_ratio >= 1.0 - 1e-9);  // Z inside the unit disk
      CHECK(c.slack > 1.0);
    }
    auto sum = summarize(certs);
    CHECK(sum.violations == 0);
    CHECK(sum.min_slack > 1.0);
  }
}

TEST_CASE("verify_polynomial_remez spec example ratio") {
  // Z = {-0.5, 0, 0.5}, P = x^2: max_D1 = 1, max_Z = 0.25, ratio 4.
  PointSet Z{{{-0.5, 0}, {0, 0}, {0.5, 0}}, ""};
  Polynomial x2({{0, 0}, {0, 0}, {1, 0}});
  Disk unit{{0, 0}, 1.0};
  double ratio = max_modulus_on_disk(x2, unit).max_value /
                 max_on_points(x2, Z).max_value;
  CHECK(ratio == doctest::Approx(4.0).epsilon(1e-9));
  double c = c_d(Z, 2).value;
  CHECK(ratio <= complex_remez_bound(2, c));
  CHECK(complex_remez_bound(2, c) == doctest::Approx(std::pow(kSixE / 0.25, 2)));
}

TEST_CASE("verify_polynomial_remez validation") {
  PointSet small{{{0, 0}, {0.5, 0}}, ""};
  CHECK_THROWS_AS(verify_polynomial_remez(small, 2, 5, 0), ValidationError);
  PointSet outside{{{0, 0}, {0.5, 0}, {1.5, 0}}, ""};
  CHECK_THROWS_AS(verify_polynomial_remez(outside, 2, 5, 0), ValidationError);
  PointSet ok{{{0, 0}, {0.5, 0}, {-0.5, 0}}, ""};
  CHECK(verify_polynomial_remez(ok, 2, 0, 0).empty());
}

TEST_CASE("verify_leading_coeff holds and rescale identity") {
  auto rng = substream(78, 1);
  PointSet Z;
  for (int i = 0; i < 6; ++i)
    Z.points.push_back(uniform_in_disk(rng, {0.0, 0.0}, 1.0));
  auto certs = verify_leading_coeff(Z, 2, 50, 4321);
  for (const auto& c : certs) {
    CHECK(c.holds);
    CHECK(c.slack > 1.0);
  }

  // d = 1 hand check: monic x - 0.5 on Z = {0, 1} has max_Z = 0.5, so the
  // rescaled leading coefficient is 2 <= 2e / 0.5.
  PointSet pair{{{0, 0}, {1, 0}}, ""};
  Polynomial p({{-0.5, 0}, {1, 0}});
  double mz = max_on_points(p, pair).max_value;
  CHECK(mz == doctest::Approx(0.5));
  CHECK(1.0 / mz == doctest::Approx(2.0));
  CHECK(1.0 / mz <= leading_coeff_bound(1, c_d(pair, 1).value));
}

TEST_CASE("verify_cartan basic geometry") {
  // P = z, d = 1: sublevel set is the eps-disk, c_1(sample) <= eps <= 2e eps.
  Polynomial z({{0, 0}, {1, 0}});
  auto rep = verify_cartan(z, 0.1, 400, 5);
  CHECK(rep.holds);
  CHECK(rep.cd_of_sample <= 0.1 * (1 + 1e-9));
  CHECK(rep.cartan_bound == doctest::Approx(kTwoE * 0.1));
  for (Complex p : rep.sublevel_sample.points)
    CHECK(std::abs(z(p)) <= rep.level * (1 + 1e-12));

  // P = z^2 - 1/4: two components near +-1/2.
  Polynomial p2({{-0.25, 0}, {0, 0}, {1, 0}});
  auto rep2 = verify_cartan(p2, 0.05, 500, 6);
  CHECK(rep2.holds);
  for (Complex p : rep2.sublevel_sample.points)
    CHECK(std::abs(p2(p)) <= rep2.level * (1 + 1e-12));

  // P = z^d: sublevel set is exactly the eps-disk.
  Polynomial z3({{0, 0}, {0, 0}, {0, 0}, {1, 0}});
  auto rep3 = verify_cartan(z3, 0.2, 400, 7);
  CHECK(rep3.holds);
  CHECK(rep3.cd_of_sample <= 0.2 * (1 + 1e-6));
}

TEST_CASE("verify_cartan validation") {
  Polynomial nonmonic({{0, 0}, {2, 0}});
  CHECK_THROWS_AS(verify_cartan(nonmonic, 0.1, 10, 0), ValidationError);
  Polynomial z({{0, 0}, {1, 0}});
  CHECK_THROWS_AS(verify_cartan(z, 0.0, 10, 0), ValidationError);
}

TEST_CASE("harnesses are deterministic per seed") {
  PointSet Z{{{0.1, 0.2}, {-0.4, 0.1}, {0.3, -0.5}, {0.0, 0.6}}, ""};
  auto a = verify_polynomial_remez(Z, 2, 25, 99, Exec::Serial);
  auto b = verify_polynomial_remez(Z, 2, 25, 99, default_exec());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].observed_ratio == b[i].observed_ratio);
    CHECK(a[i].slack == b[i].slack);
  }
  auto c1 = verify_cartan(Polynomial({{-0.25, 0}, {0, 0}, {1, 0}}), 0.1, 300, 3,
                          Exec::Serial);
  auto c2 = verify_cartan(Polynomial({{-0.25, 0}, {0, 0}, {1, 0}}), 0.1, 300, 3,
                          default_exec());
  CHECK(c1.cd_of_sample == c2.cd_of_sample);
  REQUIRE(c1.sublevel_sample.size() == c2.sublevel_sample.size());
  for (std::size_t i = 0; i < c1.sublevel_sample.size(); ++i)
    CHECK(c1.sublevel_sample.points[i] == c2.sublevel_sample.points[i]);
}
