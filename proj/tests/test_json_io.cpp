#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rmz/json_io.hpp"
#include "rmz/rng.hpp"

using namespace rmz;

TEST_CASE("point set round trip") {
  auto rng = substream(61, 0);
  PointSet ps;
  ps.label = "sample";
  for (int i = 0; i < 20; ++i)
    ps.points.push_back(uniform_in_disk(rng, {0.3, -0.2}, 2.0));
  auto j = to_json(ps);
  auto back = pointset_from_json(j);
  REQUIRE(back.size() == ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i)
    CHECK(back.points[i] == ps.points[i]);
  CHECK(back.label == "sample");
}

TEST_CASE("polynomial and bivariate round trips") {
  auto rng = substream(62, 0);
  std::vector<Complex> coeffs(7);
  for (auto& c : coeffs) c = complex_gaussian(rng);
  Polynomial p(coeffs);
  auto back = polynomial_from_json(to_json(p));
  REQUIRE(back.degree() == p.degree());
  for (int k = 0; k <= p.degree(); ++k) CHECK(back.coeff(k) == p.coeff(k));

  auto q = BivariatePolynomial::from_terms(
      {{2, 0, {1, 0}}, {1, 1, {0.25, -0.5}}, {0, 1, {-1, 0}}});
  auto qb = bivariate_from_json(to_json(q));
  CHECK(qb.deg_y() == q.deg_y());
  Complex x(0.3, 0.7), y(-0.2, 0.4);
  CHECK(std::abs(qb.eval(x, y) - q.eval(x, y)) < 1e-15);
}

TEST_CASE("dump is deterministic with 17 significant digits") {
  ordered_json j;
  j["value"] = 0.1 + 0.2;
  j["third"] = 1.0 / 3.0;
  j["neg"] = -1234.5678901234567;
  j["int"] = 42;
  std::string a = dump_json(j);
  std::string b = dump_json(j);
  CHECK(a == b);
  CHECK(a.find("0.30000000000000004") != std::string::npos);
  CHECK(a.find("0.33333333333333331") != std::string::npos);
  CHECK(a.find("\"int\": 42") != std::string::npos);

  // Round trip preserves the exact double.
  auto parsed = ordered_json::parse(a);
  CHECK(parsed["value"].get<double>() == j["value"].get<double>());
  CHECK(parsed["third"].get<double>() == j["third"].get<double>());
}

TEST_CASE("malformed inputs raise validation errors") {
  CHECK_THROWS_AS(pointset_from_json(ordered_json::object()), ValidationError);
  CHECK_THROWS_AS(complex_from_json(ordered_json::array({1.0})),
                  ValidationError);
  ordered_json bad;
  bad["deg_y"] = 3;
  bad["terms"] = ordered_json::array(
      {ordered_json{{"ypow", 1}, {"xpow", 0}, {"re", 1.0}, {"im", 0.0}}});
  CHECK_THROWS_AS(bivariate_from_json(bad), ValidationError);
}

TEST_CASE("report serializers carry all fields") {
  PointSet ps{{{0, 0}, {0.5, 0}, {-0.5, 0}, {0, 0.5}}, ""};
  auto rep = invariant_report(ps, 2);
  auto j = to_json(rep);
  for (const char* key : {"d", "c_d", "c_d_is_exact", "rho_d", "omega_cd",
                          "omega_d", "epsilon0", "witness_covering", "mu2"})
    CHECK(j.contains(key));

  auto certs = verify_polynomial_remez(ps, 2, 3, 5);
  auto cj = to_json(certs, summarize(certs));
  CHECK(cj["certificates"].size() == 3);
  CHECK(cj["summary"].contains("min_slack"));
}
