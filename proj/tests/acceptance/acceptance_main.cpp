// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#include "rmz/asymptotics.hpp"
#include "rmz/chains.hpp"
#include "rmz/covering.hpp"
#include "rmz/remez.hpp"
#include "rmz/rng.hpp"
#include "rmz/valence.hpp"

using namespace rmz;

namespace {

int failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", index,
              name, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

PointSet random_unit_disk_set(std::uint64_t seed, int n) {
  PointSet ps;
  auto rng = substream(seed, static_cast<std::uint64_t>(n), 0xacce);
  for (int i = 0; i < n; ++i)
    ps.points.push_back(uniform_in_disk(rng, {0.0, 0.0}, 1.0));
  return ps;
}

// Independent oracle: naive enumeration of all partitions into <= d blocks.
double naive_partition_cd(const std::vector<Complex>& pts, int d) {
  std::vector<std::vector<Complex>> blocks;
  double best = std::numeric_limits<double>::infinity();
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == pts.size()) {
      double total = 0.0;
      for (const auto& b : blocks)
        total += min_enclosing_disk(std::span<const Complex>(b)).radius;
      best = std::min(best, total);
      return;
    }
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      blocks[bi].push_back(pts[i]);
      self(self, i + 1);
      blocks[bi].pop_back();
    }
    if (static_cast<int>(blocks.size()) < d) {
      blocks.push_back({pts[i]});
      self(self, i + 1);
      blocks.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

void criterion_1_sandwich() {
  auto t0 = std::chrono::steady_clock::now();
  int checked = 0, bad = 0;
  for (int set_id = 0; set_id < 200; ++set_id) {
    auto rng = substream(101, set_id);
    int n = 3 + static_cast<int>(rng() % 8);  // 3..10
    auto Z = random_unit_disk_set(1000 + set_id, n);
    auto profile = covering_profile(Z);
    for (int d = 1; d <= 4; ++d) {
      auto cd = c_d(Z, d, CdMode::Exact);
      if (!cd.exact) ++bad;
      double lo = omega_cd(profile, d) / 4.0;
      double hi = rho_d(profile, d).rho;
      if (!(lo <= cd.value + 1e-9 && cd.value <= hi + 1e-9)) ++bad;
      ++checked;
    }
  }
  double elapsed = seconds_since(t0);
  char detail[128];
  std::snprintf(detail, sizeof detail, "%d checks, %d violations, %.1fs",
                checked, bad, elapsed);
  report(1, "sandwich omega_cd/4 <= c_d <= rho_d", bad == 0 && elapsed < 60.0,
         detail);
}

void criterion_2_prop21() {
  int bad = 0, checked = 0;
  for (int set_id = 0; set_id < 100; ++set_id) {
    auto rng = substream(102, set_id);
    int n = 2 + static_cast<int>(rng() % 7);
    auto Z = random_unit_disk_set(2000 + set_id, n);
    if (set_id % 2 == 0) {
      // forced duplicates
      Z.points.push_back(Z.points.front());
      if (n > 2) Z.points.push_back(Z.points[1]);
    }
    int n_dedup = static_cast<int>(Z.deduplicated().size());
    for (int d = 1; d <= n_dedup + 2; ++d) {
      double v = c_d(Z, d, CdMode::Exact).value;
      bool want_zero = n_dedup <= d;
      if (want_zero != (v == 0.0)) ++bad;
      ++checked;
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "%d checks, %d violations", checked,
                bad);
  report(2, "c_d = 0 iff |dedup Z| <= d", bad == 0, detail);
}

void criterion_3_oracle() {
  int bad = 0, checked = 0;
  for (int set_id = 0; set_id < 50; ++set_id) {
    auto rng = substream(103, set_id);
    int n = 3 + static_cast<int>(rng() % 6);  // <= 8
    auto Z = random_unit_disk_set(3000 + set_id, n);
    for (int d = 1; d <= 4; ++d) {
      double expect = naive_partition_cd(Z.points, d);
      double got = c_d(Z, d, CdMode::Exact).value;
      if (std::abs(got - expect) > 1e-9) ++bad;
      ++checked;
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "%d checks, %d violations", checked,
                bad);
  report(3, "exact c_d equals naive partition enumeration", bad == 0, detail);
}

void criterion_4_remez() {
  int violations = 0, trials = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (int ensemble = 0; ensemble < 50; ++ensemble) {
    auto rng = substream(104, ensemble);
    int d = 1 + static_cast<int>(rng() % 5);
    int n = d + 1 + static_cast<int>(rng() % 6);
    auto Z = random_unit_disk_set(4000 + ensemble, n);
    auto certs = verify_polynomial_remez(Z, d, 20, 4500 + ensemble);
    for (const auto& c : certs) {
      if (!c.holds) ++violations;
      min_slack = std::min(min_slack, c.slack);
      ++trials;
    }
  }
  char detail[128];
  std::snprintf(detail, sizeof detail,
                "%d trials, %d violations, min slack %.3g", trials, violations,
                min_slack);
  report(4, "polynomial bound certification", violations == 0 && trials == 1000 &&
             min_slack > 1.0, detail);
}

void criterion_5_leading() {
  int violations = 0, trials = 0;
  for (int ensemble = 0; ensemble < 50; ++ensemble) {
    auto rng = substream(105, ensemble);
    int d = 1 + static_cast<int>(rng() % 5);
    int n = d + 1 + static_cast<int>(rng() % 6);
    auto Z = random_unit_disk_set(5000 + ensemble, n);
    auto certs = verify_leading_coeff(Z, d, 20, 5500 + ensemble);
    for (const auto& c : certs) {
      if (!c.holds) ++violations;
      ++trials;
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "%d trials, %d violations", trials,
                violations);
  report(5, "leading-coefficient bound certification",
         violations == 0 && trials == 1000, detail);
}

void criterion_6_cartan() {
  auto t0 = std::chrono::steady_clock::now();
  int violations = 0, runs = 0;
  for (int poly_id = 0; poly_id < 200; ++poly_id) {
    auto rng = substream(106, poly_id);
    int d = 1 + static_cast<int>(rng() % 4);
    std::vector<Complex> coeffs(d + 1);
    for (int k = 0; k < d; ++k) coeffs[k] = complex_gaussian(rng);
    coeffs[d] = Complex(1, 0);
    Polynomial P(coeffs);
    for (double eps : {0.05, 0.1, 0.2}) {
      auto rep = verify_cartan(P, eps, 2000, 6000 + poly_id);
      if (!rep.holds) ++violations;
      ++runs;
    }
  }
  double elapsed = seconds_since(t0);
  char detail[128];
  std::snprintf(detail, sizeof detail, "%d runs, %d violations, %.1fs", runs,
                violations, elapsed);
  report(6, "Cartan sublevel covering bound",
         violations == 0 && elapsed < 120.0, detail);
}

void criterion_7_asymptotics() {
  std::vector<int> ds{8, 16, 32, 64, 128};
  auto rows = zr_table({1, 2}, ds);
  auto fits = fit_slopes(rows);
  double s1d = 0, s1cd = 0, s2d = 0, s2cd = 0;
  for (const auto& f : fits) {
    if (f.r == 1) {
      s1d = f.omega_d_slope;
      s1cd = f.omega_cd_slope;
    } else if (f.r == 2) {
      s2d = f.omega_d_slope;
      s2cd = f.omega_cd_slope;
    }
  }
  bool ok = std::abs(s1d - (-1.0)) <= 0.15 && std::abs(s2d - (-2.0)) <= 0.2 &&
            std::abs(s1cd - (-1.5)) <= 0.2 && std::abs(s2cd - (-2.5)) <= 0.2;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "omega_d slopes %.3f/%.3f (want -1/-2), omega_cd %.3f/%.3f "
                "(want -1.5/-2.5)",
                s1d, s2d, s1cd, s2cd);
  report(7, "Z_r asymptotic exponents", ok, detail);
}

void criterion_8_lemma31() {
  auto f = power_sum_example(2, 21);
  bool ok = true;
  int max_seen = 0;
  for (int s = 0; s <= 1; ++s) {
    auto rep = probe_valence(*f, f->domain(), s, 200, 8100 + s);
    max_seen = std::max(max_seen, rep.max_count);
    if (rep.max_count > 2) ok = false;
  }
  Polynomial witness({{1e-12, 0}, {0, 0}, {1, 0}});  // x^2 + 1e-12
  int count = count_against(*f, witness);
  char detail[96];
  std::snprintf(detail, sizeof detail,
                "max count %d (<= 2), injected witness count %d (want 21)",
                max_seen, count);
  report(8, "power-sum valence (s <= 1) and N-valent witness",
         ok && count == 21, detail);
}

void criterion_9_argument_oracle() {
  int done = 0, bad = 0;
  std::uint64_t attempt = 0;
  while (done < 100 && attempt < 3000) {
    auto rng = substream(109, attempt++);
    int degf = 2 + static_cast<int>(rng() % 7);
    int degp = static_cast<int>(rng() % degf);
    std::vector<Complex> fc(degf + 1), pc(degp + 1);
    for (auto& c : fc) c = complex_gaussian(rng);
    for (auto& c : pc) c = complex_gaussian(rng);
    while (std::abs(fc.back()) < 1e-2) fc.back() = complex_gaussian(rng);
    Polynomial f(fc), P(pc);
    Polynomial diff = f - P;
    if (diff.degree() < 1) continue;
    Disk disk{{0, 0}, 0.9 + 0.3 * (attempt % 2)};
    bool near_boundary = false;
    int inside = 0;
    for (Complex r : find_roots(diff)) {
      if (std::abs(std::abs(r - disk.center) - disk.radius) <
          0.05 * disk.radius)
        near_boundary = true;
      if (std::abs(r - disk.center) < disk.radius) ++inside;
    }
    if (near_boundary) continue;
    PolynomialMap fm(f, disk);
    if (count_solutions(fm, P, disk) != inside) ++bad;
    ++done;
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "%d pairs, %d disagreements", done, bad);
  report(9, "argument-principle count equals root-finder count",
         bad == 0 && done == 100, detail);
}

void criterion_10_curve_engine() {
  auto curve = std::make_shared<Curve>(BivariatePolynomial::from_terms(
      {{2, 0, {1, 0}}, {0, 1, {-1, 0}}}));  // y^2 - x
  bool ok = true;
  std::string note;

  const auto& locus = curve->singular_locus();
  if (locus.points.size() != 1 || std::abs(locus.points[0]) > 1e-9) {
    ok = false;
    note += "sigma wrong; ";
  }
  long d = curve->degree();
  if (static_cast<long>(locus.points.size()) > 2 * d * d) {
    ok = false;
    note += "sigma bound; ";
  }
  auto act = curve->monodromy({1, 0});
  if (act.generators.size() != 1 ||
      act.generators[0].permutation != std::vector<int>{1, 0}) {
    ok = false;
    note += "monodromy not a transposition; ";
  }

  // Fiber/continuation round trips.
  auto germ = curve->germ_at({1, 0}, 1);
  auto there = curve->continue_along(germ, {{1, 0}, {4, 0}});
  auto back = curve->continue_along(there, {{4, 0}, {1, 0}});
  if (std::abs(back.y_value - germ.y_value) > 1e-8) {
    ok = false;
    note += "out-and-back drift; ";
  }
  std::vector<Complex> loop;
  for (int k = 0; k <= 72; ++k)
    loop.push_back(Complex(3, 0) +
                   std::polar(1.0, 2 * std::numbers::pi * k / 72.0));
  auto looped = curve->continue_along(there, loop);
  if (std::abs(looped.y_value - there.y_value) > 1e-8) {
    ok = false;
    note += "non-enclosing loop drift; ";
  }

  // Implicit derivative vs finite differences at 100 points.
  auto rng = substream(110, 0);
  int checked = 0, fd_bad = 0;
  while (checked < 100) {
    Complex x = uniform_in_disk(rng, {2.5, 0}, 1.2);
    if (curve->safe_radius(x) < 0.4) continue;
    for (Complex y : curve->fiber(x)) {
      Complex hp = curve->implicit_derivative(x, y);
      const double h = 1e-6;
      auto g = curve->continue_along(BranchGerm{x, y, 0}, {x, x + Complex(h, 0)});
      Complex fd = (g.y_value - y) / h;
      if (std::abs(fd - hp) > 1e-4 * std::max(1.0, std::abs(hp))) ++fd_bad;
      ++checked;
    }
  }
  if (fd_bad > 0) {
    ok = false;
    note += "implicit derivative mismatch; ";
  }
  char detail[160];
  std::snprintf(detail, sizeof detail, "%s(%d derivative checks)",
                note.c_str(), checked);
  report(10, "curve engine on y^2 - x", ok, detail);
}

void criterion_11_local() {
  auto curve = std::make_shared<Curve>(BivariatePolynomial::from_terms(
      {{2, 0, {1, 0}}, {0, 1, {-1, 0}}}));
  PointSet Z;
  auto rng = substream(111, 0);
  for (int i = 0; i < 20; ++i)
    Z.points.push_back(uniform_in_disk(rng, {1, 0}, 0.3));
  auto germ = curve->germ_at({1, 0}, 1);
  int violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 100; ++trial) {
    auto prng = substream(111, trial, 0x501u);
    std::vector<BivariateTerm> terms;
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; i + j <= 2; ++j)
        terms.push_back({i, j, complex_gaussian(prng)});
    auto P = BivariatePolynomial::from_terms(terms);
    auto cert = verify_local_remez(curve, P, germ, Z, 0.3, 0.5, 1100 + trial);
    if (!cert.holds) ++violations;
    min_slack = std::min(min_slack, cert.slack);
  }
  char detail[96];
  std::snprintf(detail, sizeof detail,
                "100 polynomials, %d violations, min slack %.3g", violations,
                min_slack);
  report(11, "local curve bound certification", violations == 0, detail);
}

void criterion_12_global() {
  auto curve = std::make_shared<Curve>(BivariatePolynomial::from_terms(
      {{2, 0, {1, 0}}, {0, 1, {-1, 0}}}));
  PointSet Z;
  auto rng = substream(112, 0);
  for (int i = 0; i < 8; ++i)
    Z.points.push_back(uniform_in_disk(rng, {1, 0}, 0.2));
  auto cfg = make_configuration(curve, 2, Z, {1, 0}, /*hat*/ 1, /*bar*/ 0);
  bool ok = true;
  std::string note;
  int violations = 0;
  double max_residual = 0.0;
  try {
    auto res = search_chain(cfg, 1201);
    if (!validate_chain(*curve, res.chain, &cfg).ok()) {
      ok = false;
      note = "chain invalid";
    }
    auto precomputed = chain_constant(*curve, res.chain, curve->degree(),
                                      cfg.poly_degree_d1, false, 1202);
    for (int trial = 0; trial < 50; ++trial) {
      auto prng = substream(112, trial, 0x502u);
      std::vector<BivariateTerm> terms;
      for (int i = 0; i <= 2; ++i)
        for (int j = 0; i + j <= 2; ++j)
          terms.push_back({i, j, complex_gaussian(prng)});
      auto P = BivariatePolynomial::from_terms(terms);
      auto cert =
          verify_global_remez(cfg, P, res.chain, 1300 + trial, &precomputed);
      if (!cert.holds) ++violations;
      max_residual = std::max(max_residual, cert.composition_residual);
    }
  } catch (const std::exception& e) {
    ok = false;
    note = e.what();
  }
  if (violations > 0) ok = false;
  if (max_residual > 1e-9) ok = false;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "50 polynomials, %d violations, composition residual %.2e %s",
                violations, max_residual, note.c_str());
  report(12, "global branch-flip certification", ok, detail);
}

void criterion_13_budget() {
  auto curve = std::make_shared<Curve>(BivariatePolynomial::from_terms(
      {{2, 0, {1, 0}}, {0, 1, {-1, 0}}}));
  bool ok = true;
  int worst = 0, budget_hit = 0;
  for (int d1 = 1; d1 <= 2; ++d1) {
    auto prng = substream(113, d1);
    std::vector<BivariateTerm> terms;
    for (int i = 0; i <= d1; ++i)
      for (int j = 0; i + j <= d1; ++j)
        terms.push_back({i, j, complex_gaussian(prng)});
    auto P = BivariatePolynomial::from_terms(terms);
    auto germ = curve->germ_at({1, 0}, d1 % 2);
    auto map = branch_restriction(curve, germ, P, Disk{{1, 0}, 0.6});
    auto rep = probe_valence(*map, map->domain(), 2, 100, 1300 + d1);
    int budget = map->valence_budget(2);  // covers s <= 2 by nesting
    worst = std::max(worst, rep.max_count);
    budget_hit = std::max(budget_hit, budget);
    if (rep.max_count > budget) ok = false;
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "max observed %d, budget %d", worst,
                budget_hit);
  report(13, "branch restriction valence stays within d*max(s,d1)", ok,
         detail);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion_1_sandwich();
  criterion_2_prop21();
  criterion_3_oracle();
  criterion_4_remez();
  criterion_5_leading();
  criterion_6_cartan();
  criterion_7_asymptotics();
  criterion_8_lemma31();
  criterion_9_argument_oracle();
  criterion_10_curve_engine();
  criterion_11_local();
  criterion_12_global();
  criterion_13_budget();
  std::printf("%d/13 criteria passed (%.1fs total)\n", 13 - failures,
              seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
