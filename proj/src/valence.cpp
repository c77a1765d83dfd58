#include "rmz/valence.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "rmz/errors.hpp"
#include "rmz/remez.hpp"
#include "rmz/rng.hpp"

namespace rmz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Contour {
  Complex center;
  double radius;
};

// Find a contour on which f - P stays away from zero; shrink by 1% up to
// five times before giving up.
Contour admissible_contour(const AnalyticMap& f, const Polynomial& P,
                           Disk disk) {
  double r = disk.radius;
  for (int attempt = 0; attempt <= 5; ++attempt) {
    double minv = std::numeric_limits<double>::infinity();
    double maxv = 0.0;
    const int n = 512;
    for (int k = 0; k < n; ++k) {
      Complex z = disk.center + std::polar(r, kTwoPi * k / n);
      double v = std::abs(f.value(z) - P(z));
      minv = std::min(minv, v);
      maxv = std::max(maxv, v);
    }
    if (maxv > 0.0 && minv >= 1e-8 * maxv) return {disk.center, r};
    r *= 0.99;
  }
  throw ComputationError("zero on contour of |f - P|");
}

}  // namespace

int count_solutions(const AnalyticMap& f, const Polynomial& P, Disk disk,
                    Exec exec) {
  if (disk.radius <= 0.0) throw ValidationError("disk radius must be positive");
  Contour c = admissible_contour(f, P, disk);
  Polynomial dP = P.derivative();
  auto integrand = [&](double theta) {
    Complex z = c.center + std::polar(c.radius, theta);
    Complex denom = f.value(z) - P(z);
    Complex num = f.derivative(z) - dP(z);
    return num / denom * (z - c.center);
  };

  const long start = 256;
  const long cap = 1 << 20;
  Complex sum(0, 0);
  std::vector<Complex> vals;
  map_index(exec, static_cast<std::size_t>(start), vals,
            [&](std::size_t k) { return integrand(kTwoPi * k / start); });
  for (Complex v : vals) sum += v;
  Complex prev_integral(1e9, 0);
  long n = start;
  while (n <= cap) {
    Complex integral = sum / static_cast<double>(n);
    double round_re = std::round(integral.real());
    double residual = std::abs(integral - Complex(round_re, 0.0));
    double stability = std::abs(integral - prev_integral);
    if (residual <= 0.05 && stability <= 0.05) {
      if (round_re < -0.5)
        throw ComputationError("argument-principle integration failed");
      return static_cast<int>(round_re);
    }
    prev_integral = integral;
    // Double the grid: add the odd-indexed nodes of the 2n grid.
    map_index(exec, static_cast<std::size_t>(n), vals, [&](std::size_t k) {
      return integrand(kTwoPi * (2.0 * k + 1.0) / (2.0 * n));
    });
    for (Complex v : vals) sum += v;
    n *= 2;
  }
  Complex integral = prev_integral;
  double round_re = std::round(integral.real());
  if (std::abs(integral - Complex(round_re, 0.0)) <= 0.1 && round_re >= 0)
    return static_cast<int>(round_re);
  throw ComputationError("argument-principle integration failed");
}

ValenceReport probe_valence(const AnalyticMap& f, Disk disk, int s, int trials,
                            std::uint64_t seed, Exec exec) {
  if (s < 0) throw ValidationError("s must be >= 0");
  if (trials < 0) throw ValidationError("trials must be >= 0");
  ValenceReport rep;
  rep.s = s;
  rep.domain = disk;
  rep.trials = trials;

  double scale =
      boundary_max([&](Complex z) { return f.value(z); }, disk, 1024,
                   Exec::Serial)
          .max_value;
  if (scale <= 0.0) scale = 1.0;

  struct TrialOutcome {
    std::vector<std::pair<int, Polynomial>> counts;
    int failures = 0;
    std::string first_failure;
  };
  std::vector<TrialOutcome> outcomes;
  map_index(exec, static_cast<std::size_t>(trials), outcomes,
            [&](std::size_t t) {
              TrialOutcome out;
              std::vector<Complex> coeffs(s + 1);
              for (int k = 0; k <= s; ++k) {
                auto rng = substream(seed, t, static_cast<std::uint64_t>(k));
                coeffs[k] = scale * complex_gaussian(rng);
              }
              // Evaluate every degree truncation so reports are nested in s.
              for (int cap = 0; cap <= s; ++cap) {
                Polynomial trial(std::vector<Complex>(
                    coeffs.begin(), coeffs.begin() + cap + 1));
                try {
                  int cnt = count_solutions(f, trial, disk, Exec::Serial);
                  out.counts.emplace_back(cnt, std::move(trial));
                } catch (const ComputationError& e) {
                  ++out.failures;
                  if (out.first_failure.empty()) out.first_failure = e.what();
                }
              }
              return out;
            });
  for (const auto& out : outcomes) {
    rep.failed_trials += out.failures;
    if (rep.first_failure.empty() && !out.first_failure.empty())
      rep.first_failure = out.first_failure;
    for (const auto& [cnt, poly] : out.counts) {
      bool first = rep.counts_histogram.empty();
      rep.counts_histogram[cnt]++;
      if (first || cnt > rep.max_count) {
        rep.max_count = cnt;
        rep.witness_poly = poly;
      }
    }
  }
  return rep;
}

int count_against(const AnalyticMap& f, const Polynomial& P, Exec exec) {
  return count_solutions(f, P, f.domain(), exec);
}

namespace {

Complex ipow(Complex x, int n) {
  Complex acc(1, 0);
  Complex base = x;
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) acc *= base;
    base *= base;
  }
  return acc;
}

}  // namespace

std::shared_ptr<AnalyticMap> power_sum_example(int p, int N) {
  if (p < 1 || N <= p) throw ValidationError("need N > p >= 1");
  if (N < 10 * p + 1)
    std::fprintf(stderr,
                 "warning: power-sum example with N=%d < 10p+1=%d; the valence "
                 "guarantee may not apply\n",
                 N, 10 * p + 1);
  Disk dom{{0.0, 0.0}, 1.0 / 3.0};
  std::vector<Complex> zeros(p, Complex(0.0, 0.0));
  char desc[64];
  std::snprintf(desc, sizeof desc, "x^%d + x^%d on D_(1/3)", p, N);
  return std::make_shared<CallableMap>(
      [p, N](Complex x) { return ipow(x, p) + ipow(x, N); },
      [p, N](Complex x) {
        return static_cast<double>(p) * ipow(x, p - 1) +
               static_cast<double>(N) * ipow(x, N - 1);
      },
      dom, desc, zeros);
}

DistortionReport verify_distortion(const AnalyticMap& f,
                                   const std::vector<Complex>& s_zeros, int p,
                                   int n_samples, std::uint64_t seed,
                                   Exec exec) {
  if (p < 0) throw ValidationError("p must be >= 0");
  if (n_samples < 1) throw ValidationError("need at least one sample");

  auto prod_zero_factors = [&](Complex x) {
    Complex acc(1, 0);
    for (Complex z : s_zeros) acc *= (x - z);
    return acc;
  };
  // Normalizing constant: phi = f / prod(x - x_j) is regular on the unit
  // disk, and its mean over a small origin-centered circle is phi(0).
  double radius = 0.1;
  auto near_circle = [&](double r) {
    for (Complex z : s_zeros)
      if (std::abs(std::abs(z) - r) < 1e-3) return true;
    return false;
  };
  while (near_circle(radius) && radius < 0.2) radius *= 1.07;
  const int nodes = 512;
  Complex a(0, 0);
  for (int k = 0; k < nodes; ++k) {
    Complex z = std::polar(radius, kTwoPi * k / nodes);
    a += f.value(z) / prod_zero_factors(z);
  }
  a /= static_cast<double>(nodes);
  if (std::abs(a) < 1e-300)
    throw ValidationError("normalization failed: constant term vanishes");

  // The declared zero list must account for every zero of f: compare with
  // the argument-principle count just inside the domain boundary.
  Disk dom = f.domain();
  Disk check{dom.center, 0.999 * dom.radius};
  int zero_count = count_solutions(f, Polynomial(), check, exec);
  if (zero_count != static_cast<int>(s_zeros.size()))
    throw ValidationError("unlisted zero of f detected");

  DistortionReport rep;
  rep.p = p;
  rep.n_samples = n_samples;
  rep.normalizing_a = a;

  // No throwing from inside the parallel region; flag suspicious samples and
  // report them afterwards.
  std::vector<std::pair<double, double>> margins;
  const double kZeroFlag = -std::numeric_limits<double>::infinity();
  map_index(exec, static_cast<std::size_t>(n_samples), margins,
            [&](std::size_t i) -> std::pair<double, double> {
              auto rng = substream(seed, i, 0xd157u);
              Complex x = uniform_in_disk(rng, {0.0, 0.0}, 0.999);
              for (Complex z : s_zeros)
                if (std::abs(x - z) < 1e-8) x += Complex(2e-6, 1e-6);
              double rho = std::abs(x);
              auto b = distortion_bounds(p, rho);
              double g = std::abs(f.value(x) / (a * prod_zero_factors(x)));
              if (g < b.lower * 1e-6) return {kZeroFlag, kZeroFlag};
              return {b.upper - g, g - b.lower};
            });
  rep.min_upper_margin = std::numeric_limits<double>::infinity();
  rep.min_lower_margin = std::numeric_limits<double>::infinity();
  for (auto [up, lo] : margins) {
    if (up == kZeroFlag)
      throw ValidationError("unlisted zero of f detected");
    rep.min_upper_margin = std::min(rep.min_upper_margin, up);
    rep.min_lower_margin = std::min(rep.min_lower_margin, lo);
  }
  rep.holds = rep.min_upper_margin >= -1e-9 && rep.min_lower_margin >= -1e-9;
  return rep;
}

}  // namespace rmz
