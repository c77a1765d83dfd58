#include "rmz/remez.hpp"

#include <cmath>

#include "rmz/rng.hpp"

namespace rmz {

double real_remez_bound(int d, double omega) {
  if (d < 0) throw ValidationError("degree must be >= 0");
  if (omega <= 0.0) throw ValidationError("invariant must be positive");
  if (omega > 2.0) throw ValidationError("invariant must be at most 2");
  return chebyshev_value(d, (4.0 - omega) / omega);
}

double complex_remez_bound(int d, double c) {
  if (d < 0) throw ValidationError("degree must be >= 0");
  if (c <= 0.0) throw ValidationError("covering invariant must be positive");
  return std::pow(kSixE / c, d);
}

double leading_coeff_bound(int d, double c) {
  if (d < 0) throw ValidationError("degree must be >= 0");
  if (c <= 0.0) throw ValidationError("covering invariant must be positive");
  return std::pow(kTwoE / c, d);
}

double sigma(double R, double Rp) {
  if (R < 0.0 || Rp < 0.0) throw ValidationError("radii must be nonnegative");
  if (R >= 1.0 || Rp >= 1.0) throw ValidationError("radii must be < 1");
  double v = (1.0 + R) * (1.0 + Rp) / ((1.0 - R) * (1.0 - Rp));
  return v * v;
}

double sp_remez_bound(int s, int p, double R, double Rp, double c) {
  if (s < 0 || p < 0) throw ValidationError("s and p must be >= 0");
  if (c <= 0.0) throw ValidationError("covering invariant must be positive");
  return std::pow(sigma(R, Rp), p) * std::pow(kSixE / c, s);
}

DistortionBounds distortion_bounds(int p, double rho) {
  if (p < 0) throw ValidationError("p must be >= 0");
  if (rho < 0.0 || rho >= 1.0) throw ValidationError("rho must be in [0, 1)");
  double up = std::pow((1.0 + rho) / (1.0 - rho), 2.0 * p);
  return {1.0 / up, up};
}

HarnessSummary summarize(const std::vector<RemezCertificate>& certs) {
  HarnessSummary s;
  s.trials = static_cast<int>(certs.size());
  if (certs.empty()) return s;
  double total = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : certs) {
    if (!c.holds) ++s.violations;
    total += c.slack;
    if (c.slack < best) {
      best = c.slack;
      s.tightest_witness = c.witness_poly;
    }
  }
  s.min_slack = best;
  s.mean_slack = total / certs.size();
  return s;
}

namespace {

void validate_harness_input(const PointSet& Z, int d) {
  if (d < 1) throw ValidationError("degree must be >= 1");
  for (Complex z : Z.points)
    if (std::abs(z) > 1.0 + 1e-12)
      throw ValidationError("point set must lie in the closed unit disk");
  if (Z.deduplicated().size() <= static_cast<std::size_t>(d))
    throw ValidationError("c_d vanishes (Prop 2.1): need more than d points");
}

Polynomial random_poly_exact_degree(std::mt19937_64& rng, int d) {
  std::vector<Complex> coeffs(d + 1);
  for (auto& c : coeffs) c = complex_gaussian(rng);
  while (std::abs(coeffs[d]) < 1e-6) coeffs[d] = complex_gaussian(rng);
  return Polynomial(std::move(coeffs));
}

}  // namespace

std::vector<RemezCertificate> verify_polynomial_remez(const PointSet& Z, int d,
                                                      int trials,
                                                      std::uint64_t seed,
                                                      Exec exec) {
  validate_harness_input(Z, d);
  if (trials < 0) throw ValidationError("trials must be >= 0");
  double c = c_d_lower_bound(Z, d, seed);
  double bound = complex_remez_bound(d, c);
  const Disk unit{{0.0, 0.0}, 1.0};
  std::vector<RemezCertificate> certs;
  // Trials are cheap relative to the disk scan inside each one; parallelize
  // per trial, serial scans inside.
  map_index(exec, static_cast<std::size_t>(trials), certs, [&](std::size_t t) {
    auto rng = substream(seed, t);
    RemezCertificate cert;
    cert.d = d;
    cert.c = c;
    cert.bound = bound;
    cert.witness_poly = random_poly_exact_degree(rng, d);
    double num = max_modulus_on_disk(cert.witness_poly, unit, Exec::Serial).max_value;
    double den = max_on_points(cert.witness_poly, Z).max_value;
    cert.observed_ratio = num / den;
    cert.holds = cert.observed_ratio <= bound * (1.0 + 1e-9);
    cert.slack = bound / cert.observed_ratio;
    return cert;
  });
  return certs;
}

std::vector<LeadingCoeffCertificate> verify_leading_coeff(const PointSet& Z,
                                                          int d, int trials,
                                                          std::uint64_t seed,
                                                          Exec exec) {
  validate_harness_input(Z, d);
  if (trials < 0) throw ValidationError("trials must be >= 0");
  double c = c_d_lower_bound(Z, d, seed);
  double bound = leading_coeff_bound(d, c);
  std::vector<LeadingCoeffCertificate> certs;
  map_index(exec, static_cast<std::size_t>(trials), certs, [&](std::size_t t) {
    auto rng = substream(seed, t, 0x11c0u);
    std::vector<Complex> coeffs(d + 1);
    for (int k = 0; k < d; ++k) coeffs[k] = complex_gaussian(rng);
    coeffs[d] = Complex(1.0, 0.0);  // monic
    Polynomial p(std::move(coeffs));
    double mz = max_on_points(p, Z).max_value;
    LeadingCoeffCertificate cert;
    cert.d = d;
    cert.c = c;
    cert.bound = bound;
    cert.witness_poly = p;
    cert.rescaled_leading = 1.0 / mz;  // leading coeff after forcing max_Z = 1
    cert.holds = cert.rescaled_leading <= bound * (1.0 + 1e-9);
    cert.slack = bound / cert.rescaled_leading;
    return cert;
  });
  return certs;
}

CartanReport verify_cartan(const Polynomial& P, double eps, int n_samples,
                           std::uint64_t seed, Exec exec) {
  if (P.degree() < 1) throw ValidationError("polynomial must have degree >= 1");
  if (std::abs(P.leading_coeff() - Complex(1.0, 0.0)) > 1e-9)
    throw ValidationError("polynomial must be monic");
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  if (n_samples < 0) throw ValidationError("sample count must be >= 0");

  const int d = P.degree();
  const double level = std::pow(eps, d);
  CartanReport rep;
  rep.eps = eps;
  rep.level = level;
  rep.cartan_bound = kTwoE * eps;

  auto roots = find_roots(P);
  // If |P(z)| <= eps^d for monic P then min_j |z - root_j| <= eps, so the
  // sublevel set lives in the union of the eps-disks around the roots. Each
  // sample walks a ray from a root to the first level crossing and lands at a
  // verified sublevel point; the roots themselves are always members.
  std::vector<Complex> pts;
  map_index(exec, static_cast<std::size_t>(n_samples), pts, [&](std::size_t i) {
    if (i < roots.size()) return roots[i];
    auto rng = substream(seed, i, 0xca27u);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    Complex root = roots[i % roots.size()];
    Complex dir = std::polar(1.0, 2.0 * std::numbers::pi * u01(rng));
    const int steps = 64;
    double t_edge = eps;
    for (int sjj = 1; sjj <= steps; ++sjj) {
      double t = eps * static_cast<double>(sjj) / steps;
      if (std::abs(P(root + t * dir)) > level) {
        t_edge = eps * static_cast<double>(sjj - 1) / steps;
        break;
      }
    }
    double frac = std::sqrt(u01(rng));
    Complex cand = root + frac * t_edge * dir;
    for (int shrink = 0; shrink < 12; ++shrink) {
      if (std::abs(P(cand)) <= level * (1.0 + 1e-12)) return cand;
      cand = root + 0.5 * (cand - root);
    }
    return root;
  });
  rep.sublevel_sample.points = std::move(pts);
  rep.sublevel_sample.label = "cartan sublevel sample";

  if (rep.sublevel_sample.empty()) {
    rep.cd_of_sample = 0.0;
    rep.holds = true;  // vacuous
    return rep;
  }
  CdMode mode = rep.sublevel_sample.deduplicated().size() <= kExactCdLimit
                    ? CdMode::Exact
                    : CdMode::Heuristic;
  rep.cd_of_sample = c_d(rep.sublevel_sample, d, mode, seed).value;
  rep.holds = rep.cd_of_sample <= rep.cartan_bound * (1.0 + 1e-9);
  return rep;
}

}  // namespace rmz
