#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "rmz/covering.hpp"
#include "rmz/polynomial.hpp"

namespace rmz {

inline constexpr double kSixE = 6.0 * std::numbers::e;
inline constexpr double kTwoE = 2.0 * std::numbers::e;

// T_d((4 - omega) / omega): the real Remez constant with the measure replaced
// by the covering invariant omega in (0, 2].
double real_remez_bound(int d, double omega);

// (6e / c)^d, the complex polynomial bound for c = c_d(Z) > 0.
double complex_remez_bound(int d, double c);

// (2e / c)^d, bound on |leading coefficient| when |P| <= 1 on Z.
double leading_coeff_bound(int d, double c);

// [ (1+R)(1+R') / ((1-R)(1-R')) ]^2 for radii in [0, 1).
double sigma(double R, double Rp);

// sigma(R, R')^p * (6e / c)^s.
double sp_remez_bound(int s, int p, double R, double Rp, double c);

struct DistortionBounds {
  double lower = 1.0;
  double upper = 1.0;
};

// ((1-rho)/(1+rho))^{2p} <= |g| <= ((1+rho)/(1-rho))^{2p}.
DistortionBounds distortion_bounds(int p, double rho);

struct RemezCertificate {
  int d = 0;
  double c = 0.0;
  double bound = 0.0;
  double observed_ratio = 0.0;
  Polynomial witness_poly;
  bool holds = false;
  double slack = 0.0;  // bound / observed_ratio
};

struct HarnessSummary {
  int trials = 0;
  int violations = 0;
  double min_slack = 0.0;
  double mean_slack = 0.0;
  Polynomial tightest_witness;
};

HarnessSummary summarize(const std::vector<RemezCertificate>& certs);

// Random-polynomial certification of the complex Remez bound on Z. The
// ensemble is iid standard complex Gaussian coefficients with the exact
// degree pinned; deterministic per (seed, trials) under any schedule.
std::vector<RemezCertificate> verify_polynomial_remez(
    const PointSet& Z, int d, int trials, std::uint64_t seed,
    Exec exec = default_exec());

struct LeadingCoeffCertificate {
  int d = 0;
  double c = 0.0;
  double bound = 0.0;
  double rescaled_leading = 0.0;  // 1 / max_Z |P| for monic P
  Polynomial witness_poly;
  bool holds = false;
  double slack = 0.0;
};

std::vector<LeadingCoeffCertificate> verify_leading_coeff(
    const PointSet& Z, int d, int trials, std::uint64_t seed,
    Exec exec = default_exec());

struct CartanReport {
  double eps = 0.0;
  double level = 0.0;  // eps^d
  PointSet sublevel_sample;
  double cd_of_sample = 0.0;
  double cartan_bound = 0.0;  // 2e * eps
  bool holds = false;
};

// Samples the sublevel set {|P| <= eps^d} of a monic P around its roots
// (membership re-verified point by point) and checks the Cartan bound
// c_d(sample) <= 2e * eps.
CartanReport verify_cartan(const Polynomial& P, double eps, int n_samples,
                           std::uint64_t seed, Exec exec = default_exec());

}  // namespace rmz
