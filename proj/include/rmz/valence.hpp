#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "rmz/analytic_map.hpp"
#include "rmz/parallel.hpp"

namespace rmz {

// Number of solutions of f(x) = P(x) in the disk, by the argument principle:
// winding number of f - P over the boundary via trapezoid doubling from 256
// nodes. Requires f - P nonvanishing on the contour (the disk shrinks by 1%
// up to 5 times before giving up).
int count_solutions(const AnalyticMap& f, const Polynomial& P, Disk disk,
                    Exec exec = default_exec());

struct ValenceReport {
  int s = 0;
  Disk domain;
  int trials = 0;
  int max_count = 0;  // observed p
  Polynomial witness_poly;
  std::map<int, int> counts_histogram;
  int failed_trials = 0;
  std::string first_failure;
};

// Empirical (s, p)-valence probe: every trial draws prefix-shared Gaussian
// coefficients (scaled to max |f| on the boundary) and evaluates each degree
// truncation <= s, so reports are nested in s: max_count(s+1) >= max_count(s)
// for the same seed. Deterministic per (seed, trials).
ValenceReport probe_valence(const AnalyticMap& f, Disk disk, int s, int trials,
                            std::uint64_t seed, Exec exec = default_exec());

// Count solutions for one explicit competitor polynomial (witness injection).
int count_against(const AnalyticMap& f, const Polynomial& P,
                  Exec exec = default_exec());

struct DistortionReport {
  int p = 0;
  int n_samples = 0;
  Complex normalizing_a{0.0, 0.0};
  double min_upper_margin = 0.0;  // min over samples of upper - |g|
  double min_lower_margin = 0.0;  // min over samples of |g| - lower
  bool holds = false;
};

// Checks the two-sided distortion bounds for g = f / P at seeded sample
// points of the unit disk, where P = a * prod (x - x_j) over the declared
// zeros and a normalizes g(0) = 1 (Cauchy-integral coefficient extraction).
DistortionReport verify_distortion(const AnalyticMap& f,
                                   const std::vector<Complex>& s_zeros, int p,
                                   int n_samples, std::uint64_t seed,
                                   Exec exec = default_exec());

}  // namespace rmz
