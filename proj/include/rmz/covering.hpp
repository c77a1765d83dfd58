#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rmz/errors.hpp"
#include "rmz/geometry.hpp"

namespace rmz {

// Covering invariants of finite planar sets: c_d (minimal sum of radii of d
// covering disks), the covering number M(eps, Z), rho_d = d * eps0, and the
// entropy-weighted excesses omega_cd / omega_d. Exact oracles at small size,
// certified heuristics with honest flags beyond.

enum class CdMode { Exact, Heuristic };

struct CoveringCount {
  int count = 0;
  bool exact = true;
};

struct CdResult {
  double value = 0.0;
  Covering covering;
  bool exact = true;
};

struct RhoResult {
  double rho = 0.0;
  double epsilon0 = 0.0;
};

struct InvariantReport {
  int d = 1;
  double c_d = 0.0;
  bool c_d_is_exact = true;
  double rho_d = 0.0;
  double omega_cd = 0.0;
  double omega_d = 0.0;
  double epsilon0 = 0.0;
  Covering witness_covering;
  std::optional<double> mu2;  // area input for the measure bound check
};

// Largest point count for which c_d runs the exact partition optimum.
inline constexpr std::size_t kExactCdLimit = 12;
// Largest non-collinear point count for which covering_number is exact.
inline constexpr std::size_t kExactCoverLimit = 20;

// Minimal number of closed radius-eps disks covering Z. Exact for
// |dedup Z| <= 20 (branch and bound over candidate disks) and for collinear
// input of any size (1-D interval sweep); greedy upper bound otherwise,
// flagged exact=false.
CoveringCount covering_number(const PointSet& Z, double eps);

// Radii where M(eps, Z) can change: MEB radii of all 2- and 3-subsets,
// ascending, deduplicated at 1e-12. Empty for singletons.
std::vector<double> critical_radii(const PointSet& Z);

// Minimal sum of radii of d disks covering Z (Def of c_d). Exact mode is the
// partition optimum for |dedup Z| <= 12; heuristic mode (and larger sets)
// returns a seeded local-search upper bound with exact=false.
CdResult c_d(const PointSet& Z, int d, CdMode mode = CdMode::Exact,
             std::uint64_t seed = 0);

// The step function eps -> M(eps, Z) evaluated at its breakpoints: counts[k]
// is M on [radii[k], radii[k+1]), and M = n_dedup on (0, radii[0]).
struct CoveringProfile {
  std::vector<double> radii;
  std::vector<int> counts;
  int n_dedup = 0;
};

CoveringProfile covering_profile(const PointSet& Z);

// eps0 = smallest critical radius with M(eps, Z) <= d (0 when |Z| <= d);
// rho = d * eps0.
RhoResult rho_d(const PointSet& Z, int d);
RhoResult rho_d(const CoveringProfile& profile, int d);

// sup_eps eps * (M(eps,Z) - d)^bracket_pow over eps with M > d, evaluated as
// a max over breakpoint left-limits.
double omega_cd(const PointSet& Z, int d);
double omega_d(const PointSet& Z, int d);
double omega_cd(const CoveringProfile& profile, int d);
double omega_d(const CoveringProfile& profile, int d);

// Lower bound (mu2 / pi)^(1/2) on c_d for a measurable set of area mu2.
double measure_lower_bound(double mu2);

// Full report; mode applies to c_d.
InvariantReport invariant_report(const PointSet& Z, int d,
                                 CdMode mode = CdMode::Exact,
                                 std::uint64_t seed = 0,
                                 std::optional<double> mu2 = std::nullopt);

// Certified lower bound on c_d(Z): exact when |dedup Z| <= 12, otherwise the
// max of exact values over a few seeded 12-point subsamples. Used wherever a
// bound of the form (6eR/c)^k must stay an upper bound.
double c_d_lower_bound(const PointSet& Z, int d, std::uint64_t seed = 0);

}  // namespace rmz
