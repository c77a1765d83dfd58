#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rmz/covering.hpp"
#include "rmz/curve.hpp"

namespace rmz {

struct ChainLink {
  Disk disk;               // D_j (center, R_j); closure must avoid Sigma
  BranchGerm germ;         // branch h_j over D_j, based inside the disk
  double inner_radius_R1;  // R_{j,1}
  double inner_radius_Rp;  // R'_j
};

struct Chain {
  std::vector<ChainLink> links;  // j = 0..m
  PointSet Z_anchor;             // must lie in D^1_0
  Complex target_x0{0.0, 0.0};   // must lie in D'_m
};

// S = {d, d1, Sigma, Z, x0, G, h_hat, h_bar}.
struct GlobalConfiguration {
  std::shared_ptr<const Curve> curve;
  int poly_degree_d1 = 1;
  SingularLocus sigma;
  PointSet Z;
  Complex x0{0.0, 0.0};
  MonodromyAction monodromy;
  BranchGerm branch_hat;  // over the disk D around Z
  BranchGerm branch_bar;  // at x0
};

// Builds and validates a configuration: germs from branch indices in the
// canonically sorted fibers, monodromy based at the hat germ.
GlobalConfiguration make_configuration(std::shared_ptr<const Curve> curve,
                                       int d1, PointSet Z, Complex x0,
                                       int hat_branch, int bar_branch);

struct ValidationIssue {
  int condition = 0;  // 0 link-local, 1..3 the chain conditions
  int link = -1;
  std::string message;
};

struct ChainValidation {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Checks the chain conditions: (1) Z in D^1_0 and germ_0 = h_hat, (2) x0 in
// D'_m and germ_m = h_bar, (3) consecutive overlaps with branch agreement;
// plus the link-local invariants. Germ matching against the configuration
// branches runs only when `config` is given.
ChainValidation validate_chain(const Curve& curve, const Chain& chain,
                               const GlobalConfiguration* config = nullptr);

// c_{d1} of a uniform sample of the lens diskA cap diskB: a certified lower
// bound of the lens invariant (exact on residue-class subsamples of <= 12
// points, prefix-stable so the value is nondecreasing under nested sampling).
double lens_c_invariant(const Disk& diskA, const Disk& diskB, int d1,
                        int n_samples, std::uint64_t seed);

struct ChainConstantReport {
  double K_value = 1.0;
  double log_K = 0.0;
  std::vector<double> per_link_factors;
  std::vector<std::pair<double, double>> chosen_radii;  // (R_{j,1}, R'_j)
  std::vector<double> lens_c_values;                    // c_j for j = 1..m
};

// K(CH, d, d1): product over links of sigma(R_{j,1}/R_j, R'_j/R_j)^{d d1}
// times (6e R_j / c_j)^{d1} for j >= 1. The j = 0 Cartan factor (6e R_0 /
// c_{d1}(Z))^{d1} belongs to the global inequality and is not part of K.
// With optimize, inner radii are searched on a 0.50..0.95 fraction grid with
// coordinate descent under the overlap/containment constraints.
ChainConstantReport chain_constant(const Curve& curve, const Chain& chain,
                                   int d, int d1, bool optimize,
                                   std::uint64_t seed);

// Writes the radii chosen by chain_constant back into the chain.
void apply_radii(Chain& chain, const ChainConstantReport& report);

struct SearchResult {
  Chain chain;
  ChainConstantReport report;
};

// Heuristic upper estimate of K(S): corridor from Z to x0 with waypoints
// repelled from Sigma, monodromy-planned detour loops when the arrival
// branch must differ, disks sized against the singular locus.
SearchResult search_chain(const GlobalConfiguration& config,
                          std::uint64_t seed);

struct CurveRemezCertificate {
  int d = 0;
  int d1 = 0;
  double R = 0.0;
  double R1 = 0.0;
  double Rp = 0.0;
  double c = 0.0;
  double bound = 0.0;
  double observed_ratio = 0.0;
  bool holds = false;
  double slack = 0.0;
};

// Local inequality on one disk: max over D_{R'}
// against max over Z with the sigma and Cartan factors.
CurveRemezCertificate verify_local_remez(std::shared_ptr<const Curve> curve,
                                         const BivariatePolynomial& P,
                                         const BranchGerm& germ,
                                         const PointSet& Z, double R1,
                                         double Rp, std::uint64_t seed);

struct GlobalRemezCertificate {
  int d = 0;
  int d1 = 0;
  double c = 0.0;
  double K = 0.0;        // may overflow; log_K below always carries it
  double log_K = 0.0;
  double cartan_factor = 0.0;  // (6e R_0 / c)^{d1}
  double max_on_Z = 0.0;
  double g_at_x0 = 0.0;
  double bound = 0.0;     // exp(log_bound); may overflow to inf
  double log_bound = 0.0;
  bool holds = false;
  double slack = 0.0;
  double log_slack = 0.0;
  double composition_residual = 0.0;  // in log space
};

// Global inequality along a validated chain: |g_bar(x0)| <= K(CH) *
// (6e R_0 / c)^{d1} * max_Z |g_hat|, evaluated in log space since chain
// constants overflow doubles easily; also asserts the link-product
// composition identity to 1e-9 relative. Pass a precomputed chain-constant
// report to amortize the lens sampling over many polynomials.
GlobalRemezCertificate verify_global_remez(
    const GlobalConfiguration& config, const BivariatePolynomial& P,
    const Chain& chain, std::uint64_t seed,
    const ChainConstantReport* precomputed = nullptr);

}  // namespace rmz
