#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>

#include "rmz/analytic_map.hpp"
#include "rmz/bivariate.hpp"

namespace rmz {

enum class SingularSource { LeadingCoeff, Discriminant, Both };

struct SingularLocus {
  std::vector<Complex> points;
  std::vector<SingularSource> sources;  // parallel to points
};

// A locally single-valued determination of h: base point, y-value, and the
// branch index in the canonically sorted fiber at the germ's origin point.
struct BranchGerm {
  Complex base_x{0.0, 0.0};
  Complex y_value{0.0, 0.0};
  int branch_id = -1;
};

struct MonodromyGenerator {
  Complex singular_point{0.0, 0.0};
  std::vector<int> permutation;  // base fiber index -> index after the loop
};

struct MonodromyAction {
  Complex basepoint{0.0, 0.0};
  std::vector<MonodromyGenerator> generators;
  long group_order_estimate = 1;
  bool order_capped = false;
};

enum class PathCheck { Strict, PreValidated };

// Algebraic function h defined by Q(x, h(x)) = 0 with cached singular locus:
// fibers, branch continuation along polylines, and monodromy.
class Curve {
 public:
  explicit Curve(BivariatePolynomial Q);

  const BivariatePolynomial& Q() const { return q_; }
  const Polynomial& discriminant() const { return discriminant_; }
  const SingularLocus& singular_locus() const { return sigma_; }
  int degree() const { return q_.deg_y(); }
  double scale() const { return scale_; }
  double margin() const { return 1e-3 * scale_; }

  // Distance from x0 to the nearest singular point; +inf when none exist.
  double safe_radius(Complex x0) const;

  // The d fiber values over x0, sorted by (Re, Im). Requires x0 at distance
  // >= 1e-6 * scale from the singular locus.
  std::vector<Complex> fiber(Complex x0) const;

  BranchGerm germ_at(Complex x0, int branch_index) const;

  // dy/dx = -Q_x / Q_y at a regular point of the curve.
  Complex implicit_derivative(Complex x, Complex y) const;

  // Predictor-corrector continuation along a polyline (fiber matching with
  // an ambiguity guard; adaptive step). Strict mode validates the polyline
  // against the singular locus with the 1e-3 margin first.
  BranchGerm continue_along(const BranchGerm& germ,
                            const std::vector<Complex>& path,
                            PathCheck check = PathCheck::Strict) const;

  // Counterclockwise standard loop around `sing` based at `base`.
  std::vector<Complex> standard_loop(Complex base, Complex sing) const;

  MonodromyAction monodromy(Complex basepoint) const;

  void validate_path(const std::vector<Complex>& path) const;

 private:
  double loop_radius(Complex sing) const;

  BivariatePolynomial q_;
  BivariatePolynomial qx_;
  BivariatePolynomial qy_;
  Polynomial discriminant_;
  SingularLocus sigma_;
  double scale_ = 1.0;
};

SingularLocus singular_points(const BivariatePolynomial& Q);

// Branch of g(x) = P(x, h(x)) over a domain disk strictly inside the
// singularity-free disk around the germ; values by cached continuation along
// radial segments (cache keyed by angular sector, mutex-confined).
class CurveBranchMap final : public AnalyticMap {
 public:
  CurveBranchMap(std::shared_ptr<const Curve> curve, BranchGerm germ,
                 BivariatePolynomial P, Disk domain);

  Complex value(Complex x) const override;
  Complex derivative(Complex x) const override;
  Disk domain() const override { return domain_; }
  std::string description() const override;

  Complex h_value(Complex x) const;
  const BivariatePolynomial& poly() const { return p_; }
  const BranchGerm& germ() const { return germ_; }
  int curve_degree() const { return curve_->degree(); }
  int poly_degree() const { return d1_; }
  // Bezout budget for valence counts against degree-s competitors.
  int valence_budget(int s) const {
    return curve_->degree() * std::max(s, d1_);
  }

 private:
  std::shared_ptr<const Curve> curve_;
  BranchGerm germ_;
  BivariatePolynomial p_;
  BivariatePolynomial px_;
  BivariatePolynomial py_;
  Disk domain_;
  int d1_ = 0;
  mutable std::mutex mu_;
  mutable std::unordered_map<int, BranchGerm> sector_cache_;
};

std::shared_ptr<CurveBranchMap> branch_restriction(
    std::shared_ptr<const Curve> curve, const BranchGerm& germ,
    BivariatePolynomial P, Disk domain);

}  // namespace rmz
