#include "rmz/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "rmz/errors.hpp"

namespace rmz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string complex_str(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::vector<Complex> sorted_canonical(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return v;
}

}  // namespace

SingularLocus singular_points(const BivariatePolynomial& Q) {
  if (Q.deg_y() < 1) throw ValidationError("deg_y must be >= 1");
  std::vector<Complex> lead_roots;
  if (Q.s(Q.deg_y()).degree() >= 1) lead_roots = find_roots(Q.s(Q.deg_y()));
  Polynomial delta = discriminant_x(Q);
  std::vector<Complex> disc_roots;
  if (delta.degree() >= 1) disc_roots = find_roots(delta);

  SingularLocus locus;
  auto add = [&](Complex p, SingularSource src) {
    for (std::size_t i = 0; i < locus.points.size(); ++i) {
      if (std::abs(locus.points[i] - p) <= 1e-8 * std::max(1.0, std::abs(p))) {
        if (locus.sources[i] != src) locus.sources[i] = SingularSource::Both;
        return;
      }
    }
    locus.points.push_back(p);
    locus.sources.push_back(src);
  };
  for (Complex p : lead_roots) add(p, SingularSource::LeadingCoeff);
  for (Complex p : disc_roots) add(p, SingularSource::Discriminant);

  const long d = Q.deg_y();
  if (static_cast<long>(locus.points.size()) > 2 * d * d)
    throw ComputationError("singular locus exceeds the 2d^2 bound");
  return locus;
}

Curve::Curve(BivariatePolynomial Q) : q_(std::move(Q)) {
  if (q_.deg_y() < 1) throw ValidationError("deg_y must be >= 1");
  qx_ = q_.d_dx();
  qy_ = q_.d_dy();
  discriminant_ = discriminant_x(q_);
  sigma_ = singular_points(q_);
  scale_ = 1.0;
  for (Complex p : sigma_.points) scale_ = std::max(scale_, std::abs(p));
}

double Curve::safe_radius(Complex x0) const {
  if (sigma_.points.empty()) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (Complex p : sigma_.points) best = std::min(best, std::abs(x0 - p));
  return best;
}

std::vector<Complex> Curve::fiber(Complex x0) const {
  if (safe_radius(x0) < 1e-6 * scale_)
    throw ValidationError("too close to singularity");
  Polynomial uni = q_.at_x(x0);
  if (uni.degree() != degree())
    throw ComputationError("fiber degenerates at x=" + complex_str(x0));
  return sorted_canonical(find_roots(uni));
}

BranchGerm Curve::germ_at(Complex x0, int branch_index) const {
  auto f = fiber(x0);
  if (branch_index < 0 || branch_index >= static_cast<int>(f.size()))
    throw ValidationError("branch index out of range");
  return BranchGerm{x0, f[branch_index], branch_index};
}

Complex Curve::implicit_derivative(Complex x, Complex y) const {
  Complex num = qx_.is_zero() ? Complex(0, 0) : qx_.eval(x, y);
  Complex den = qy_.eval(x, y);
  if (std::abs(den) < 1e-300)
    throw ComputationError("dQ/dy vanishes at the tracked point");
  return -num / den;
}

void Curve::validate_path(const std::vector<Complex>& path) const {
  if (path.empty()) throw ValidationError("empty path");
  const double m = margin();
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    for (Complex s : sigma_.points)
      if (segment_distance(s, path[i], path[i + 1]) < m)
        throw ValidationError("path too close to singular locus near x=" +
                              complex_str(s));
}

BranchGerm Curve::continue_along(const BranchGerm& germ,
                                 const std::vector<Complex>& path,
                                 PathCheck check) const {
  if (path.empty()) throw ValidationError("empty path");
  if (std::abs(path.front() - germ.base_x) > 1e-9 * scale_)
    throw ValidationError("path must start at the germ base point");
  {
    Polynomial uni = q_.at_x(germ.base_x);
    if (std::abs(uni(germ.y_value)) >
        1e-8 * std::max(uni.eval_scale(germ.y_value), 1e-30))
      throw ValidationError("germ does not lie on the curve");
  }
  if (check == PathCheck::Strict) validate_path(path);

  Complex x = germ.base_x;
  Complex y = germ.y_value;
  for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
    const Complex a = path[seg], b = path[seg + 1];
    if (std::abs(b - a) < 1e-15 * scale_) continue;
    double t = 0.0, h = 0.125;
    while (t < 1.0 - 1e-15) {
      h = std::min(h, 1.0 - t);
      Complex x_try = a + (t + h) * (b - a);
      Complex y_pred = y + implicit_derivative(x, y) * (x_try - x);
      Polynomial uni = q_.at_x(x_try);
      bool reject = uni.degree() != degree();
      Complex nearest(0, 0);
      if (!reject) {
        auto fib = find_roots(uni);
        double best = std::numeric_limits<double>::infinity();
        double second = std::numeric_limits<double>::infinity();
        for (Complex cand : fib) {
          double dist = std::abs(cand - y_pred);
          if (dist < best) {
            second = best;
            best = dist;
            nearest = cand;
          } else {
            second = std::min(second, dist);
          }
        }
        // Ambiguity guard: the predictor must point clearly at one branch.
        reject = fib.size() > 1 && best > 0.3 * second;
      }
      if (reject) {
        h *= 0.5;
        if (h < 1e-12)
          throw ComputationError("tracking failed near x=" +
                                 complex_str(a + t * (b - a)));
        continue;
      }
      x = x_try;
      y = nearest;
      t += h;
      h = std::min(h * 1.6, 1.0);
    }
  }
  return BranchGerm{path.back(), y, germ.branch_id};
}

double Curve::loop_radius(Complex sing) const {
  double nearest_other = std::numeric_limits<double>::infinity();
  for (Complex p : sigma_.points) {
    double dist = std::abs(p - sing);
    if (dist > 1e-12) nearest_other = std::min(nearest_other, dist);
  }
  double r = std::min(0.5 * nearest_other, 0.1 * scale_);
  return std::max(r, 3.0 * margin());
}

std::vector<Complex> Curve::standard_loop(Complex base, Complex sing) const {
  double r = loop_radius(sing);
  double dist = std::abs(base - sing);
  if (dist <= r + margin())
    throw ComputationError("basepoint too close to singularity x=" +
                           complex_str(sing) + " for a standard loop");
  Complex dir = (base - sing) / dist;
  Complex q = sing + r * dir;
  std::vector<Complex> path;
  path.push_back(base);
  path.push_back(q);
  double theta0 = std::arg(dir);
  const int steps = 72;  // 5-degree discretization
  for (int k = 1; k <= steps; ++k)
    path.push_back(sing + std::polar(r, theta0 + kTwoPi * k / steps));
  path.push_back(q);
  path.push_back(base);
  return path;
}

MonodromyAction Curve::monodromy(Complex basepoint) const {
  MonodromyAction act;
  act.basepoint = basepoint;
  auto base_fiber = fiber(basepoint);
  const int d = degree();
  double yscale = 1.0;
  for (Complex y : base_fiber) yscale = std::max(yscale, std::abs(y));

  for (Complex sing : sigma_.points) {
    std::vector<Complex> loop;
    try {
      loop = standard_loop(basepoint, sing);
      validate_path(loop);
    } catch (const std::exception& e) {
      throw ComputationError("monodromy loop around x=" + complex_str(sing) +
                             " failed: " + e.what());
    }
    MonodromyGenerator gen;
    gen.singular_point = sing;
    gen.permutation.assign(d, -1);
    for (int j = 0; j < d; ++j) {
      BranchGerm start{basepoint, base_fiber[j], j};
      BranchGerm end;
      try {
        end = continue_along(start, loop, PathCheck::PreValidated);
      } catch (const ComputationError& e) {
        throw ComputationError("monodromy tracking around x=" +
                               complex_str(sing) + " failed: " + e.what());
      }
      int match = -1;
      for (int k = 0; k < d; ++k)
        if (std::abs(end.y_value - base_fiber[k]) <= 1e-8 * yscale) {
          match = k;
          break;
        }
      if (match < 0)
        throw ComputationError("monodromy endpoint does not match the fiber "
                               "around x=" +
                               complex_str(sing));
      gen.permutation[j] = match;
    }
    std::vector<bool> seen(d, false);
    for (int v : gen.permutation) {
      if (v < 0 || seen[v])
        throw ComputationError("monodromy permutation is not a bijection");
      seen[v] = true;
    }
    act.generators.push_back(std::move(gen));
  }

  // Order of the generated subgroup by closure enumeration.
  std::set<std::vector<int>> group;
  std::vector<int> identity(d);
  for (int i = 0; i < d; ++i) identity[i] = i;
  group.insert(identity);
  std::vector<std::vector<int>> frontier{identity};
  const std::size_t cap = 1000000;
  while (!frontier.empty() && group.size() <= cap) {
    std::vector<std::vector<int>> next;
    for (const auto& g : frontier)
      for (const auto& gen : act.generators) {
        std::vector<int> prod(d);
        for (int i = 0; i < d; ++i) prod[i] = gen.permutation[g[i]];
        if (group.insert(prod).second) next.push_back(std::move(prod));
      }
    frontier = std::move(next);
  }
  act.order_capped = group.size() > cap;
  act.group_order_estimate = static_cast<long>(group.size());
  return act;
}

CurveBranchMap::CurveBranchMap(std::shared_ptr<const Curve> curve,
                               BranchGerm germ, BivariatePolynomial P,
                               Disk domain)
    : curve_(std::move(curve)),
      germ_(germ),
      p_(std::move(P)),
      px_(p_.d_dx()),
      py_(p_.d_dy()),
      domain_(domain) {
  d1_ = p_.total_degree();
  double safe = curve_->safe_radius(germ_.base_x);
  double reach = std::abs(domain_.center - germ_.base_x) + domain_.radius;
  if (reach > safe - curve_->margin())
    throw ValidationError("domain not singularity-free");
  Polynomial uni = curve_->Q().at_x(germ_.base_x);
  if (std::abs(uni(germ_.y_value)) >
      1e-8 * std::max(uni.eval_scale(germ_.y_value), 1e-30))
    throw ValidationError("germ does not lie on the curve");
}

Complex CurveBranchMap::h_value(Complex x) const {
  double scale = std::max(1.0, curve_->scale());
  if (std::abs(x - germ_.base_x) <= 1e-14 * scale) return germ_.y_value;
  if (std::abs(x - domain_.center) > domain_.radius * (1.0 + 1e-9) + 1e-14)
    throw ValidationError("evaluation outside the branch domain");
  const int n_sectors = 256;
  double ang = std::arg(x - germ_.base_x);
  int sector = static_cast<int>((ang + std::numbers::pi) / kTwoPi * n_sectors);
  sector = std::clamp(sector, 0, n_sectors - 1);
  BranchGerm from = germ_;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = sector_cache_.find(sector);
    if (it != sector_cache_.end()) from = it->second;
  }
  // Both endpoints lie in the (convex) domain disk, which stays clear of the
  // singular locus by construction.
  BranchGerm end =
      curve_->continue_along(from, {from.base_x, x}, PathCheck::PreValidated);
  {
    std::lock_guard<std::mutex> lock(mu_);
    sector_cache_[sector] = end;
  }
  return end.y_value;
}

Complex CurveBranchMap::value(Complex x) const {
  return p_.eval(x, h_value(x));
}

Complex CurveBranchMap::derivative(Complex x) const {
  Complex y = h_value(x);
  Complex hp = curve_->implicit_derivative(x, y);
  Complex dx = px_.is_zero() ? Complex(0, 0) : px_.eval(x, y);
  Complex dy = py_.is_zero() ? Complex(0, 0) : py_.eval(x, y);
  return dx + dy * hp;
}

std::string CurveBranchMap::description() const {
  std::ostringstream os;
  os << "restriction of a degree-" << d1_ << " polynomial to branch "
     << germ_.branch_id << " of a degree-" << curve_->degree()
     << " curve (valence budget p = d*max(s,d1))";
  return os.str();
}

std::shared_ptr<CurveBranchMap> branch_restriction(
    std::shared_ptr<const Curve> curve, const BranchGerm& germ,
    BivariatePolynomial P, Disk domain) {
  return std::make_shared<CurveBranchMap>(std::move(curve), germ, std::move(P),
                                          domain);
}

}  // namespace rmz
