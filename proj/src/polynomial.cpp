#include "rmz/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace rmz {

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<Complex> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    out[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<Complex> out(std::max(coeffs_.size(), other.coeffs_.size()),
                           Complex(0, 0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] += coeffs_[k];
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k)
    out[k] += other.coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other * Complex(-1.0, 0.0);
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (is_zero() || other.is_zero()) return Polynomial();
  std::vector<Complex> out(coeffs_.size() + other.coeffs_.size() - 1,
                           Complex(0, 0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
      out[i + j] += coeffs_[i] * other.coeffs_[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(Complex scalar) const {
  std::vector<Complex> out = coeffs_;
  for (auto& c : out) c *= scalar;
  return Polynomial(std::move(out));
}

double Polynomial::eval_scale(Complex x) const {
  double r = std::abs(x), pw = 1.0, acc = 0.0;
  for (const Complex& c : coeffs_) {
    acc += std::abs(c) * pw;
    pw *= r;
  }
  return acc;
}

Polynomial from_roots(std::span<const Complex> roots, Complex leading) {
  if (leading == Complex(0, 0))
    throw ValidationError("leading coefficient must be nonzero");
  std::vector<Complex> coeffs{leading};
  for (Complex r : roots) {
    coeffs.push_back(Complex(0, 0));
    for (std::size_t k = coeffs.size() - 1; k > 0; --k)
      coeffs[k] = coeffs[k - 1] - r * coeffs[k];
    coeffs[0] = -r * coeffs[0];
  }
  return Polynomial(std::move(coeffs));
}

namespace {

// One Aberth-Ehrlich sweep; returns the largest correction magnitude.
double aberth_sweep(const Polynomial& p, const Polynomial& dp,
                    std::vector<Complex>& z) {
  const std::size_t n = z.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Complex pv = p(z[i]);
    if (pv == Complex(0, 0)) continue;
    Complex dv = dp(z[i]);
    Complex newton = (dv == Complex(0, 0)) ? Complex(0, 0) : pv / dv;
    Complex sum(0, 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Complex diff = z[i] - z[j];
      if (diff == Complex(0, 0)) diff = Complex(1e-14, 1e-14);
      sum += 1.0 / diff;
    }
    Complex denom = Complex(1, 0) - newton * sum;
    Complex w = (denom == Complex(0, 0)) ? newton : newton / denom;
    z[i] -= w;
    worst = std::max(worst, std::abs(w));
  }
  return worst;
}

}  // namespace

std::vector<Complex> find_roots(const Polynomial& p) {
  if (p.degree() < 1)
    throw ValidationError("root finding needs degree >= 1");
  std::vector<Complex> coeffs = p.coeffs();
  // Exact zeros at the origin split off directly.
  std::vector<Complex> roots;
  std::size_t shift = 0;
  while (shift < coeffs.size() - 1 && coeffs[shift] == Complex(0, 0)) ++shift;
  for (std::size_t k = 0; k < shift; ++k) roots.push_back(Complex(0, 0));
  coeffs.erase(coeffs.begin(), coeffs.begin() + shift);
  Polynomial q(std::move(coeffs));
  const int n = q.degree();
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(-q.coeff(0) / q.coeff(1));
    return roots;
  }
  Polynomial dq = q.derivative();
  // Start on a circle sized by the Cauchy root bound.
  double bound = 0.0;
  for (int k = 0; k < n; ++k)
    bound = std::max(bound, std::abs(q.coeff(k) / q.leading_coeff()));
  double radius = 0.5 * (1.0 + bound);
  std::vector<Complex> z(n);
  for (int i = 0; i < n; ++i) {
    double theta = 2.0 * 3.14159265358979323846 * i / n + 0.376;
    z[i] = std::polar(radius, theta);
  }
  bool converged = false;
  for (int it = 0; it < 1000; ++it) {
    double worst = aberth_sweep(q, dq, z);
    bool all_small = true;
    for (Complex zi : z) {
      double scale = std::max(q.eval_scale(zi), 1e-300);
      if (std::abs(q(zi)) > 1e-13 * scale) {
        all_small = false;
        break;
      }
    }
    if (all_small) {
      converged = true;
      break;
    }
    // Stalled without a small residual: nudge the cluster apart.
    if (worst < 1e-15 * std::max(1.0, radius))
      for (int i = 0; i < n; ++i) z[i] += std::polar(1e-8 * radius, 2.7 * i);
  }
  if (!converged) {
    // Residual re-check (clusters of near-multiple roots converge slowly in
    // position while the residual is already at noise level).
    converged = true;
    for (Complex zi : z) {
      double scale = std::max(q.eval_scale(zi), 1e-300);
      if (std::abs(q(zi)) > 1e-10 * scale) {
        converged = false;
        break;
      }
    }
  }
  if (!converged) {
    std::vector<Complex> best = roots;
    best.insert(best.end(), z.begin(), z.end());
    throw RootFindingError("root finding did not converge", std::move(best));
  }
  // Newton polish.
  for (Complex& zi : z) {
    for (int it = 0; it < 3; ++it) {
      Complex dv = dq(zi);
      if (std::abs(dv) < 1e-300) break;
      Complex step = q(zi) / dv;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      double scale = std::max(q.eval_scale(zi), 1e-300);
      Complex cand = zi - step;
      if (std::abs(q(cand)) <= std::abs(q(zi)) + 1e-16 * scale) zi = cand;
    }
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

DiskMaxResult max_modulus_on_disk(const Polynomial& p, const Disk& disk,
                                  Exec exec) {
  if (p.degree() <= 0) {
    Complex c = p.is_zero() ? Complex(0, 0) : p.coeff(0);
    return {std::abs(c), disk.center + Complex(disk.radius, 0.0), 1, false};
  }
  int grid = std::max(1024, 256 * p.degree());
  return boundary_max([&](Complex x) { return p(x); }, disk, grid, exec);
}

PointMaxResult max_on_points(const Polynomial& p, const PointSet& Z) {
  if (Z.empty()) throw ValidationError("empty set");
  PointMaxResult res{-1.0, Z.points.front()};
  for (Complex z : Z.points) {
    double v = std::abs(p(z));
    if (v > res.max_value) {
      res.max_value = v;
      res.argmax = z;
    }
  }
  return res;
}

double chebyshev_value(int d, double x) {
  if (d < 0) throw ValidationError("degree must be >= 0");
  if (x >= 1.0) return std::cosh(d * std::acosh(x));
  if (x <= -1.0) {
    double v = std::cosh(d * std::acosh(-x));
    return (d % 2 == 0) ? v : -v;
  }
  return std::cos(d * std::acos(x));
}

}  // namespace rmz
