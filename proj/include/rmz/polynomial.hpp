#pragma once

#include <complex>
#include <span>
#include <vector>

#include "rmz/errors.hpp"
#include "rmz/geometry.hpp"
#include "rmz/parallel.hpp"

namespace rmz {

// Univariate complex polynomial, coefficients in ascending degree order with
// exact trailing zeros stripped. The zero polynomial has empty coeffs and
// degree() == -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
  }
  static Polynomial constant(Complex c) { return Polynomial({c}); }

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Complex leading_coeff() const {
    return coeffs_.empty() ? Complex(0, 0) : coeffs_.back();
  }
  Complex coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Complex(0, 0);
  }

  Complex operator()(Complex x) const {  // Horner
    Complex acc(0, 0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(Complex scalar) const;

  // Sum of |a_k| |x|^k; the natural residual scale at x.
  double eval_scale(Complex x) const;

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == Complex(0, 0))
      coeffs_.pop_back();
  }
  std::vector<Complex> coeffs_;
};

Polynomial from_roots(std::span<const Complex> roots, Complex leading);

class RootFindingError : public ComputationError {
 public:
  RootFindingError(const std::string& msg, std::vector<Complex> best)
      : ComputationError(msg), best_iterate(std::move(best)) {}
  std::vector<Complex> best_iterate;
};

// All degree() roots with multiplicity, Aberth-Ehrlich simultaneous
// iteration with Newton polishing. Residual |P(root)| <= 1e-10 * scale.
std::vector<Complex> find_roots(const Polynomial& p);

struct DiskMaxResult {
  double max_value = 0.0;
  Complex argmax{0.0, 0.0};
  int grid_size = 0;
  bool refined = false;
};

// max |f| over the boundary circle of `disk`: index-parallel grid scan plus
// golden-section refinement around the best sample. Deterministic for either
// execution policy.
template <typename F>
DiskMaxResult boundary_max(F&& f, const Disk& disk, int grid_size,
                           Exec exec = default_exec()) {
  if (disk.radius == 0.0) {
    return {std::abs(f(disk.center)), disk.center, 1, false};
  }
  const double two_pi = 6.283185307179586476925286766559;
  auto at = [&](double theta) {
    return disk.center + std::polar(disk.radius, theta);
  };
  std::vector<double> vals;
  map_index(exec, static_cast<std::size_t>(grid_size), vals, [&](std::size_t i) {
    return std::abs(f(at(two_pi * static_cast<double>(i) / grid_size)));
  });
  std::size_t best = argmax(vals);
  double step = two_pi / grid_size;
  double lo = (static_cast<double>(best) - 1.0) * step;
  double hi = (static_cast<double>(best) + 1.0) * step;
  // Golden-section maximization of |f| on [lo, hi].
  const double gr = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = std::abs(f(at(x1))), f2 = std::abs(f(at(x2)));
  for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = std::abs(f(at(x2)));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = std::abs(f(at(x1)));
    }
  }
  double theta = 0.5 * (a + b);
  double val = std::abs(f(at(theta)));
  DiskMaxResult res{vals[best], at(step * static_cast<double>(best)), grid_size,
                    true};
  if (val > res.max_value) {
    res.max_value = val;
    res.argmax = at(theta);
  }
  return res;
}

// max |P| over the closed disk (attained on the boundary). Grid density
// max(1024, 256 * degree).
DiskMaxResult max_modulus_on_disk(const Polynomial& p, const Disk& disk,
                                  Exec exec = default_exec());

struct PointMaxResult {
  double max_value = 0.0;
  Complex argmax{0.0, 0.0};
};

PointMaxResult max_on_points(const Polynomial& p, const PointSet& Z);

// T_d via the cosine form on [-1,1] and the cosh form beyond.
double chebyshev_value(int d, double x);

}  // namespace rmz
