#pragma once

#include <vector>

#include "rmz/polynomial.hpp"

namespace rmz {

struct BivariateTerm {
  int ypow = 0;
  int xpow = 0;
  Complex coeff{0.0, 0.0};
};

// Q(x, y) = sum_i s_i(x) y^i with polynomial coefficients in x. The y-leading
// coefficient polynomial must not vanish identically.
class BivariatePolynomial {
 public:
  BivariatePolynomial() = default;
  explicit BivariatePolynomial(std::vector<Polynomial> y_coeffs);
  static BivariatePolynomial from_terms(const std::vector<BivariateTerm>& terms);

  int deg_y() const { return static_cast<int>(s_.size()) - 1; }
  int deg_x() const;
  int total_degree() const;  // max i + j over nonzero terms
  bool is_zero() const { return s_.empty(); }
  const Polynomial& s(int i) const { return s_[i]; }
  const std::vector<Polynomial>& y_coeffs() const { return s_; }

  Complex eval(Complex x, Complex y) const;
  // Univariate polynomial in y at fixed x.
  Polynomial at_x(Complex x) const;

  BivariatePolynomial d_dy() const;
  BivariatePolynomial d_dx() const;

  std::vector<BivariateTerm> terms() const;

 private:
  std::vector<Polynomial> s_;  // s_[i] multiplies y^i; trailing zero polys stripped
};

// Resultant in y of (Q, dQ/dy) by evaluation-interpolation of the Sylvester
// determinant on a root-of-unity grid, with a fresh-point residual check.
Polynomial discriminant_x(const BivariatePolynomial& Q);

}  // namespace rmz
