#include "rmz/bivariate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmz/errors.hpp"

namespace rmz {

BivariatePolynomial::BivariatePolynomial(std::vector<Polynomial> y_coeffs)
    : s_(std::move(y_coeffs)) {
  while (!s_.empty() && s_.back().is_zero()) s_.pop_back();
}

BivariatePolynomial BivariatePolynomial::from_terms(
    const std::vector<BivariateTerm>& terms) {
  int dy = 0, dx = 0;
  for (const auto& t : terms) {
    if (t.ypow < 0 || t.xpow < 0)
      throw ValidationError("term powers must be nonnegative");
    dy = std::max(dy, t.ypow);
    dx = std::max(dx, t.xpow);
  }
  std::vector<std::vector<Complex>> grid(
      dy + 1, std::vector<Complex>(dx + 1, Complex(0, 0)));
  for (const auto& t : terms) grid[t.ypow][t.xpow] += t.coeff;
  std::vector<Polynomial> ys;
  ys.reserve(dy + 1);
  for (auto& row : grid) ys.emplace_back(std::move(row));
  return BivariatePolynomial(std::move(ys));
}

int BivariatePolynomial::deg_x() const {
  int dx = 0;
  for (const auto& p : s_) dx = std::max(dx, p.degree());
  return dx;
}

int BivariatePolynomial::total_degree() const {
  int deg = 0;
  for (int i = 0; i < static_cast<int>(s_.size()); ++i)
    for (int j = 0; j <= s_[i].degree(); ++j)
      if (s_[i].coeff(j) != Complex(0, 0)) deg = std::max(deg, i + j);
  return deg;
}

Complex BivariatePolynomial::eval(Complex x, Complex y) const {
  Complex acc(0, 0);
  for (auto it = s_.rbegin(); it != s_.rend(); ++it) acc = acc * y + (*it)(x);
  return acc;
}

Polynomial BivariatePolynomial::at_x(Complex x) const {
  std::vector<Complex> coeffs(s_.size());
  for (std::size_t i = 0; i < s_.size(); ++i) coeffs[i] = s_[i](x);
  return Polynomial(std::move(coeffs));
}

BivariatePolynomial BivariatePolynomial::d_dy() const {
  if (s_.size() <= 1) return BivariatePolynomial();
  std::vector<Polynomial> out(s_.size() - 1);
  for (std::size_t i = 1; i < s_.size(); ++i)
    out[i - 1] = s_[i] * Complex(static_cast<double>(i), 0.0);
  return BivariatePolynomial(std::move(out));
}

BivariatePolynomial BivariatePolynomial::d_dx() const {
  std::vector<Polynomial> out(s_.size());
  for (std::size_t i = 0; i < s_.size(); ++i) out[i] = s_[i].derivative();
  return BivariatePolynomial(std::move(out));
}

std::vector<BivariateTerm> BivariatePolynomial::terms() const {
  std::vector<BivariateTerm> out;
  for (int i = 0; i < static_cast<int>(s_.size()); ++i)
    for (int j = 0; j <= s_[i].degree(); ++j)
      if (s_[i].coeff(j) != Complex(0, 0))
        out.push_back({i, j, s_[i].coeff(j)});
  return out;
}

namespace {

// Determinant by partially pivoted LU; the matrix is small (2d-1 square).
Complex determinant(std::vector<std::vector<Complex>> m) {
  const std::size_t n = m.size();
  Complex det(1, 0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (std::abs(m[pivot][col]) == 0.0) return Complex(0, 0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      Complex factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

// Sylvester determinant of (Q, Q_y) in y, both specialized at x.
Complex sylvester_det_at(const BivariatePolynomial& Q,
                         const BivariatePolynomial& Qy, Complex x) {
  const int df = Q.deg_y();
  const int dg = Qy.deg_y();
  const int n = df + dg;
  if (n == 0) return Complex(1, 0);
  std::vector<std::vector<Complex>> m(n, std::vector<Complex>(n, Complex(0, 0)));
  // dg rows of Q coefficients (descending powers), then df rows of Qy.
  for (int r = 0; r < dg; ++r)
    for (int k = 0; k <= df; ++k) m[r][r + k] = Q.s(df - k)(x);
  for (int r = 0; r < df; ++r)
    for (int k = 0; k <= dg; ++k) m[dg + r][r + k] = Qy.s(dg - k)(x);
  return determinant(std::move(m));
}

}  // namespace

Polynomial discriminant_x(const BivariatePolynomial& Q) {
  if (Q.deg_y() < 1) throw ValidationError("deg_y must be >= 1");
  BivariatePolynomial Qy = Q.d_dy();
  const int d = Q.deg_y();
  const int dx = std::max(Q.deg_x(), 1);
  const int N = (2 * d - 1) * dx + 1;
  // Root-of-unity samples keep the interpolation unitary.
  std::vector<Complex> values(N);
  for (int k = 0; k < N; ++k) {
    Complex xk = std::polar(1.0, 2.0 * std::numbers::pi * k / N);
    values[k] = sylvester_det_at(Q, Qy, xk);
  }
  std::vector<Complex> coeffs(N, Complex(0, 0));
  for (int j = 0; j < N; ++j) {
    Complex acc(0, 0);
    for (int k = 0; k < N; ++k)
      acc += values[k] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / N);
    coeffs[j] = acc / static_cast<double>(N);
  }
  double maxc = 0.0;
  for (const Complex& c : coeffs) maxc = std::max(maxc, std::abs(c));
  if (maxc < 1e-250)
    throw ComputationError(
        "discriminant vanishes identically (degenerate curve)");
  for (Complex& c : coeffs)
    if (std::abs(c) < 1e-11 * maxc) c = Complex(0, 0);
  Polynomial delta(std::move(coeffs));
  // Residual cross-check at fresh points off the unit circle.
  for (int t = 0; t < 3; ++t) {
    Complex x = std::polar(1.13 + 0.11 * t, 0.37 + 1.1 * t);
    Complex direct = sylvester_det_at(Q, Qy, x);
    double scale = std::max({1.0, std::abs(direct), delta.eval_scale(x)});
    if (std::abs(delta(x) - direct) > 1e-6 * scale)
      throw ComputationError(
          "discriminant interpolation failed the residual cross-check "
          "(ill-conditioned coefficients)");
  }
  return delta;
}

}  // namespace rmz
