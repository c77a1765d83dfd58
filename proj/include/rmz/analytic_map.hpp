#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rmz/geometry.hpp"
#include "rmz/polynomial.hpp"

namespace rmz {

// Evaluation interface for a function regular on a stated domain disk. The
// derivative must agree with finite differences of value(); tests enforce
// the cross-check at random points.
class AnalyticMap {
 public:
  virtual ~AnalyticMap() = default;
  virtual Complex value(Complex x) const = 0;
  virtual Complex derivative(Complex x) const = 0;
  virtual Disk domain() const = 0;
  virtual std::string description() const = 0;
  // Zeros inside the domain, with multiplicity, when known.
  virtual std::vector<Complex> known_zeros() const { return {}; }
};

class PolynomialMap final : public AnalyticMap {
 public:
  PolynomialMap(Polynomial p, Disk domain)
      : p_(std::move(p)), dp_(p_.derivative()), domain_(domain) {}
  Complex value(Complex x) const override { return p_(x); }
  Complex derivative(Complex x) const override { return dp_(x); }
  Disk domain() const override { return domain_; }
  std::string description() const override { return "polynomial"; }
  const Polynomial& poly() const { return p_; }

 private:
  Polynomial p_;
  Polynomial dp_;
  Disk domain_;
};

class CallableMap final : public AnalyticMap {
 public:
  using Fn = std::function<Complex(Complex)>;
  CallableMap(Fn value, Fn deriv, Disk domain, std::string desc,
              std::vector<Complex> zeros = {})
      : value_(std::move(value)),
        deriv_(std::move(deriv)),
        domain_(domain),
        desc_(std::move(desc)),
        zeros_(std::move(zeros)) {}
  Complex value(Complex x) const override { return value_(x); }
  Complex derivative(Complex x) const override { return deriv_(x); }
  Disk domain() const override { return domain_; }
  std::string description() const override { return desc_; }
  std::vector<Complex> known_zeros() const override { return zeros_; }

 private:
  Fn value_;
  Fn deriv_;
  Disk domain_;
  std::string desc_;
  std::vector<Complex> zeros_;
};

// f(x) = x^p + x^N on the disk of radius 1/3; (s,p)-valent there for every
// s < p once N >= 10p + 1 (warns on smaller N).
std::shared_ptr<AnalyticMap> power_sum_example(int p, int N);

}  // namespace rmz
