#pragma once

// Truncated multivariate Taylor arithmetic ("jets").  A Jet carries the value
// and all mixed partial derivatives of a scalar, up to a truncation order, at
// a base point; arithmetic and the usual elementary functions propagate them
// exactly (to rounding), so derivative extraction needs no step-size tuning.
//
// Coefficients are stored as Taylor coefficients f^(alpha)/alpha! in graded
// lexicographic multi-index order.  Because the order is graded, the slots of
// every lower order form a prefix, which makes truncation a plain copy.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace rblab {

class Jet {
public:
  static constexpr int kMaxVars = 3;
  static constexpr int kMaxOrder = 4;
  static constexpr int kMaxCoeffs = 35;  // C(3+4,4), the worst case

  Jet() : nvars_(1), order_(0) { c_[0] = 0.0; }

  static Jet constant(double v, int nvars, int order);
  // the coordinate function x_var, seeded for differentiation
  static Jet variable(double v, int var, int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  int ncoeffs() const;

  double value() const { return c_[0]; }
  double& raw(int slot) { return c_[slot]; }
  double raw(int slot) const { return c_[slot]; }

  // mixed partial derivatives (Taylor coefficient times alpha!)
  double deriv1(int i) const;
  double deriv2(int i, int j) const;
  double deriv3(int i, int j, int k) const;

  Jet truncated(int new_order) const;
  // partial derivative as a jet one order lower
  Jet d(int var) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(double s) { c_[0] += s; return *this; }
  Jet& operator-=(double s) { c_[0] -= s; return *this; }
  Jet& operator*=(double s);
  Jet& operator/=(double s) { return *this *= (1.0 / s); }

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(const Jet& a, double s) { Jet r = a; r += s; return r; }
  friend Jet operator+(double s, const Jet& a) { return a + s; }
  friend Jet operator-(const Jet& a, double s) { Jet r = a; r -= s; return r; }
  friend Jet operator-(double s, const Jet& a) { Jet r = -a; r += s; return r; }
  friend Jet operator*(const Jet& a, double s) { Jet r = a; r *= s; return r; }
  friend Jet operator*(double s, const Jet& a) { return a * s; }
  friend Jet operator/(const Jet& a, double s) { Jet r = a; r *= 1.0 / s; return r; }
  friend Jet operator/(double s, const Jet& a) { return recip(a) * s; }

  friend Jet recip(const Jet& u);
  friend Jet exp(const Jet& u);
  friend Jet log(const Jet& u);
  friend Jet sqrt(const Jet& u);
  friend Jet pow(const Jet& u, double e);
  friend Jet sin(const Jet& u);
  friend Jet cos(const Jet& u);
  friend Jet sinh(const Jet& u);
  friend Jet cosh(const Jet& u);

  // evaluate the power series sum a_k (u - u0)^k, truncated; used by all the
  // elementary functions above
  static Jet apply_series(const Jet& u, std::span<const double> a);

private:
  int8_t nvars_, order_;
  std::array<double, kMaxCoeffs> c_;

  static Jet zeros(int nvars, int order);
};

// Coordinates of a chart point, seeded as jet variables.
using JetPoint = std::vector<Jet>;

JetPoint seed_point(std::span<const double> p, int order);

}  // namespace rblab
