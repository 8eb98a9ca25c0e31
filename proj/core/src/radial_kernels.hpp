// Internal numerical kernels shared by the cutoff construction and the
// continuous-sphere transform: the entire radial function
//   g_nu(z) = J_nu(z) / z^nu   (nu = d/2 - 1),
// Gauss-Legendre rules, Kahan-compensated accumulation, and uniform-grid
// cubic splines (clamped flat at the left endpoint, natural at the
// right, matching even radial profiles that decay to zero).
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace latdist::detail {

// g_{d/2-1}(z) for ambient dimension d in [1, 8]; even in z, entire,
// g(0) = 1 / (2^nu Gamma(nu+1)).
double g_radial(int dim, double z);

// Gauss-Legendre nodes and weights on [-1, 1], computed in long double.
struct GaussLegendre {
  std::vector<long double> nodes;
  std::vector<long double> weights;
};
const GaussLegendre& gauss_legendre(int n);  // cached per n

// Compensated accumulator (Kahan-Babuska) in long double.
struct Kahan {
  long double sum = 0.0L;
  long double c = 0.0L;
  void add(long double v) {
    const long double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      c += (sum - t) + v;
    else
      c += (v - t) + sum;
    sum = t;
  }
  long double value() const { return sum + c; }
};

// Cubic spline on the uniform grid x0 + i*h, i = 0..n, with y'(x0) = 0
// (clamped flat: even radial profile) and y''(x_n) = 0 (natural: decayed
// tail). eval clamps its argument to the grid range.
class CubicSpline {
 public:
  static CubicSpline build(double x0, double h, std::vector<double> y);
  double eval(double x) const;
  double x_end() const { return x0_ + h_ * static_cast<double>(y_.size() - 1); }

 private:
  double x0_ = 0, h_ = 1;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

}  // namespace latdist::detail
