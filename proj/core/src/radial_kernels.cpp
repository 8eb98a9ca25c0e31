#include "radial_kernels.hpp"

#include <math.h>  // j0, j1 (POSIX Bessel functions)

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace latdist::detail {

namespace {

constexpr double kSqrt2OverPi = 0.7978845608028653558798921198687637;  // sqrt(2/pi)

// Power series g_nu(z) = 2^{-nu} sum_m (-z^2/4)^m / (m! Gamma(nu+m+1)),
// accurate for small |z| (used below the closed forms' stable range).
double g_series(double nu, double z) {
  const double q = -0.25 * z * z;
  double term = std::exp(-nu * std::numbers::ln2 - std::lgamma(nu + 1.0));
  double sum = term;
  for (int m = 1; m <= 60; ++m) {
    term *= q / (static_cast<double>(m) * (nu + static_cast<double>(m)));
    sum += term;
    if (std::abs(term) < 1e-19 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double g_radial(int dim, double z) {
  if (dim < 1 || dim > 8)
    throw std::invalid_argument("g_radial: dimension must be in [1, 8]");
  z = std::abs(z);
  const double nu = 0.5 * static_cast<double>(dim) - 1.0;
  if (z < 0.5) return g_series(nu, z);
  switch (dim) {
    case 1:  // nu = -1/2
      return kSqrt2OverPi * std::cos(z);
    case 2:  // nu = 0
      return j0(z);
    case 3:  // nu = 1/2
      return kSqrt2OverPi * std::sin(z) / z;
    case 4:  // nu = 1
      return j1(z) / z;
    case 5:  // nu = 3/2
      return kSqrt2OverPi * (std::sin(z) - z * std::cos(z)) / (z * z * z);
    default: {
      // nu in {2, 5/2, 3}: one step of the stable-upward recurrence
      // g_{nu+1}(z) = (2 nu g_nu(z) - g_{nu-1}(z)) / z^2 from dim-2, dim-4.
      const double gm2 = g_radial(dim - 4, z);  // nu - 1
      const double gm1 = g_radial(dim - 2, z);  // nu
      const double nu_prev = nu - 1.0;
      return (2.0 * nu_prev * gm1 - gm2) / (z * z);
    }
  }
}

namespace {
std::mutex g_gl_mu;
std::map<int, std::shared_ptr<const GaussLegendre>> g_gl;
}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  std::lock_guard<std::mutex> lk(g_gl_mu);
  auto it = g_gl.find(n);
  if (it != g_gl.end()) return *it->second;
  auto rule = std::make_shared<GaussLegendre>();
  rule->nodes.resize(static_cast<std::size_t>(n));
  rule->weights.resize(static_cast<std::size_t>(n));
  const long double pi = std::numbers::pi_v<long double>;
  for (int i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev-angle initial guess.
    long double x = std::cos(pi * (static_cast<long double>(i) + 0.75L) /
                             (static_cast<long double>(n) + 0.5L));
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) /
                               static_cast<long double>(k);
        p0 = p1;
        p1 = p2;
      }
      const long double dp = static_cast<long double>(n) * (x * p1 - p0) /
                             (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-20L) break;
    }
    long double p0 = 1.0L, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) /
                             static_cast<long double>(k);
      p0 = p1;
      p1 = p2;
    }
    const long double dp = static_cast<long double>(n) * (x * p1 - p0) /
                           (x * x - 1.0L);
    rule->nodes[static_cast<std::size_t>(i)] = x;
    rule->weights[static_cast<std::size_t>(i)] = 2.0L / ((1.0L - x * x) * dp * dp);
  }
  auto& slot = g_gl[n];
  slot = rule;
  return *slot;
}

CubicSpline CubicSpline::build(double x0, double h, std::vector<double> y) {
  if (y.size() < 3) throw std::invalid_argument("CubicSpline: need at least 3 knots");
  if (h <= 0) throw std::invalid_argument("CubicSpline: step must be positive");
  const std::size_t n = y.size() - 1;  // intervals
  std::vector<double> diag(n + 1), rhs(n + 1), upper(n + 1);
  // Clamped-flat left end: 2 m0 + m1 = 6 (y1 - y0) / h^2.
  diag[0] = 2.0;
  upper[0] = 1.0;
  rhs[0] = 6.0 * (y[1] - y[0]) / (h * h);
  for (std::size_t i = 1; i < n; ++i) {
    diag[i] = 4.0;
    upper[i] = 1.0;
    rhs[i] = 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (h * h);
  }
  // Natural right end: m_n = 0.
  diag[n] = 1.0;
  upper[n] = 0.0;
  rhs[n] = 0.0;
  // Thomas solve (lower diagonal is 1 for rows 1..n-1, 0 for row n).
  for (std::size_t i = 1; i < n; ++i) {
    const double w = 1.0 / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> m(n + 1);
  m[n] = 0.0;
  for (std::size_t i = n; i-- > 0;)
    m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
  CubicSpline s;
  s.x0_ = x0;
  s.h_ = h;
  s.y_ = std::move(y);
  s.m_ = std::move(m);
  return s;
}

double CubicSpline::eval(double x) const {
  const std::size_t n = y_.size() - 1;
  double t = (x - x0_) / h_;
  if (t <= 0.0) t = 0.0;
  if (t >= static_cast<double>(n)) t = static_cast<double>(n);
  std::size_t i = static_cast<std::size_t>(t);
  if (i >= n) i = n - 1;
  const double u = t - static_cast<double>(i);
  const double a = 1.0 - u;
  return a * y_[i] + u * y_[i + 1] +
         (h_ * h_ / 6.0) * ((a * a * a - a) * m_[i] + (u * u * u - u) * m_[i + 1]);
}

}  // namespace latdist::detail
