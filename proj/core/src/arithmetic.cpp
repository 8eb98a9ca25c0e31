#include "latdist/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "latdist/lattice.hpp"
#include "latdist/parallel.hpp"
#include "latdist/rng.hpp"
#include "latdist/spectral.hpp"
#include "radial_kernels.hpp"

namespace latdist {

namespace {
constexpr double kArcSlack = 3e-12;  // relative boundary slack, see header
}

std::int64_t q_eta_threshold(double eta, double C) {
  if (!(eta > 0.0) || !(C > 0.0))
    throw std::invalid_argument("q_eta: eta and C must be positive");
  const double t = C / (eta * eta);
  if (t < 1.0)
    throw std::invalid_argument("q_eta: threshold C/eta^2 must be >= 1");
  if (t > 9e15) throw std::overflow_error("q_eta: threshold too large");
  return static_cast<std::int64_t>(std::floor(t + 1e-9 * std::max(1.0, t)));
}

boost::multiprecision::cpp_int q_eta(double eta, double C) {
  const std::int64_t n = q_eta_threshold(eta, C);
  boost::multiprecision::cpp_int acc = 1;
  for (std::int64_t k = 2; k <= n; ++k)
    acc = boost::multiprecision::lcm(acc, boost::multiprecision::cpp_int(k));
  return acc;
}

std::uint64_t q_eta_u64(double eta, double C) {
  const auto v = q_eta(eta, C);
  if (v > boost::multiprecision::cpp_int(std::numeric_limits<std::uint64_t>::max()))
    throw std::overflow_error("q_eta: value exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

bool in_major_arcs(std::span<const double> xi, std::int64_t q, double L) {
  if (q < 1) throw std::invalid_argument("in_major_arcs: q must be >= 1");
  if (!(L > 0.0)) throw std::invalid_argument("in_major_arcs: L must be positive");
  double d2 = 0.0;
  for (double x : xi) {
    const double v = x * static_cast<double>(q);
    const double r = v - std::round(v);
    d2 += r * r / (static_cast<double>(q) * static_cast<double>(q));
  }
  return d2 * L * L <= 1.0 + kArcSlack;
}

bool in_major_arcs_grid(const Point& k, Coord M, std::int64_t q, double L) {
  if (q < 1) throw std::invalid_argument("in_major_arcs_grid: q must be >= 1");
  if (M < 1) throw std::invalid_argument("in_major_arcs_grid: M must be >= 1");
  if (!(L > 0.0)) throw std::invalid_argument("in_major_arcs_grid: L must be positive");
  // Distance from k_i/M to the nearest multiple of 1/q is
  // min(r, Mq - r) / (M q) with r = (k_i q) mod (M q)... equivalently the
  // residue of k_i q mod M over M q. Exact in integers.
  long double d2_num = 0.0L;  // sum of squared numerators over (M q)^2
  for (Coord ki : k) {
    std::int64_t r = (static_cast<std::int64_t>(ki) * q) % M;
    if (r < 0) r += M;
    const std::int64_t rr = std::min(r, M - r);
    d2_num += static_cast<long double>(rr) * rr;
  }
  const long double mq = static_cast<long double>(M) * static_cast<long double>(q);
  return d2_num * static_cast<long double>(L) * L <= mq * mq;
}

namespace {

// Squared torus distance to the nearest point of (q^{-1} Z)^d.
double nearest_sq_dist(std::span<const double> xi, std::uint64_t q_mod) {
  double d2 = 0.0;
  for (double x : xi) {
    const double v = x * static_cast<double>(q_mod);
    const double r = v - std::round(v);
    d2 += r * r / (static_cast<double>(q_mod) * static_cast<double>(q_mod));
  }
  return d2;
}

}  // namespace

bool in_annulus(std::span<const double> xi, double eta, std::uint64_t q_mod,
                std::int64_t lambda0, std::int64_t lambda1) {
  if (!(eta > 0.0) || q_mod < 1 || lambda0 < 1 || lambda1 < lambda0)
    throw std::invalid_argument("in_annulus: bad parameters");
  const double d2 = nearest_sq_dist(xi, q_mod);
  const double lo = eta * eta / static_cast<double>(lambda1);
  const double hi = 1.0 / (eta * eta * static_cast<double>(lambda0));
  return d2 >= lo && d2 <= hi;
}

bool in_annulus(std::span<const double> xi, double eta, std::uint64_t q_mod,
                std::int64_t lambda) {
  return in_annulus(xi, eta, q_mod, lambda, lambda);
}

bool in_annulus_grid(const Point& k, Coord M, double eta, std::uint64_t q_mod,
                     std::int64_t lambda0, std::int64_t lambda1) {
  if (!(eta > 0.0) || q_mod < 1 || lambda0 < 1 || lambda1 < lambda0 || M < 1)
    throw std::invalid_argument("in_annulus_grid: bad parameters");
  // Exact integer numerators as in in_major_arcs_grid.
  long double d2_num = 0.0L;
  const std::int64_t q = static_cast<std::int64_t>(q_mod);
  for (Coord ki : k) {
    std::int64_t r = (static_cast<std::int64_t>(ki) * q) % M;
    if (r < 0) r += M;
    const std::int64_t rr = std::min(r, M - r);
    d2_num += static_cast<long double>(rr) * rr;
  }
  const long double mq2 = static_cast<long double>(M) * q * static_cast<long double>(M) * q;
  const long double d2 = d2_num / mq2;
  const long double lo =
      static_cast<long double>(eta) * eta / static_cast<long double>(lambda1);
  const long double hi =
      1.0L / (static_cast<long double>(eta) * eta * static_cast<long double>(lambda0));
  return d2 >= lo && d2 <= hi;
}

std::complex<double> gauss_sum(const GaussSumParams& p) {
  if (p.q < 1 || p.a < 1 || p.a > p.q)
    throw std::invalid_argument("gauss_sum: need 1 <= a <= q");
  if (std::gcd(p.a, p.q) != 1)
    throw std::invalid_argument("gauss_sum: a and q must be coprime");
  if (p.dim < 1 || static_cast<int>(p.ell.size()) != p.dim)
    throw std::invalid_argument("gauss_sum: ell length must equal dim");
  // Separable: product over coordinates of the one-dimensional sums
  //   q^{-1} sum_r e^{+2 pi i (a r^2 + ell_i r)/q},
  // with the root of unity looked up by exact residue.
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(p.q));
  for (std::int64_t j = 0; j < p.q; ++j) {
    const long double a =
        2.0L * std::numbers::pi_v<long double> * static_cast<long double>(j) /
        static_cast<long double>(p.q);
    roots[static_cast<std::size_t>(j)] = {static_cast<double>(std::cos(a)),
                                          static_cast<double>(std::sin(a))};
  }
  std::complex<double> prod{1.0, 0.0};
  for (int i = 0; i < p.dim; ++i) {
    std::complex<long double> acc{0.0L, 0.0L};
    for (std::int64_t r = 0; r < p.q; ++r) {
      std::int64_t e = (p.a % p.q) * ((r * r) % p.q) % p.q;
      std::int64_t lr = ((p.ell[static_cast<std::size_t>(i)] % p.q) + p.q) % p.q;
      e = (e + lr * r) % p.q;
      const auto w = roots[static_cast<std::size_t>(e)];
      acc += std::complex<long double>(w.real(), w.imag());
    }
    prod *= std::complex<double>(static_cast<double>(acc.real() / p.q),
                                 static_cast<double>(acc.imag() / p.q));
  }
  return prod;
}

double continuous_sphere_ft(double r, int dim) {
  if (dim < 1) throw std::invalid_argument("continuous_sphere_ft: dim must be >= 1");
  // Unit-mass surface measure on the unit sphere of R^d has the radial
  // transform Gamma(d/2) 2^{d/2-1} g_{d/2-1}(2 pi r): value 1 at r = 0.
  // Total mass makes the zero value exactly 1 and bounds the magnitude by
  // 1 everywhere; the clamp removes sub-ulp overshoot from the series.
  if (r == 0.0) return 1.0;
  const double nu = 0.5 * static_cast<double>(dim) - 1.0;
  const double front = std::tgamma(0.5 * static_cast<double>(dim)) * std::pow(2.0, nu);
  return std::clamp(front * detail::g_radial(dim, 2.0 * std::numbers::pi * r), -1.0, 1.0);
}

double smooth_bump(double t, double lo, double hi) {
  t = std::abs(t);
  if (t <= lo) return 1.0;
  if (t >= hi) return 0.0;
  // Smooth partition step h(a)/(h(a)+h(1-a)) with h(a) = exp(-1/a).
  const double a = (hi - t) / (hi - lo);
  const double ha = std::exp(-1.0 / a);
  const double hb = std::exp(-1.0 / (1.0 - a));
  return ha / (ha + hb);
}

namespace {

// Nearest rational point l/q to xi, written into l; returns |xi - l/q|.
double nearest_rational(std::span<const double> xi, std::int64_t q,
                        std::vector<std::int64_t>& l) {
  l.resize(xi.size());
  double d2 = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    l[i] = static_cast<std::int64_t>(std::llround(xi[i] * static_cast<double>(q)));
    const double diff = xi[i] - static_cast<double>(l[i]) / static_cast<double>(q);
    d2 += diff * diff;
  }
  return std::sqrt(d2);
}

}  // namespace

std::complex<double> multiplier_m(std::int64_t a, std::int64_t q, double lambda,
                                  std::span<const double> xi) {
  if (!(lambda > 0.0)) throw std::invalid_argument("multiplier_m: lambda must be positive");
  std::vector<std::int64_t> l;
  const double dist = nearest_rational(xi, q, l);
  const double b = smooth_bump(static_cast<double>(q) * dist, 0.125, 0.25);
  if (b == 0.0) return {0.0, 0.0};
  GaussSumParams p;
  p.a = a;
  p.q = q;
  p.dim = static_cast<int>(xi.size());
  p.ell.resize(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i)
    p.ell[i] = ((l[i] % q) + q) % q;
  const std::complex<double> G = gauss_sum(p);
  const double s = continuous_sphere_ft(std::sqrt(lambda) * dist,
                                        static_cast<int>(xi.size()));
  return G * (b * s);
}

std::complex<double> multiplier_g(std::int64_t a, std::int64_t q,
                                  std::span<const double> xi) {
  std::vector<std::int64_t> l;
  const double dist = nearest_rational(xi, q, l);
  const double b = smooth_bump(static_cast<double>(q) * dist, 0.25, 0.375);
  if (b == 0.0) return {0.0, 0.0};
  GaussSumParams p;
  p.a = a;
  p.q = q;
  p.dim = static_cast<int>(xi.size());
  p.ell.resize(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i)
    p.ell[i] = ((l[i] % q) + q) % q;
  return gauss_sum(p) * b;
}

double multiplier_n(std::int64_t q, double lambda, std::span<const double> xi) {
  if (!(lambda > 0.0)) throw std::invalid_argument("multiplier_n: lambda must be positive");
  std::vector<std::int64_t> l;
  const double dist = nearest_rational(xi, q, l);
  const double b = smooth_bump(static_cast<double>(q) * dist, 0.125, 0.25);
  if (b == 0.0) return 0.0;
  return b * continuous_sphere_ft(std::sqrt(lambda) * dist,
                                  static_cast<int>(xi.size()));
}

KeyUReport verify_keyU(int dim, double eta, std::int64_t lambda,
                       std::int64_t q_max, std::int64_t n_samples,
                       std::uint64_t seed, const KeyUOptions& opt) {
  if (dim < 1) throw std::invalid_argument("verify_keyU: dim must be >= 1");
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("verify_keyU: eta must lie in (0,1)");
  if (lambda < 0) throw std::invalid_argument("verify_keyU: lambda must be >= 0");
  if (q_max < 1) throw std::invalid_argument("verify_keyU: q_max must be >= 1");
  if (n_samples < 1) throw std::invalid_argument("verify_keyU: need n_samples >= 1");

  const Sphere S = enumerate_sphere(dim, lambda);
  if (S.empty()) throw std::invalid_argument("verify_keyU: empty sphere");

  KeyUReport rep;
  rep.dim = dim;
  rep.eta = eta;
  rep.lambda = lambda;
  rep.threshold = q_eta_threshold(eta, opt.c_qeta);
  rep.q_cap = std::min(q_max, rep.threshold);
  rep.arc_l = std::sqrt(eta * static_cast<double>(lambda));
  rep.n_samples = n_samples;
  rep.seed = seed;
  rep.inside_arcs = opt.inside_arcs;
  rep.sphere_count = S.count();
  rep.degenerate_single_point = (S.count() == 1);

  if (rep.degenerate_single_point) {
    // A one-point sphere gives |sum| == 1 at every frequency, and its arc
    // scale sqrt(eta * lambda) collapses to zero, so the arc family is the
    // whole torus; report the trivial maximum at the first sample point.
    std::vector<double> xi(static_cast<std::size_t>(dim));
    for (int c = 0; c < dim; ++c)
      xi[static_cast<std::size_t>(c)] =
          rng_uniform01(seed, 0, static_cast<std::uint64_t>(c));
    rep.max_abs = 1.0;
    rep.argmax_xi = xi;
    return rep;
  }

  auto in_family = [&](std::span<const double> xi) {
    for (std::int64_t q = 1; q <= rep.q_cap; ++q)
      if (in_major_arcs(xi, q, rep.arc_l)) return true;
    return false;
  };

  // Per-sample rejection sampling on private counter streams: sample i
  // draws vectors at indices i*kTry, i*kTry+1, ... so results never
  // depend on other samples or on the worker count.
  constexpr std::uint64_t kTry = 4096;
  std::vector<double> abs_val(static_cast<std::size_t>(n_samples), -1.0);
  std::vector<std::vector<double>> where(static_cast<std::size_t>(n_samples));
  parallel_for(0, n_samples, [&](std::int64_t i) {
    std::vector<double> xi(static_cast<std::size_t>(dim));
    bool ok = false;
    for (std::uint64_t t = 0; t < kTry && !ok; ++t) {
      for (int c = 0; c < dim; ++c)
        xi[static_cast<std::size_t>(c)] = rng_uniform01(
            seed, static_cast<std::uint64_t>(i),
            t * static_cast<std::uint64_t>(dim) + static_cast<std::uint64_t>(c));
      const bool inside = in_family(xi);
      ok = opt.inside_arcs ? inside : !inside;
    }
    if (!ok)
      throw std::runtime_error(
          "verify_keyU: rejection sampling failed (arc family nearly "
          "covers or misses the torus at these parameters)");
    abs_val[static_cast<std::size_t>(i)] = std::abs(sigma_hat(S, xi));
    where[static_cast<std::size_t>(i)] = xi;
  });
  std::int64_t best = 0;
  for (std::int64_t i = 1; i < n_samples; ++i)
    if (abs_val[static_cast<std::size_t>(i)] > abs_val[static_cast<std::size_t>(best)])
      best = i;  // strict: smallest index wins ties
  rep.max_abs = abs_val[static_cast<std::size_t>(best)];
  rep.argmax_xi = where[static_cast<std::size_t>(best)];
  return rep;
}

}  // namespace latdist
