// Arithmetic structure of the frequency torus: the uniformity modulus,
// major arcs and annular frequency shells around rational points,
// normalized quadratic Gauss sums, the continuous-sphere radial
// transform, circle-method multipliers, and the sampled exponential-sum
// verifier.
//
// All set predicates use closed inequalities. The real-vector major-arc
// predicate allows a 3e-12 relative slack at the boundary so decimal
// inputs that land exactly on it (after rounding to binary) are treated
// as inside; the grid-indexed predicates use exact integer arithmetic
// and need no slack.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "latdist/types.hpp"

namespace latdist {

// floor(C / eta^2) with a 1e-9 relative snap toward the nearest integer,
// so decimal eta values whose C/eta^2 is an integer in exact arithmetic
// (e.g. eta = 0.1) are not knocked down by binary rounding.
std::int64_t q_eta_threshold(double eta, double C);

// lcm{1..floor(C/eta^2)}, exact big-integer arithmetic (the value grows
// like e^{C/eta^2} and overflows fixed width quickly).
boost::multiprecision::cpp_int q_eta(double eta, double C);

// Same value narrowed to 64 bits; throws std::overflow_error when the
// exact value does not fit.
std::uint64_t q_eta_u64(double eta, double C);

// True iff the torus distance from xi to the nearest point of
// (q^{-1} Z)^d is <= 1/L (closed, with the documented boundary slack).
bool in_major_arcs(std::span<const double> xi, std::int64_t q, double L);
// Grid frequency k/M variant, exact integer arithmetic.
bool in_major_arcs_grid(const Point& k, Coord M, std::int64_t q, double L);

// Annular shell membership: squared torus distance to the nearest point
// of (q_mod^{-1} Z)^d within [eta^2/lambda1, eta^{-2}/lambda0] (closed).
// The single-shell form is lambda0 = lambda1.
bool in_annulus(std::span<const double> xi, double eta, std::uint64_t q_mod,
                std::int64_t lambda0, std::int64_t lambda1);
bool in_annulus(std::span<const double> xi, double eta, std::uint64_t q_mod,
                std::int64_t lambda);
bool in_annulus_grid(const Point& k, Coord M, double eta, std::uint64_t q_mod,
                     std::int64_t lambda0, std::int64_t lambda1);

// Normalized complete quadratic Gauss sum
//   G(a/q, ell) = q^{-d} sum_{r in (Z/qZ)^d} e^{+2 pi i (a|r|^2 + ell.r)/q}
// with gcd(a, q) = 1 and 1 <= a <= q. The exponent separates over
// coordinates, so the value is a product of d one-dimensional sums.
// |G| <= 1 always; |G| = q^{-d/2} for odd prime q.
struct GaussSumParams {
  std::int64_t a = 1;
  std::int64_t q = 1;
  std::vector<std::int64_t> ell;  // length = dim
  int dim = 1;
};
std::complex<double> gauss_sum(const GaussSumParams& p);

// Radial Fourier transform at radius r of the unit-mass surface measure
// on the unit sphere of R^d: real, even, value 1 at r = 0, |value| <= 1.
// For d = 3 it reduces to sin(2 pi r)/(2 pi r).
double continuous_sphere_ft(double r, int dim);

// Circle-method single-fraction multiplier
//   m(xi) = sum_l G(a/q, l) bump(q (xi - l/q)) sphere_ft(sqrt(lambda) |xi - l/q|),
// where bump is radial, 1 on radius <= 1/8, supported in radius <= 1/4,
// so at most one l-term is nonzero per xi. lambda is the squared
// radius: the radial dilation uses sqrt(lambda).
std::complex<double> multiplier_m(std::int64_t a, std::int64_t q, double lambda,
                                  std::span<const double> xi);
// Factored form m = g * n: the Gauss-sum factor carries a wider bump
// (1 on radius <= 1/4, supported in <= 3/8) so it is exactly 1 where the
// narrow bump of the n-factor lives.
std::complex<double> multiplier_g(std::int64_t a, std::int64_t q,
                                  std::span<const double> xi);
double multiplier_n(std::int64_t q, double lambda, std::span<const double> xi);

// Smooth radial bumps used by the multipliers (exposed for tests):
// value 1 for |t| <= lo, 0 for |t| >= hi, smooth monotone in between.
double smooth_bump(double t, double lo, double hi);

// Sampled verifier for the exponential-sum decay outside major arcs.
// Draws n_samples frequencies uniformly from [0,1)^d, rejecting (or, with
// inside_arcs, keeping only) points of the union of arcs with denominator
// q <= q_cap and radius 1/L, L = sqrt(eta * lambda); q_cap =
// min(q_max, q_eta_threshold(eta, c_qeta)). Reports the maximum sampled
// |sigma_hat| and where it occurred. Deterministic for a fixed seed,
// independent of thread count (per-sample counter RNG; smallest sample
// index wins ties).
struct KeyUOptions {
  double c_qeta = 1.0;
  bool inside_arcs = false;
};
struct KeyUReport {
  int dim = 0;
  double eta = 0;
  std::int64_t lambda = 0;
  std::int64_t q_cap = 0;       // largest arc denominator tested
  std::int64_t threshold = 0;   // q_eta threshold before the cap
  double arc_l = 0;             // L with arc radius 1/L
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  bool inside_arcs = false;
  std::int64_t sphere_count = 0;
  bool degenerate_single_point = false;  // |S| == 1 forces |sum| == 1
  double max_abs = 0;
  std::vector<double> argmax_xi;
};
KeyUReport verify_keyU(int dim, double eta, std::int64_t lambda,
                       std::int64_t q_max, std::int64_t n_samples,
                       std::uint64_t seed, const KeyUOptions& opt = {});

}  // namespace latdist
