// Spherical averaging, the maximal operator over a range of squared
// radii, and its mollified (high-frequency) variant.
//
// The average at squared radius lambda is the convolution with the
// normalized counting measure of the sphere, optionally dilated by an
// integer scale q:
//   (A f)(x) = |S|^{-1} sum_{y in S} f(x - q y).
// The maximal operator takes the pointwise sup of |A f| over every
// integer lambda in [lambda0, lambda1] with a nonempty sphere. The
// mollified operator first removes the low-frequency part of f carried
// by the arithmetic cutoff at modulus q_eta and scale L2 = eta *
// sqrt(lambda0), then applies the maximal operator.
#pragma once

#include <cstdint>

#include "latdist/cutoff.hpp"
#include "latdist/grid.hpp"
#include "latdist/lattice.hpp"

namespace latdist {

enum class AvgRoute {
  automatic,  // direct when |S| * M^d is small, spectral otherwise
  direct,     // explicit sphere sum
  spectral,   // multiplier route through the DFT
};

// Requires a nonempty sphere of matching dimension; in periodic mode the
// dilation q must divide the grid side; in truncate mode the declared
// support plus the sphere's reach q*ceil(sqrt(lambda)) must fit inside
// the grid on both sides (padding check). Throws std::invalid_argument
// on violations.
GridFunction spherical_average(const GridFunction& f, const Sphere& S,
                               std::int64_t q = 1,
                               AvgRoute route = AvgRoute::automatic);

// Pointwise sup of |A f| over integer lambda in [lambda0, lambda1]
// (empty spheres skipped; throws std::invalid_argument if every sphere
// in the range is empty). Output is real-valued (imaginary parts 0).
GridFunction maximal_average(const GridFunction& f, std::int64_t lambda0,
                             std::int64_t lambda1, std::int64_t q = 1);

struct MollifiedOptions {
  double c_qeta = 1.0;           // constant in the uniformity modulus
  std::int64_t modulus_override = 0;  // > 0: use this modulus instead
};

// maximal_average(f - f * cutoff, lambda0, lambda1) with the cutoff at
// modulus q_m (q_eta(eta, c_qeta) unless overridden) and scale
// L2 = eta * sqrt(lambda0). Requires periodic mode, lambda0 >= 1,
// eta in (0,1), and the non-degeneracy condition L2 >= q_m; a scale
// below the modulus leaves no room for the kernel and is rejected with
// std::domain_error.
GridFunction mollified_maximal(const GridFunction& f, double eta,
                               std::int64_t lambda0, std::int64_t lambda1,
                               const MollifiedOptions& opt = {});

// ||output||_2 / ||f||_2; throws std::invalid_argument when ||f||_2 = 0.
double l2_ratio(const GridFunction& output, const GridFunction& f);

}  // namespace latdist
