// Exact discrete Fourier analysis on the grid, and the normalized
// exponential sum over a sphere.
//
// Conventions: the forward transform is unnormalized,
//   F(k) = sum_x f(x) e^{-2 pi i x.k / M},
// and the inverse carries the factor M^{-d}. Frequencies are the grid
// points k/M in [0,1)^d. With these conventions Parseval reads
//   <f, g>_space = M^{-d} <F, G>_freq.
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "latdist/grid.hpp"
#include "latdist/lattice.hpp"
#include "latdist/types.hpp"

namespace latdist {

struct Spectrum {
  int dim = 0;
  Coord side = 0;
  std::vector<std::complex<double>> values;  // side^dim entries, row-major

  std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
};

Spectrum dft(const GridFunction& f);
// Inverse transform (applies M^{-d}); the result's boundary metadata is
// restored from the supplied mode/support (defaults: periodic, full side).
GridFunction idft(const Spectrum& F, BoundaryMode mode = BoundaryMode::periodic,
                  Coord support_side = 0);

// |<f,g>_space - M^{-d}<F,G>_freq| evaluated from scratch on both sides.
double parseval_check(const GridFunction& f, const GridFunction& g);

// Normalized exponential sum over the sphere:
//   |S|^{-1} sum_{x in S} e^{-2 pi i x.xi}.
// The sphere is symmetric under negation, so the sum is exactly real;
// it is computed by pairing x with -x (2 cos terms), which makes the
// imaginary part vanish by construction. |result| <= 1 always.
// Throws std::invalid_argument on an empty sphere or dimension mismatch.
double sigma_hat(const Sphere& S, std::span<const double> xi);

// The same values on the full frequency grid via an independent route:
// embed the sphere's counting measure (points reduced mod M, optionally
// dilated by q) into the grid and take its DFT divided by |S|.
Spectrum sigma_hat_grid(const Sphere& S, Coord M, std::int64_t q = 1);

// Pointwise multiply spectrum by a (real or complex) multiplier array.
Spectrum multiply(const Spectrum& F, const Spectrum& G);

// L2 norm sqrt(sum |f|^2) over the grid.
double l2_norm(const GridFunction& f);

}  // namespace latdist
