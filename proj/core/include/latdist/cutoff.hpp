// Smooth arithmetic cutoff kernels on the sublattice (qZ)^d and their
// sharp box counterpart.
//
// The frequency-side profile is the normalized autocorrelation of the
// standard compactly supported smooth bump b (support radius 1/2):
//   profile(r) = (b*b)(r) / (b*b)(0),
// radial, equal to 1 at 0, within [0,1], and 0 for r >= 1. Its inverse
// transform psi is a nonnegative Schwartz-class radial function; the
// space-side kernel places (q/L)^d psi(x/L) on x in (qZ)^d and 0
// elsewhere, so its lattice mass is exactly 1 for L >= q and its
// lattice Fourier transform is sum_l profile(L |xi - l/q|) in [0, 1].
// The sharp counterpart chi places the constant (q/L)^d on
// (qZ)^d intersected with the centered box [-L/2, L/2]^d.
//
// Radial profiles are tabulated once per dimension by high-order
// quadrature (absolute accuracy ~1e-8 or better) and shared.
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "latdist/types.hpp"

namespace latdist {

namespace detail {
struct RadialTables;  // per-dimension cached profile tables
}

class CutoffProfile {
 public:
  int dim() const { return dim_; }
  std::int64_t q() const { return q_; }
  double L() const { return L_; }

  // Frequency-side radial profile at radius r; 1 at 0, 0 for r >= 1.
  double profile(double r) const;
  // Space-side radial profile psi at radius s (in units of L before the
  // (q/L)^d normalization); nonnegative, fast-decaying.
  double psi(double s) const;

  // Kernel value at a lattice point: (q/L)^d psi(|x|/L) when every
  // coordinate of x is divisible by q, else 0.
  double lattice_value(const Point& x) const;

  // Lattice Fourier transform sum_l profile(L |xi - l/q|); real, in [0,1].
  double fourier(std::span<const double> xi) const;

  // Total kernel mass sum over (qZ)^d (radial reduction over squared
  // norms, exact integer representation counts); equals 1 within 1e-8
  // for L >= q.
  double lattice_mass() const;
  // Mass of the tail sum over lattice points with |x| >= radius.
  double tail_mass(double radius) const;

  // Multiplier values fourier(k/M) for every k on the grid of side M
  // (row-major layout, matching Spectrum indexing).
  std::vector<double> grid_multiplier(Coord M) const;

 private:
  friend CutoffProfile build_cutoff(int, std::int64_t, double, int);
  int dim_ = 0;
  std::int64_t q_ = 1;
  double L_ = 1.0;
  std::shared_ptr<const detail::RadialTables> tables_;
};

// Builds the kernel for modulus q and scale L (requires 1 <= q <= L).
// `resolution` is an optional table refinement hint: 0 selects the
// library default; r > 0 multiplies the default table densities by 2^r
// (the default already meets the documented accuracy).
// Throws std::invalid_argument when q < 1 or q > L.
CutoffProfile build_cutoff(int dim, std::int64_t q, double L, int resolution = 0);

// Sharp box kernel: value (q/L)^d on (qZ)^d within [-L/2, L/2]^d.
struct ChiKernel {
  int dim = 0;
  std::int64_t q = 1;
  double L = 1.0;
  std::int64_t half_count = 0;  // floor(L / (2q)): per-axis multiples kept
  double cell_value = 1.0;      // (q/L)^d

  double value(const Point& x) const;
  // Total mass ((2*half_count + 1) * q / L)^d.
  double mass() const;
};
ChiKernel chi_builder(int dim, std::int64_t q, double L);

// Exact l1 distance || chi_{q,L} * psi_{q,L1} - psi_{q,L1} ||_1 summed
// over the lattice (qZ)^d; requires L1 >= L >= q. Its size is governed
// by L/L1 (reported constant c with distance <= c L/L1 in tests).
double cutoff_l1_comparison(int dim, std::int64_t q, double L, double L1);

}  // namespace latdist
