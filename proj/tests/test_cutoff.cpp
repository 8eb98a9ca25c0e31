// Arithmetic cutoff kernels: frequency-profile anchors and range, the
// space profile against an independent slice-projection quadrature
// oracle, lattice support/mass/tail behavior, the lattice Fourier
// transform against a direct space-side summation (Poisson route), grid
// multipliers, the sharp box kernel, and the l1 kernel comparison.
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "latdist/cutoff.hpp"
#include "latdist/rng.hpp"
#include "latdist/types.hpp"
#include "oracle_helpers.hpp"

using latdist::ChiKernel;
using latdist::CutoffProfile;
using latdist::Point;

TEST_CASE("build_cutoff validates its scale ordering") {
  CHECK_THROWS_AS(latdist::build_cutoff(2, 0, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(latdist::build_cutoff(2, 5, 4.0), std::invalid_argument);
  CHECK_NOTHROW(latdist::build_cutoff(2, 4, 4.0));
}

TEST_CASE("frequency profile is a normalized bump autocorrelation") {
  const CutoffProfile c = latdist::build_cutoff(2, 1, 4.0);
  CHECK(c.profile(0.0) == 1.0);
  for (double r = 0.0; r <= 1.25; r += 0.01) {
    const double v = c.profile(r);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    if (r >= 1.0) CHECK(v == 0.0);
  }
  // Strictly decreasing away from full overlap on a coarse grid.
  CHECK(c.profile(0.2) > c.profile(0.5));
  CHECK(c.profile(0.5) > c.profile(0.9));
}

TEST_CASE("space profile matches the slice-projection oracle") {
  for (int dim : {2, 5}) {
    const CutoffProfile c = latdist::build_cutoff(dim, 1, 3.0);
    for (double s : {0.0, 0.3, 0.7, 1.1, 1.9, 2.5}) {
      INFO("dim=" << dim << " s=" << s);
      CHECK(std::abs(c.psi(s) - oracle::psi_slice_oracle(dim, s)) <= 1e-6);
    }
    // Nonnegative up to quadrature error over a wider sweep.
    for (double s = 0.0; s <= 6.0; s += 0.05) CHECK(c.psi(s) >= -1e-8);
  }
}

TEST_CASE("lattice values vanish off the sublattice and scale on it") {
  const CutoffProfile c = latdist::build_cutoff(2, 2, 5.0);
  CHECK(c.lattice_value(Point{1, 0}) == 0.0);
  CHECK(c.lattice_value(Point{2, 3}) == 0.0);
  const double cell = std::pow(2.0 / 5.0, 2);
  CHECK(std::abs(c.lattice_value(Point{0, 0}) - cell * c.psi(0.0)) <= 1e-15);
  const double r = std::sqrt(4.0 + 16.0) / 5.0;
  CHECK(std::abs(c.lattice_value(Point{2, -4}) - cell * c.psi(r)) <= 1e-15);
}

TEST_CASE("lattice mass is one and tails are small") {
  for (const auto& [dim, q, L] :
       {std::tuple{2, std::int64_t{1}, 4.0}, std::tuple{2, std::int64_t{2}, 5.0},
        std::tuple{3, std::int64_t{1}, 3.0}, std::tuple{5, std::int64_t{2}, 6.0}}) {
    const CutoffProfile c = latdist::build_cutoff(dim, q, L);
    INFO("dim=" << dim << " q=" << q << " L=" << L);
    CHECK(std::abs(c.lattice_mass() - 1.0) <= 1e-8);
    // Calibrate the linear-decay constant from moderate radii, then demand
    // the tail at ten scale lengths beat that rate by the matching factor.
    double decay_c = 0.0;
    for (double eta : {0.5, 0.25, 0.125})
      decay_c = std::max(decay_c, c.tail_mass(L / eta) / eta);
    CHECK(c.tail_mass(10.0 * L) <= 0.1 * decay_c);
  }
}

TEST_CASE("tail mass shrinks at least linearly in the cutoff parameter") {
  const double L = 4.0;
  const CutoffProfile c = latdist::build_cutoff(2, 1, L);
  double prev = 1e300;
  for (double eta : {0.5, 0.25, 0.125}) {
    const double t = c.tail_mass(L / eta);
    INFO("eta=" << eta << " tail=" << t << " ratio=" << t / eta);
    CHECK(t <= prev);
    CHECK(t / eta <= 1.0);
    prev = t;
  }
}

TEST_CASE("lattice Fourier transform anchors and range") {
  const CutoffProfile c = latdist::build_cutoff(2, 2, 5.0);
  CHECK(c.fourier(std::vector<double>{0.0, 0.0}) == 1.0);
  CHECK(c.fourier(std::vector<double>{0.5, 1.0}) == 1.0);  // rational lattice point
  // Farther than 1/L from every rational center: profile support exhausted.
  CHECK(c.fourier(std::vector<double>{0.25, 0.25}) == 0.0);
  for (int t = 0; t < 100; ++t) {
    const std::vector<double> xi{latdist::rng_uniform01(5, 0, static_cast<std::uint64_t>(t)),
                                 latdist::rng_uniform01(5, 1, static_cast<std::uint64_t>(t))};
    const double v = c.fourier(xi);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("lattice Fourier transform matches direct space-side summation") {
  const int dim = 2;
  const std::int64_t q = 2;
  const double L = 5.0;
  const CutoffProfile c = latdist::build_cutoff(dim, q, L);
  const std::int64_t R = 80;  // lattice reach: s = R/L = 16, tail far below 1e-8
  for (int t = 0; t < 8; ++t) {
    const std::vector<double> xi{latdist::rng_uniform01(6, 0, static_cast<std::uint64_t>(t)),
                                 latdist::rng_uniform01(6, 1, static_cast<std::uint64_t>(t))};
    std::complex<double> acc = 0.0;
    Point x(2);
    for (std::int64_t a = -R; a <= R; a += q)
      for (std::int64_t b = -R; b <= R; b += q) {
        x[0] = a;
        x[1] = b;
        const double w = c.lattice_value(x);
        if (w == 0.0) continue;
        const double phase = static_cast<double>(a) * xi[0] + static_cast<double>(b) * xi[1];
        acc += w * std::polar(1.0, -2.0 * std::numbers::pi * phase);
      }
    INFO("xi=(" << xi[0] << "," << xi[1] << ")");
    CHECK(std::abs(acc.imag()) <= 1e-6);
    CHECK(std::abs(acc.real() - c.fourier(xi)) <= 1e-6);
  }
}

TEST_CASE("grid multiplier equals the lattice transform at grid frequencies") {
  const CutoffProfile c = latdist::build_cutoff(2, 2, 4.0);
  const latdist::Coord M = 8;
  const std::vector<double> mult = c.grid_multiplier(M);
  REQUIRE(mult.size() == 64);
  for (std::int64_t k1 = 0; k1 < M; ++k1)
    for (std::int64_t k2 = 0; k2 < M; ++k2) {
      const std::vector<double> xi{static_cast<double>(k1) / M,
                                   static_cast<double>(k2) / M};
      CHECK(std::abs(mult[static_cast<std::size_t>(k1 * M + k2)] - c.fourier(xi)) <=
            1e-12);
    }
}

TEST_CASE("refined tables agree with the default resolution") {
  const CutoffProfile base = latdist::build_cutoff(2, 1, 3.0, 0);
  const CutoffProfile fine = latdist::build_cutoff(2, 1, 3.0, 1);
  for (double s : {0.2, 0.9, 1.7, 3.1})
    CHECK(std::abs(base.psi(s) - fine.psi(s)) <= 1e-6);
  for (double r : {0.1, 0.45, 0.8})
    CHECK(std::abs(base.profile(r) - fine.profile(r)) <= 1e-8);
}

TEST_CASE("sharp box kernel counts and mass") {
  const ChiKernel c = latdist::chi_builder(3, 1, 2.0);
  CHECK(c.half_count == 1);
  CHECK(std::abs(c.cell_value - 0.125) <= 1e-15);
  CHECK(std::abs(c.mass() - 27.0 / 8.0) <= 1e-12);
  CHECK(c.value(Point{1, -1, 0}) == c.cell_value);
  CHECK(c.value(Point{2, 0, 0}) == 0.0);

  const ChiKernel pt = latdist::chi_builder(4, 3, 3.0);
  CHECK(pt.half_count == 0);
  CHECK(pt.value(Point{0, 0, 0, 0}) == 1.0);
  CHECK(std::abs(pt.mass() - 1.0) <= 1e-12);

  const ChiKernel even = latdist::chi_builder(2, 2, 9.0);
  for (const auto& p : {Point{2, -4}, Point{-2, 4}, Point{4, 2}})
    CHECK(even.value(p) == even.value(Point{-p[0], -p[1]}));
}

TEST_CASE("kernel l1 comparison: degenerate case, positivity, trend") {
  CHECK(latdist::cutoff_l1_comparison(2, 1, 1.0, 1.0) <= 1e-15);
  const double coarse = latdist::cutoff_l1_comparison(2, 1, 2.0, 20.0);
  const double fine = latdist::cutoff_l1_comparison(2, 1, 2.0, 200.0);
  INFO("ratio10=" << coarse << " ratio100=" << fine
                  << " c10=" << coarse * 10.0 << " c100=" << fine * 100.0);
  CHECK(coarse >= 0.0);
  CHECK(fine >= 0.0);
  CHECK(fine < coarse);
  CHECK_THROWS_AS(latdist::cutoff_l1_comparison(2, 1, 30.0, 20.0),
                  std::invalid_argument);
}
