// Discrete Fourier analysis: transform anchors (point mass, constant),
// round-trips on both the power-of-two and general-side code paths,
// agreement with a direct quadratic-time transform, the Parseval
// contract, the normalized sphere exponential sum against its defining
// complex sum and its grid-embedding route, and grid text I/O.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "latdist/grid.hpp"
#include "latdist/lattice.hpp"
#include "latdist/rng.hpp"
#include "latdist/spectral.hpp"
#include "oracle_helpers.hpp"

using latdist::GridFunction;
using latdist::Point;
using latdist::Spectrum;

namespace {

GridFunction random_grid(int dim, latdist::Coord M, std::uint64_t seed) {
  GridFunction f = latdist::make_grid(dim, M, latdist::BoundaryMode::periodic);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    f.values[i] = {latdist::rng_uniform01(seed, 1, i) - 0.5,
                   latdist::rng_uniform01(seed, 2, i) - 0.5};
  return f;
}

double max_abs_diff(const std::vector<std::complex<double>>& a,
                    const std::vector<std::complex<double>>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("point mass transforms to the constant one") {
  GridFunction f = latdist::make_grid(3, 4, latdist::BoundaryMode::periodic);
  f.values[0] = 1.0;
  const Spectrum F = latdist::dft(f);
  for (const auto& v : F.values) CHECK(std::abs(v - 1.0) <= 1e-12);
}

TEST_CASE("constant transforms to a point mass of total size") {
  GridFunction f = latdist::make_grid(2, 6, latdist::BoundaryMode::periodic);
  for (auto& v : f.values) v = 1.0;
  const Spectrum F = latdist::dft(f);
  CHECK(std::abs(F.values[0] - 36.0) <= 1e-10);
  for (std::size_t k = 1; k < F.values.size(); ++k)
    CHECK(std::abs(F.values[k]) <= 1e-10);
}

TEST_CASE("transform round-trips on both code paths") {
  for (const auto& [dim, M] : {std::pair{3, latdist::Coord{8}},
                               std::pair{2, latdist::Coord{6}},
                               std::pair{1, latdist::Coord{13}}}) {
    const GridFunction f = random_grid(dim, M, 41u + static_cast<unsigned>(M));
    const GridFunction g = latdist::idft(latdist::dft(f));
    INFO("dim=" << dim << " M=" << M);
    CHECK(max_abs_diff(f.values, g.values) <= 1e-12);
  }
}

TEST_CASE("transform agrees with the direct quadratic-time sum") {
  for (const auto& [dim, M] : {std::pair{2, latdist::Coord{5}},
                               std::pair{2, latdist::Coord{8}},
                               std::pair{3, latdist::Coord{4}}}) {
    const GridFunction f = random_grid(dim, M, 97u + static_cast<unsigned>(M));
    const Spectrum F = latdist::dft(f);
    const auto direct = oracle::naive_dft(f);
    INFO("dim=" << dim << " M=" << M);
    CHECK(max_abs_diff(F.values, direct) <= 1e-10);
  }
}

TEST_CASE("Parseval residuals on anchors and random pairs") {
  GridFunction delta = latdist::make_grid(2, 16, latdist::BoundaryMode::periodic);
  delta.values[0] = 1.0;
  CHECK(latdist::parseval_check(delta, delta) <= 1e-15);

  GridFunction ones = latdist::make_grid(2, 16, latdist::BoundaryMode::periodic);
  for (auto& v : ones.values) v = 1.0;
  CHECK(latdist::parseval_check(ones, delta) <= 1e-12);

  const GridFunction f = random_grid(2, 16, 7);
  const GridFunction g = random_grid(2, 16, 8);
  const double scale = latdist::l2_norm(f) * latdist::l2_norm(g);
  CHECK(latdist::parseval_check(f, g) <= 1e-10 * scale);
}

TEST_CASE("sphere exponential sum anchors") {
  for (std::int64_t lam = 0; lam <= 10; ++lam) {
    const latdist::Sphere s = latdist::enumerate_sphere(5, lam);
    const std::vector<double> zero(5, 0.0), half(5, 0.5);
    CHECK(latdist::sigma_hat(s, zero) == 1.0);
    const double parity = (lam % 2 == 0) ? 1.0 : -1.0;
    CHECK(std::abs(latdist::sigma_hat(s, half) - parity) <= 1e-12);
  }
  const latdist::Sphere unit = latdist::enumerate_sphere(5, 1);
  const std::vector<double> xi{0.5, 0, 0, 0, 0};
  CHECK(std::abs(latdist::sigma_hat(unit, xi) - 0.6) <= 1e-14);
}

TEST_CASE("sphere exponential sum matches the plain complex sum") {
  const latdist::Sphere s = latdist::enumerate_sphere(3, 9);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> xi(3);
    for (int i = 0; i < 3; ++i)
      xi[static_cast<std::size_t>(i)] =
          latdist::rng_uniform01(12, static_cast<std::uint64_t>(i),
                                 static_cast<std::uint64_t>(t));
    const double lib = latdist::sigma_hat(s, xi);
    const std::complex<double> direct = oracle::sigma_hat_direct(s, xi);
    CHECK(std::abs(direct.imag()) <= 1e-12);
    CHECK(std::abs(lib - direct.real()) <= 1e-12);
    CHECK(std::abs(lib) <= 1.0);
    // Negation symmetry: the real value is even in xi.
    std::vector<double> neg(3);
    for (int i = 0; i < 3; ++i)
      neg[static_cast<std::size_t>(i)] = 1.0 - xi[static_cast<std::size_t>(i)];
    CHECK(std::abs(latdist::sigma_hat(s, neg) - lib) <= 1e-12);
  }
}

TEST_CASE("sphere exponential sum rejects bad inputs") {
  const latdist::Sphere empty = latdist::enumerate_sphere(2, 3);
  const std::vector<double> xi{0.1, 0.2};
  CHECK_THROWS_AS(latdist::sigma_hat(empty, xi), std::invalid_argument);
  const latdist::Sphere s = latdist::enumerate_sphere(3, 1);
  CHECK_THROWS_AS(latdist::sigma_hat(s, xi), std::invalid_argument);
}

TEST_CASE("grid-embedded route reproduces the direct sum at grid frequencies") {
  const latdist::Sphere s = latdist::enumerate_sphere(3, 2);
  const latdist::Coord M = 8;
  const Spectrum grid_route = latdist::sigma_hat_grid(s, M);
  Point k(3);
  for (std::int64_t ki = 0; ki < grid_route.size(); ++ki) {
    latdist::grid_decode(3, M, ki, k);
    std::vector<double> xi(3);
    for (int i = 0; i < 3; ++i)
      xi[static_cast<std::size_t>(i)] =
          static_cast<double>(k[static_cast<std::size_t>(i)]) / static_cast<double>(M);
    const double direct = latdist::sigma_hat(s, xi);
    CHECK(std::abs(grid_route.values[static_cast<std::size_t>(ki)] -
                   std::complex<double>(direct)) <= 1e-10);
  }
}

TEST_CASE("spectrum multiply is pointwise") {
  const GridFunction f = random_grid(1, 9, 3);
  const GridFunction g = random_grid(1, 9, 4);
  const Spectrum F = latdist::dft(f), G = latdist::dft(g);
  const Spectrum P = latdist::multiply(F, G);
  for (std::size_t i = 0; i < P.values.size(); ++i)
    CHECK(std::abs(P.values[i] - F.values[i] * G.values[i]) <= 1e-12);
}

TEST_CASE("grid text dump round-trips") {
  const GridFunction f = random_grid(2, 5, 20);
  std::ostringstream os;
  latdist::save_grid(f, os);
  std::istringstream is(os.str());
  const GridFunction g = latdist::load_grid(is);
  CHECK(g.dim == f.dim);
  CHECK(g.side == f.side);
  CHECK(g.mode == f.mode);
  CHECK(max_abs_diff(f.values, g.values) <= 1e-15);
}
