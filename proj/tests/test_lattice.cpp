// Sphere enumeration and counting: frozen small-case values, agreement
// with the brute-force box-scan and divisor-sum oracles, structural
// invariants of the returned point lists (norm, order, symmetry), error
// paths, and translated-sphere intersection counting in both boundary
// modes.
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "latdist/lattice.hpp"
#include "latdist/point_set.hpp"
#include "latdist/types.hpp"
#include "oracle_helpers.hpp"

using latdist::Coord;
using latdist::Point;
using latdist::PointSet;
using latdist::PointSetIndex;
using latdist::Sphere;

namespace {

// Full box {1..N}^d with anchor 0.
PointSet full_box(int dim, Coord N, latdist::BoundaryMode mode) {
  PointSet A;
  A.dim = dim;
  A.side = N;
  A.anchor.assign(static_cast<std::size_t>(dim), 0);
  A.mode = mode;
  Point x(static_cast<std::size_t>(dim), 1);
  for (;;) {
    A.elements.push_back(x);
    int i = dim - 1;
    while (i >= 0 && x[static_cast<std::size_t>(i)] == N) {
      x[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) break;
    ++x[static_cast<std::size_t>(i)];
  }
  return A;
}

// Even-coordinate sublattice within the box.
PointSet even_box(int dim, Coord N, latdist::BoundaryMode mode) {
  PointSet A = full_box(dim, N, mode);
  std::vector<Point> kept;
  for (const Point& p : A.elements) {
    bool all_even = true;
    for (Coord c : p) all_even &= (c % 2 == 0);
    if (all_even) kept.push_back(p);
  }
  A.elements = std::move(kept);
  return A;
}

}  // namespace

TEST_CASE("representation counts match frozen small cases") {
  CHECK(latdist::representation_count(5, 0) == 1);
  CHECK(latdist::representation_count(5, 1) == 10);
  CHECK(latdist::representation_count(5, 2) == 40);
  CHECK(latdist::representation_count(5, 4) == 90);
  CHECK(latdist::representation_count(4, 7) == 64);
  CHECK(latdist::representation_count(1, 9) == 2);
  CHECK(latdist::representation_count(2, 3) == 0);
}

TEST_CASE("representation counts match the brute-force box scan") {
  for (int dim = 1; dim <= 5; ++dim) {
    const auto hist = oracle::sphere_count_histogram(dim, 50);
    const auto batch = latdist::representation_counts_upto(dim, 50);
    REQUIRE(batch.size() == hist.size());
    for (std::int64_t lam = 0; lam <= 50; ++lam) {
      INFO("dim=" << dim << " lambda=" << lam);
      CHECK(batch[static_cast<std::size_t>(lam)] == hist[static_cast<std::size_t>(lam)]);
      CHECK(latdist::representation_count(dim, lam) ==
            hist[static_cast<std::size_t>(lam)]);
    }
  }
}

TEST_CASE("dimension four counts match the divisor-sum oracle") {
  for (std::int64_t n = 1; n <= 50; ++n) {
    INFO("n=" << n);
    CHECK(latdist::representation_count(4, n) == oracle::jacobi_r4(n));
  }
}

TEST_CASE("ball counts: partial sums equal the brute box tally") {
  for (int dim = 1; dim <= 5; ++dim) {
    const auto hist = oracle::sphere_count_histogram(dim, 25);
    std::int64_t ball = 0, lib = 0;
    for (std::int64_t lam = 0; lam <= 25; ++lam) {
      ball += hist[static_cast<std::size_t>(lam)];
      lib += latdist::representation_count(dim, lam);
    }
    CHECK(lib == ball);
  }
}

TEST_CASE("four and more squares represent every non-negative integer") {
  for (int dim = 4; dim <= 5; ++dim)
    for (std::int64_t lam = 0; lam <= 200; ++lam) {
      INFO("dim=" << dim << " lambda=" << lam);
      CHECK(latdist::representation_count(dim, lam) >= 1);
    }
}

TEST_CASE("enumerate_sphere returns exact, sorted, distinct points") {
  const Sphere s = latdist::enumerate_sphere(5, 4);
  CHECK(s.count() == 90);
  CHECK(std::is_sorted(s.points.begin(), s.points.end()));
  CHECK(std::adjacent_find(s.points.begin(), s.points.end()) == s.points.end());
  for (const Point& p : s.points) CHECK(latdist::norm_sq(p) == 4);

  const Sphere unit = latdist::enumerate_sphere(5, 1);
  CHECK(unit.count() == 10);
  const Sphere origin = latdist::enumerate_sphere(5, 0);
  REQUIRE(origin.count() == 1);
  CHECK(origin.points[0] == Point{0, 0, 0, 0, 0});
  CHECK(latdist::enumerate_sphere(2, 3).empty());
}

TEST_CASE("enumerate_sphere is closed under signed permutations") {
  const Sphere s = latdist::enumerate_sphere(3, 14);
  std::set<Point> original(s.points.begin(), s.points.end());
  std::set<Point> mapped;
  for (const Point& p : s.points)
    mapped.insert(Point{-p[2], p[0], -p[1]});  // one fixed signed permutation
  CHECK(mapped == original);
}

TEST_CASE("enumeration parameter and budget errors") {
  CHECK_THROWS_AS(latdist::enumerate_sphere(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(latdist::enumerate_sphere(3, -1), std::invalid_argument);
  CHECK_THROWS_AS(latdist::enumerate_sphere(5, 4, 10), std::length_error);
  CHECK_THROWS_AS(latdist::representation_count(0, 1), std::invalid_argument);
}

TEST_CASE("translated intersection count over the full periodic box") {
  const PointSet A = full_box(5, 4, latdist::BoundaryMode::periodic);
  const PointSetIndex idx(A);
  const Sphere s = latdist::enumerate_sphere(5, 2);
  CHECK(latdist::translated_intersection_count(idx, Point{1, 1, 1, 1, 1}, s) ==
        s.count());
  CHECK(latdist::translated_intersection_count(idx, Point{3, 4, 1, 2, 3}, s) ==
        s.count());
}

TEST_CASE("translated intersection count on the empty set is zero") {
  PointSet A;
  A.dim = 5;
  A.side = 4;
  A.anchor.assign(5, 0);
  const PointSetIndex idx(A);
  const Sphere s = latdist::enumerate_sphere(5, 1);
  CHECK(latdist::translated_intersection_count(idx, Point{1, 1, 1, 1, 1}, s) == 0);
}

TEST_CASE("dilated spheres stay inside the even sublattice") {
  const PointSet A = even_box(5, 4, latdist::BoundaryMode::periodic);
  const PointSetIndex idx(A);
  const Sphere s = latdist::enumerate_sphere(5, 1);
  for (const Point& x : A.elements)
    CHECK(latdist::translated_intersection_count(idx, x, s, 2) == 10);
}

TEST_CASE("truncate mode drops translates leaving the box") {
  const PointSet A = full_box(2, 4, latdist::BoundaryMode::truncate);
  const PointSetIndex idx(A);
  const Sphere s = latdist::enumerate_sphere(2, 1);
  // Corner point: only the two inward neighbors remain.
  CHECK(latdist::translated_intersection_count(idx, Point{1, 1}, s) == 2);
  // Interior point: all four neighbors remain.
  CHECK(latdist::translated_intersection_count(idx, Point{2, 2}, s) == 4);
}

TEST_CASE("translated intersection count rejects dimension mismatch") {
  const PointSet A = full_box(2, 4, latdist::BoundaryMode::periodic);
  const PointSetIndex idx(A);
  const Sphere s = latdist::enumerate_sphere(3, 1);
  CHECK_THROWS_AS(latdist::translated_intersection_count(idx, Point{1, 1, 1}, s),
                  std::invalid_argument);
}
