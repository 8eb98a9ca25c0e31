// Integer points on spheres: enumeration, representation counts, and
// counting a set's intersection with a translated, dilated sphere.
//
// The sphere of squared radius lambda in dimension d is the set of
// x in Z^d with x_1^2 + ... + x_d^2 = lambda. Enumeration is exact and
// returns points in lexicographic order; counts use exact 64-bit
// integer arithmetic throughout.
#pragma once

#include <cstdint>
#include <vector>

#include "latdist/point_set.hpp"
#include "latdist/types.hpp"

namespace latdist {

struct Sphere {
  int dim = 0;
  std::int64_t lambda = 0;
  std::vector<Point> points;  // lexicographic order, each with norm_sq == lambda

  std::int64_t count() const { return static_cast<std::int64_t>(points.size()); }
  bool empty() const { return points.empty(); }
};

// All x in Z^d with |x|^2 = lambda, lexicographically sorted.
// Throws std::invalid_argument on bad parameters and std::length_error
// if the enumeration would exceed point_budget points.
Sphere enumerate_sphere(int dim, std::int64_t lambda,
                        std::int64_t point_budget = 10'000'000);

// |S_lambda| without materializing points.
std::int64_t representation_count(int dim, std::int64_t lambda);

// Vector v with v[n] = |S_n| for n = 0..n_max (batch, convolution of the
// one-dimensional square counts; exact in 64-bit for desk-scale inputs).
std::vector<std::int64_t> representation_counts_upto(int dim, std::int64_t n_max);

// |A ∩ (x + q·S)| under A's boundary mode: periodic reduces translated
// points mod the box side, truncate counts points leaving the box as
// absent. Throws std::invalid_argument on dimension mismatch.
std::int64_t translated_intersection_count(const PointSetIndex& A, const Point& x,
                                           const Sphere& S, std::int64_t q = 1);

}  // namespace latdist
