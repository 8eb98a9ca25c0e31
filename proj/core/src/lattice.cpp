#include "latdist/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace latdist {

namespace {

// Exact floor(sqrt(n)) for n >= 0.
std::int64_t isqrt64(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative value");
  auto r = static_cast<std::int64_t>(std::llround(std::floor(std::sqrt(static_cast<double>(n)))));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void enumerate_rec(int dim, std::int64_t remaining, Point& prefix,
                   std::vector<Point>& out, std::int64_t budget) {
  if (dim == 0) {
    if (remaining == 0) {
      if (static_cast<std::int64_t>(out.size()) >= budget)
        throw std::length_error("sphere enumeration exceeds the point budget");
      out.push_back(prefix);
    }
    return;
  }
  const std::int64_t r = isqrt64(remaining);
  for (std::int64_t c = -r; c <= r; ++c) {
    prefix.push_back(c);
    enumerate_rec(dim - 1, remaining - c * c, prefix, out, budget);
    prefix.pop_back();
  }
}

// Cached batch representation counts per dimension, grown on demand.
std::mutex g_counts_mu;
std::map<int, std::vector<std::int64_t>> g_counts;  // dim -> counts[0..n]

std::vector<std::int64_t> compute_counts(int dim, std::int64_t n_max) {
  // One-dimensional counts: 1 at 0, 2 at every positive perfect square.
  std::vector<std::int64_t> cur(static_cast<std::size_t>(n_max) + 1, 0);
  cur[0] = 1;
  for (std::int64_t c = 1; c * c <= n_max; ++c) cur[static_cast<std::size_t>(c * c)] = 2;
  // Fold in one coordinate at a time: r_{k}(n) = sum_c r_{k-1}(n - c^2).
  for (int k = 2; k <= dim; ++k) {
    std::vector<std::int64_t> next(static_cast<std::size_t>(n_max) + 1, 0);
    for (std::int64_t n = 0; n <= n_max; ++n) {
      std::int64_t s = cur[static_cast<std::size_t>(n)];
      for (std::int64_t c = 1; c * c <= n; ++c)
        s += 2 * cur[static_cast<std::size_t>(n - c * c)];
      next[static_cast<std::size_t>(n)] = s;
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

Sphere enumerate_sphere(int dim, std::int64_t lambda, std::int64_t point_budget) {
  if (dim < 1) throw std::invalid_argument("enumerate_sphere: dim must be >= 1");
  if (lambda < 0) throw std::invalid_argument("enumerate_sphere: lambda must be >= 0");
  if (point_budget < 1) throw std::invalid_argument("enumerate_sphere: budget must be >= 1");
  Sphere s;
  s.dim = dim;
  s.lambda = lambda;
  Point prefix;
  prefix.reserve(static_cast<std::size_t>(dim));
  enumerate_rec(dim, lambda, prefix, s.points, point_budget);
  return s;
}

std::vector<std::int64_t> representation_counts_upto(int dim, std::int64_t n_max) {
  if (dim < 1) throw std::invalid_argument("representation_counts_upto: dim must be >= 1");
  if (n_max < 0) throw std::invalid_argument("representation_counts_upto: n_max must be >= 0");
  {
    std::lock_guard<std::mutex> lk(g_counts_mu);
    auto it = g_counts.find(dim);
    if (it != g_counts.end() &&
        static_cast<std::int64_t>(it->second.size()) > n_max) {
      return {it->second.begin(), it->second.begin() + n_max + 1};
    }
  }
  auto fresh = compute_counts(dim, n_max);
  {
    std::lock_guard<std::mutex> lk(g_counts_mu);
    auto& slot = g_counts[dim];
    if (slot.size() < fresh.size()) slot = fresh;
  }
  return fresh;
}

std::int64_t representation_count(int dim, std::int64_t lambda) {
  if (dim < 1) throw std::invalid_argument("representation_count: dim must be >= 1");
  if (lambda < 0) throw std::invalid_argument("representation_count: lambda must be >= 0");
  return representation_counts_upto(dim, lambda)[static_cast<std::size_t>(lambda)];
}

std::int64_t translated_intersection_count(const PointSetIndex& A, const Point& x,
                                           const Sphere& S, std::int64_t q) {
  if (static_cast<int>(x.size()) != A.dim() || S.dim != A.dim())
    throw std::invalid_argument("translated_intersection_count: dimension mismatch");
  if (q < 1) throw std::invalid_argument("translated_intersection_count: q must be >= 1");
  std::int64_t hits = 0;
  Point z(x.size());
  for (const Point& y : S.points) {
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + q * y[i];
    if (A.contains(z)) ++hits;
  }
  return hits;
}

}  // namespace latdist
