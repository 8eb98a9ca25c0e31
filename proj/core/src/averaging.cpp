#include "latdist/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "latdist/arithmetic.hpp"
#include "latdist/parallel.hpp"
#include "latdist/spectral.hpp"

namespace latdist {

namespace {

std::int64_t sphere_reach(std::int64_t lambda, std::int64_t q) {
  const auto r = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(lambda))));
  return q * r;
}

void check_preconditions(const GridFunction& f, const Sphere& S, std::int64_t q) {
  if (S.dim != f.dim) throw std::invalid_argument("spherical_average: dimension mismatch");
  if (S.empty()) throw std::invalid_argument("spherical_average: empty sphere");
  if (q < 1) throw std::invalid_argument("spherical_average: q must be >= 1");
  if (f.mode == BoundaryMode::periodic) {
    if (f.side % q != 0)
      throw std::invalid_argument("spherical_average: periodic mode requires q | M");
  } else {
    const std::int64_t pad_needed = sphere_reach(S.lambda, q);
    if (f.support_side + 2 * pad_needed > f.side)
      throw std::invalid_argument(
          "spherical_average: truncate mode needs side >= support + 2 q ceil(sqrt(lambda))");
  }
}

GridFunction average_direct(const GridFunction& f, const Sphere& S, std::int64_t q) {
  GridFunction out = make_grid(f.dim, f.side, f.mode,
                               f.mode == BoundaryMode::periodic
                                   ? f.side
                                   : std::min<Coord>(f.side, f.support_side +
                                                                 2 * sphere_reach(S.lambda, q)));
  const Coord M = f.side;
  const std::int64_t total = f.size();
  // The x-loop is parallel (per-index writes); the inner sphere loop is
  // serial so each cell's summation order is fixed.
  parallel_for_chunks(0, total, [&](std::int64_t lo, std::int64_t hi) {
    Point x, z(static_cast<std::size_t>(f.dim));
    for (std::int64_t idx = lo; idx < hi; ++idx) {
      grid_decode(f.dim, M, idx, x);
      std::complex<double> acc{0.0, 0.0};
      for (const Point& y : S.points) {
        bool outside = false;
        for (int i = 0; i < f.dim; ++i) {
          Coord v = x[static_cast<std::size_t>(i)] - q * y[static_cast<std::size_t>(i)];
          if (f.mode == BoundaryMode::periodic) {
            v %= M;
            if (v < 0) v += M;
          } else if (v < 0 || v >= M) {
            outside = true;
            break;
          }
          z[static_cast<std::size_t>(i)] = v;
        }
        if (!outside)
          acc += f.values[static_cast<std::size_t>(grid_index(f.dim, M, z))];
      }
      out.values[static_cast<std::size_t>(idx)] =
          acc / static_cast<double>(S.count());
    }
  });
  return out;
}

GridFunction average_spectral(const GridFunction& f, const Sphere& S, std::int64_t q) {
  const Spectrum F = dft(f);
  const Spectrum sig = sigma_hat_grid(S, f.side, q);
  const Spectrum prod = multiply(F, sig);
  return idft(prod, f.mode,
              f.mode == BoundaryMode::periodic
                  ? f.side
                  : std::min<Coord>(f.side,
                                    f.support_side + 2 * sphere_reach(S.lambda, q)));
}

}  // namespace

GridFunction spherical_average(const GridFunction& f, const Sphere& S,
                               std::int64_t q, AvgRoute route) {
  check_preconditions(f, S, q);
  if (route == AvgRoute::automatic) {
    // Direct work ~ |S| M^d; spectral ~ 3 transforms. Below ~2e7 cells of
    // direct work the explicit sum is faster and allocation-light.
    const double direct_work =
        static_cast<double>(S.count()) * static_cast<double>(f.size());
    route = direct_work <= 2e7 ? AvgRoute::direct : AvgRoute::spectral;
  }
  return route == AvgRoute::direct ? average_direct(f, S, q)
                                   : average_spectral(f, S, q);
}

GridFunction maximal_average(const GridFunction& f, std::int64_t lambda0,
                             std::int64_t lambda1, std::int64_t q) {
  if (lambda0 < 0 || lambda1 < lambda0)
    throw std::invalid_argument("maximal_average: need 0 <= lambda0 <= lambda1");
  GridFunction out = make_grid(f.dim, f.side, f.mode, f.support_side);
  bool any = false;
  for (std::int64_t lam = lambda0; lam <= lambda1; ++lam) {
    if (representation_count(f.dim, lam) == 0) continue;
    const Sphere S = enumerate_sphere(f.dim, lam);
    const GridFunction a = spherical_average(f, S, q);
    any = true;
    for (std::int64_t i = 0; i < out.size(); ++i) {
      const double v = std::abs(a.values[static_cast<std::size_t>(i)]);
      auto& slot = out.values[static_cast<std::size_t>(i)];
      if (v > slot.real()) slot = {v, 0.0};
    }
    // widen the declared support as translates reach further
    if (f.mode == BoundaryMode::truncate)
      out.support_side = std::max(out.support_side, a.support_side);
  }
  if (!any)
    throw std::invalid_argument("maximal_average: every sphere in the range is empty");
  return out;
}

GridFunction mollified_maximal(const GridFunction& f, double eta,
                               std::int64_t lambda0, std::int64_t lambda1,
                               const MollifiedOptions& opt) {
  if (f.mode != BoundaryMode::periodic)
    throw std::invalid_argument("mollified_maximal: periodic mode required");
  if (lambda0 < 1 || lambda1 < lambda0)
    throw std::invalid_argument("mollified_maximal: need 1 <= lambda0 <= lambda1");
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("mollified_maximal: eta must lie in (0,1)");
  std::uint64_t q_m;
  if (opt.modulus_override > 0) {
    q_m = static_cast<std::uint64_t>(opt.modulus_override);
  } else {
    q_m = q_eta_u64(eta, opt.c_qeta);
  }
  const double L2 = eta * std::sqrt(static_cast<double>(lambda0));
  if (static_cast<double>(q_m) > L2)
    throw std::domain_error(
        "mollified_maximal: degenerate cutoff, scale eta*sqrt(lambda0) = " +
        std::to_string(L2) + " is below the modulus " + std::to_string(q_m));
  const CutoffProfile cut = build_cutoff(f.dim, static_cast<std::int64_t>(q_m), L2);
  const std::vector<double> mult = cut.grid_multiplier(f.side);
  Spectrum F = dft(f);
  for (std::int64_t i = 0; i < F.size(); ++i)
    F.values[static_cast<std::size_t>(i)] *=
        (1.0 - mult[static_cast<std::size_t>(i)]);
  const GridFunction residue = idft(F, f.mode, f.support_side);
  return maximal_average(residue, lambda0, lambda1, 1);
}

double l2_ratio(const GridFunction& output, const GridFunction& f) {
  const double denom = l2_norm(f);
  if (denom == 0.0) throw std::invalid_argument("l2_ratio: zero reference norm");
  return l2_norm(output) / denom;
}

}  // namespace latdist
