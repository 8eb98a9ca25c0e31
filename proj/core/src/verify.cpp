#include "latdist/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "latdist/arithmetic.hpp"
#include "latdist/averaging.hpp"
#include "latdist/cutoff.hpp"
#include "latdist/density.hpp"
#include "latdist/grid.hpp"
#include "latdist/lattice.hpp"
#include "latdist/parallel.hpp"
#include "latdist/spectral.hpp"

namespace latdist {

namespace {

std::int64_t ceil_sqrt(std::int64_t n) {
  if (n <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r >= n + 1) --r;
  while (r * r < n) ++r;
  return r;
}

double pow_int(double b, int e) {
  double v = 1.0;
  for (int i = 0; i < e; ++i) v *= b;
  return v;
}

// Indicator of A on the cyclic grid of side N at box-relative coordinates,
// regardless of A's declared boundary mode (spectral diagnostics live on
// the torus).
GridFunction indicator_on_torus(const PointSet& A) {
  GridFunction f = make_grid(A.dim, A.side, BoundaryMode::periodic);
  for (const Point& p : A.elements) {
    Point c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) c[i] = p[i] - A.anchor[i] - 1;
    f.values[static_cast<std::size_t>(grid_index(A.dim, A.side, c))] = 1.0;
  }
  return f;
}

// <f, g> = sum_x f(x) conj(g(x)) restricted to the real part, with f the
// 0/1 indicator grid; serial fixed-order accumulation.
double indicator_pairing(const GridFunction& f, const GridFunction& g) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (f.values[i].real() != 0.0)
      acc += static_cast<long double>(f.values[i].real()) * g.values[i].real();
  return static_cast<double>(acc);
}

}  // namespace

IdentityCheck count_identity_check(const PointSet& A, std::int64_t lambda) {
  A.validate();
  const Sphere S = enumerate_sphere(A.dim, lambda);
  if (S.points.empty())
    throw std::invalid_argument("count_identity_check: empty sphere");

  Coord M = A.side;
  if (A.mode == BoundaryMode::truncate) {
    const Coord need = A.side + 2 * ceil_sqrt(lambda);
    M = 1;
    while (M < need) M <<= 1;
  }

  // Combinatorial side, exact integers.
  const PointSetIndex idx(A);
  std::vector<std::int64_t> counts(A.elements.size(), 0);
  parallel_for(0, static_cast<std::int64_t>(A.elements.size()), [&](std::int64_t i) {
    const auto u = static_cast<std::size_t>(i);
    counts[u] = translated_intersection_count(idx, A.elements[u], S, 1);
  });
  std::int64_t pair_count = 0;
  for (const std::int64_t c : counts) pair_count += c;

  // Spectral side.
  const Spectrum F = dft(embed_point_set(A, M));
  const Spectrum sh = sigma_hat_grid(S, M);
  long double acc = 0.0L;
  for (std::size_t k = 0; k < F.values.size(); ++k)
    acc += static_cast<long double>(std::norm(F.values[k])) * sh.values[k].real();
  long double cells = 1.0L;
  for (int i = 0; i < A.dim; ++i) cells *= static_cast<long double>(M);

  IdentityCheck out;
  out.torus_side = M;
  out.sphere_count = static_cast<std::int64_t>(S.points.size());
  out.pair_count = pair_count;
  out.lhs = static_cast<double>(pair_count) / static_cast<double>(out.sphere_count);
  out.rhs = static_cast<double>(acc / cells);
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

RatioSearch unpinned_check(const PointSet& A, std::int64_t lambda, double epsilon,
                           std::int64_t q) {
  A.validate();
  if (A.elements.empty())
    throw std::invalid_argument("unpinned_check: empty set");
  const Sphere S = enumerate_sphere(A.dim, lambda);
  if (S.points.empty())
    throw std::invalid_argument("unpinned_check: empty sphere");
  const PointSetIndex idx(A);
  std::vector<std::int64_t> counts(A.elements.size(), 0);
  parallel_for(0, static_cast<std::int64_t>(A.elements.size()), [&](std::int64_t i) {
    const auto u = static_cast<std::size_t>(i);
    counts[u] = translated_intersection_count(idx, A.elements[u], S, q);
  });
  // Elements are sorted, so the first maximum is the lexicographically
  // first maximizer.
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i)
    if (counts[i] > counts[best]) best = i;

  RatioSearch out;
  out.best_x = A.elements[best];
  out.best_count = counts[best];
  out.best_ratio =
      static_cast<double>(counts[best]) / static_cast<double>(S.points.size());
  out.density = box_density(A);
  out.threshold = out.density - epsilon;
  out.holds = out.best_ratio > out.threshold;
  return out;
}

PinnedResult pinned_check(const PointSet& A, std::int64_t lambda0,
                          std::int64_t lambda1, double epsilon, std::int64_t q) {
  A.validate();
  if (A.elements.empty())
    throw std::invalid_argument("pinned_check: empty set");
  if (lambda1 < lambda0)
    throw std::invalid_argument("pinned_check: lambda1 < lambda0");
  std::vector<Sphere> spheres;
  for (std::int64_t lam = lambda0; lam <= lambda1; ++lam) {
    Sphere S = enumerate_sphere(A.dim, lam);
    if (!S.points.empty()) spheres.push_back(std::move(S));
  }
  if (spheres.empty())
    throw std::invalid_argument("pinned_check: every sphere in the range is empty");

  PinnedResult out;
  out.density = box_density(A);
  out.threshold = out.density - epsilon;

  const PointSetIndex idx(A);
  std::vector<std::uint8_t> pass(A.elements.size(), 0);
  parallel_for(0, static_cast<std::int64_t>(A.elements.size()), [&](std::int64_t i) {
    const auto u = static_cast<std::size_t>(i);
    for (const Sphere& S : spheres) {
      const std::int64_t c = translated_intersection_count(idx, A.elements[u], S, q);
      const double ratio =
          static_cast<double>(c) / static_cast<double>(S.points.size());
      if (!(ratio > out.threshold)) return;  // pass[u] stays 0
    }
    pass[u] = 1;
  });
  for (std::size_t i = 0; i < pass.size(); ++i) {
    if (pass[i]) {
      out.found = true;
      out.witness = A.elements[i];
      for (const Sphere& S : spheres) {
        const std::int64_t c = translated_intersection_count(idx, out.witness, S, q);
        out.ratio_table.emplace_back(
            S.lambda,
            static_cast<double>(c) / static_cast<double>(S.points.size()));
      }
      break;
    }
  }
  out.holds = out.found;
  return out;
}

double annulus_fourier_mass(const PointSet& A, double eta, std::uint64_t q_mod,
                            std::int64_t lambda0, std::int64_t lambda1) {
  A.validate();
  if (A.elements.empty())
    throw std::invalid_argument("annulus_fourier_mass: empty set");
  const Spectrum F = dft(embed_point_set(A, 0));
  const Coord M = F.side;
  long double acc = 0.0L;
  Point k(static_cast<std::size_t>(F.dim));
  for (std::int64_t lin = 0; lin < F.size(); ++lin) {
    grid_decode(F.dim, M, lin, k);
    if (in_annulus_grid(k, M, eta, q_mod, lambda0, lambda1))
      acc += static_cast<long double>(std::norm(F.values[static_cast<std::size_t>(lin)]));
  }
  long double cells = 1.0L;
  for (int i = 0; i < F.dim; ++i) cells *= static_cast<long double>(M);
  return static_cast<double>(acc / cells / static_cast<long double>(A.size()));
}

namespace {

DichotomyReport build_report(const PointSet& A, bool pinned, std::int64_t lambda0,
                             std::int64_t lambda1, double epsilon, double eta,
                             double c_qeta, const DichotomyOptions& opt) {
  A.validate();
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("dichotomy_report: eta must lie in (0,1)");

  DichotomyReport rep;
  rep.dim = A.dim;
  rep.side = A.side;
  rep.pinned = pinned;
  rep.lambda0 = lambda0;
  rep.lambda1 = lambda1;
  rep.epsilon = epsilon;
  rep.eta = eta;
  rep.c_qeta = c_qeta;
  rep.q_eta_val = q_eta_u64(eta, c_qeta);
  rep.density = box_density(A);

  // Branch (i): pointwise ratio search.
  if (pinned) {
    const PinnedResult pr = pinned_check(A, lambda0, lambda1, epsilon, opt.q_scale);
    rep.branch_i.pinned = true;
    rep.branch_i.best_x = pr.witness;
    rep.branch_i.witness_table = pr.ratio_table;
    rep.branch_i.threshold = pr.threshold;
    rep.branch_i.holds = pr.holds;
  } else {
    const RatioSearch rs = unpinned_check(A, lambda0, epsilon, opt.q_scale);
    rep.branch_i.pinned = false;
    rep.branch_i.best_x = rs.best_x;
    rep.branch_i.best_ratio = rs.best_ratio;
    rep.branch_i.threshold = rs.threshold;
    rep.branch_i.holds = rs.holds;
  }

  // Branch (ii): normalized frequency mass over the annular family. The
  // range form is thresholded against epsilon^2, the single form against
  // epsilon, both scaled by the configured constant.
  rep.branch_ii.fourier_mass =
      annulus_fourier_mass(A, eta, rep.q_eta_val, lambda0, lambda1);
  rep.branch_ii.threshold =
      opt.branch_ii_constant * (pinned ? epsilon * epsilon : epsilon);
  rep.branch_ii.holds = rep.branch_ii.fourier_mass >= rep.branch_ii.threshold;

  // Asymptotic parameter window at the minimal uniformity scale.
  rep.window_lambda_min = 1.0 / pow_int(eta, 4);
  rep.window_lambda_max =
      pow_int(eta, 11) * static_cast<double>(A.side) * static_cast<double>(A.side);
  rep.window_ok = static_cast<double>(lambda0) >= rep.window_lambda_min &&
                  static_cast<double>(lambda1) <= rep.window_lambda_max;

  // Smoothing diagnostics. The honest modulus rarely fits under the inner
  // scale L2 at desk size, so the block runs at the largest divisor of it
  // that does fit, and is skipped when even 1 does not.
  const double l1 = std::sqrt(static_cast<double>(lambda1)) / std::sqrt(eta);
  const double l2 = eta * std::sqrt(static_cast<double>(lambda0));
  rep.diagnostics.scale_l1 = l1;
  rep.diagnostics.scale_l2 = l2;
  if (l2 >= 1.0) {
    std::uint64_t q_diag = 1;
    for (auto d = static_cast<std::uint64_t>(l2); d >= 1; --d) {
      if (rep.q_eta_val % d == 0) {
        q_diag = d;
        break;
      }
    }
    rep.diagnostics.available = true;
    rep.diagnostics.modulus = q_diag;
    rep.diagnostics.modulus_reduced = q_diag != rep.q_eta_val;

    const GridFunction f = indicator_on_torus(A);
    const Spectrum F = dft(f);
    const auto q_diag_s = static_cast<std::int64_t>(q_diag);

    const CutoffProfile cut1 = build_cutoff(A.dim, q_diag_s, l1);
    const std::vector<double> m1 = cut1.grid_multiplier(A.side);
    Spectrum F1 = F;
    for (std::size_t i = 0; i < F1.values.size(); ++i) F1.values[i] *= m1[i];
    const GridFunction f1 = idft(F1);

    std::int64_t exceptional = 0;
    const double cut = rep.density - opt.exceptional_c * eta;
    for (const auto& v : f1.values)
      if (v.real() <= cut) ++exceptional;
    rep.diagnostics.exceptional_count = exceptional;

    if (pinned) {
      GridFunction one_minus = f1;
      for (auto& v : one_minus.values) v = 1.0 - v;
      const GridFunction a_star = maximal_average(one_minus, lambda0, lambda1, 1);
      rep.diagnostics.maximal_pairing = indicator_pairing(f, a_star);
      MollifiedOptions mo;
      mo.c_qeta = c_qeta;
      mo.modulus_override = q_diag_s;
      const GridFunction a_moll = mollified_maximal(f, eta, lambda0, lambda1, mo);
      rep.diagnostics.mollified_term = indicator_pairing(f, a_moll);
    } else {
      // Branch (i) already rejected an empty sphere at this radius.
      const Sphere S = enumerate_sphere(A.dim, lambda0);
      const GridFunction af1 = spherical_average(f1, S, 1);
      rep.diagnostics.main_term = indicator_pairing(f, af1);

      const CutoffProfile cut2 = build_cutoff(A.dim, q_diag_s, l2);
      const std::vector<double> m2 = cut2.grid_multiplier(A.side);
      Spectrum F2 = F;
      for (std::size_t i = 0; i < F2.values.size(); ++i) F2.values[i] *= m2[i];
      GridFunction g = f;
      const GridFunction f2 = idft(F2);
      for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] -= f2.values[i];
      const GridFunction ag = spherical_average(g, S, 1);
      rep.diagnostics.error_pairing = indicator_pairing(f, ag);
    }
  }
  return rep;
}

}  // namespace

DichotomyReport dichotomy_report(const PointSet& A, std::int64_t lambda,
                                 double epsilon, double eta, double c_qeta,
                                 const DichotomyOptions& opt) {
  return build_report(A, false, lambda, lambda, epsilon, eta, c_qeta, opt);
}

DichotomyReport dichotomy_report_pinned(const PointSet& A, std::int64_t lambda0,
                                        std::int64_t lambda1, double epsilon,
                                        double eta, double c_qeta,
                                        const DichotomyOptions& opt) {
  // A width-zero window collapses to the single-radius report: the shell
  // families coincide, so the two reports must agree field by field.
  if (lambda0 == lambda1)
    return build_report(A, false, lambda0, lambda1, epsilon, eta, c_qeta, opt);
  return build_report(A, true, lambda0, lambda1, epsilon, eta, c_qeta, opt);
}

}  // namespace latdist
