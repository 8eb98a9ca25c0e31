#include "latdist/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "latdist/grid.hpp"
#include "latdist/lattice.hpp"
#include "latdist/parallel.hpp"
#include "radial_kernels.hpp"

namespace latdist {

namespace detail {

// Per-dimension tabulated radial profiles (shared by every kernel of the
// same dimension): the frequency-side autocorrelation profile on [0,1]
// and its inverse radial transform on [0, s_max]. s_max = 36 keeps the
// neglected lattice tail mass near 1e-9 at d = 5 (the space profile's
// decay is oscillatory, so the table must extend well past the last
// shell that carries visible mass).
struct RadialTables {
  int dim = 0;
  double s_max = 36.0;
  CubicSpline b_profile;  // normalized, b_profile(0) = 1, 0 at r >= 1
  CubicSpline p_profile;  // space side, clamped to >= 0 on evaluation
};

}  // namespace detail

namespace {

using detail::CubicSpline;
using detail::GaussLegendre;
using detail::gauss_legendre;
using detail::Kahan;

// The standard compactly supported smooth bump, radius 1/2:
// exp(-1 / (1 - 4 u^2)) for |u| < 1/2, 0 beyond (underflows cleanly).
double bump_half(double u) {
  const double t = 1.0 - 4.0 * u * u;
  if (t <= 0.0) return 0.0;
  return std::exp(-1.0 / t);
}

// Raw radial autocorrelation of bump_half in R^dim at offset r, up to a
// dimensional surface constant that cancels under normalization.
long double autocorr_raw(int dim, double r, const GaussLegendre& gl) {
  if (r >= 1.0) return 0.0L;
  const double t_lo = r - 0.5, t_hi = 0.5;
  if (t_lo >= t_hi) return 0.0L;
  const int n = static_cast<int>(gl.nodes.size());
  Kahan acc;
  if (dim == 1) {
    const double mid = 0.5 * (t_lo + t_hi), half = 0.5 * (t_hi - t_lo);
    for (int i = 0; i < n; ++i) {
      const double t = mid + half * static_cast<double>(gl.nodes[static_cast<std::size_t>(i)]);
      const double v = bump_half(t) * bump_half(t - r);
      acc.add(static_cast<long double>(v) * gl.weights[static_cast<std::size_t>(i)] * half);
    }
    return acc.value();
  }
  const double mid = 0.5 * (t_lo + t_hi), half = 0.5 * (t_hi - t_lo);
  for (int i = 0; i < n; ++i) {
    const double t = mid + half * static_cast<double>(gl.nodes[static_cast<std::size_t>(i)]);
    const double cap_a = 0.25 - t * t;
    const double cap_b = 0.25 - (t - r) * (t - r);
    const double cap = std::min(cap_a, cap_b);
    if (cap <= 0.0) continue;
    const double rho_max = std::sqrt(cap);
    Kahan inner;
    for (int j = 0; j < n; ++j) {
      const double rho =
          0.5 * rho_max * (1.0 + static_cast<double>(gl.nodes[static_cast<std::size_t>(j)]));
      const double va = bump_half(std::sqrt(t * t + rho * rho));
      const double vb = bump_half(std::sqrt((t - r) * (t - r) + rho * rho));
      double w = va * vb;
      for (int p = 0; p < dim - 2; ++p) w *= rho;
      inner.add(static_cast<long double>(w) * gl.weights[static_cast<std::size_t>(j)] *
                (0.5 * rho_max));
    }
    acc.add(inner.value() * gl.weights[static_cast<std::size_t>(i)] * half);
  }
  return acc.value();
}

std::shared_ptr<const detail::RadialTables> build_tables(int dim, int resolution) {
  const int refine = 1 << std::min(resolution, 4);
  const int nB = 512 * refine;            // knots on [0, 1]
  const int nP_per_unit = 256 * refine;   // knots per unit of s
  const double s_max = 36.0;
  const auto& gl_b = gauss_legendre(128);
  const auto& gl_h = gauss_legendre(1024);

  // Frequency-side profile table.
  std::vector<double> bvals(static_cast<std::size_t>(nB) + 1);
  const long double b0 = autocorr_raw(dim, 0.0, gl_b);
  bvals[0] = 1.0;
  parallel_for(1, nB + 1, [&](std::int64_t i) {
    const double r = static_cast<double>(i) / static_cast<double>(nB);
    const long double v = autocorr_raw(dim, r, gl_b) / b0;
    bvals[static_cast<std::size_t>(i)] =
        std::clamp(static_cast<double>(v), 0.0, 1.0);
  });
  CubicSpline b_spline = CubicSpline::build(0.0, 1.0 / static_cast<double>(nB), bvals);

  // Space-side profile: radial inverse transform
  //   P(s) = (2 pi)^{d/2} int_0^1 B(r) g_{d/2-1}(2 pi r s) r^{d-1} dr,
  // with per-node coefficients precomputed and Kahan-compensated sums
  // (the lattice mass aggregates ~1e8 evaluations; an uncompensated
  // per-eval bias shows up as a systematic mass defect).
  const int nH = static_cast<int>(gl_h.nodes.size());
  std::vector<double> node_r(static_cast<std::size_t>(nH));
  std::vector<long double> node_c(static_cast<std::size_t>(nH));
  for (int i = 0; i < nH; ++i) {
    const double r = 0.5 * (1.0 + static_cast<double>(gl_h.nodes[static_cast<std::size_t>(i)]));
    double rpow = 1.0;
    for (int p = 0; p < dim - 1; ++p) rpow *= r;
    node_r[static_cast<std::size_t>(i)] = r;
    node_c[static_cast<std::size_t>(i)] =
        gl_h.weights[static_cast<std::size_t>(i)] * 0.5L *
        static_cast<long double>(b_spline.eval(r) * rpow);
  }
  const double front = std::pow(2.0 * std::numbers::pi, 0.5 * static_cast<double>(dim));
  const std::int64_t nP = static_cast<std::int64_t>(s_max * nP_per_unit);
  std::vector<double> pvals(static_cast<std::size_t>(nP) + 1);
  parallel_for(0, nP + 1, [&](std::int64_t j) {
    const double s = static_cast<double>(j) / static_cast<double>(nP_per_unit);
    Kahan acc;
    for (int i = 0; i < nH; ++i) {
      const double g = detail::g_radial(
          dim, 2.0 * std::numbers::pi * node_r[static_cast<std::size_t>(i)] * s);
      acc.add(node_c[static_cast<std::size_t>(i)] * static_cast<long double>(g));
    }
    // The true profile is a squared modulus (nonnegative); negative
    // evaluations are pure roundoff and are clamped away.
    pvals[static_cast<std::size_t>(j)] =
        std::max(0.0, static_cast<double>(acc.value() * front));
  });
  auto tables = std::make_shared<detail::RadialTables>();
  tables->dim = dim;
  tables->s_max = s_max;
  tables->b_profile = std::move(b_spline);
  tables->p_profile =
      CubicSpline::build(0.0, 1.0 / static_cast<double>(nP_per_unit), std::move(pvals));
  return tables;
}

std::mutex g_tables_mu;
std::map<std::pair<int, int>, std::shared_ptr<const detail::RadialTables>> g_tables;

std::shared_ptr<const detail::RadialTables> tables_for(int dim, int resolution) {
  {
    std::lock_guard<std::mutex> lk(g_tables_mu);
    auto it = g_tables.find({dim, resolution});
    if (it != g_tables.end()) return it->second;
  }
  auto fresh = build_tables(dim, resolution);
  std::lock_guard<std::mutex> lk(g_tables_mu);
  auto& slot = g_tables[{dim, resolution}];
  if (!slot) slot = fresh;
  return slot;
}

}  // namespace

double CutoffProfile::profile(double r) const {
  r = std::abs(r);
  if (r >= 1.0) return 0.0;
  return std::clamp(tables_->b_profile.eval(r), 0.0, 1.0);
}

double CutoffProfile::psi(double s) const {
  s = std::abs(s);
  if (s >= tables_->s_max) return 0.0;
  return std::max(0.0, tables_->p_profile.eval(s));
}

double CutoffProfile::lattice_value(const Point& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("lattice_value: dimension mismatch");
  long double n2 = 0.0L;
  for (Coord c : x) {
    if (c % q_ != 0) return 0.0;
    n2 += static_cast<long double>(c) * c;
  }
  double cell = 1.0;
  for (int i = 0; i < dim_; ++i) cell *= static_cast<double>(q_) / L_;
  return cell * psi(static_cast<double>(std::sqrt(n2)) / L_);
}

double CutoffProfile::fourier(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != dim_)
    throw std::invalid_argument("fourier: dimension mismatch");
  // Accumulate profile(L |xi - l/q|) over the lattice points l/q with
  // every coordinate within 1/L of xi (no other term can contribute).
  const double inv_l = 1.0 / L_;
  double total = 0.0;
  Point lo(static_cast<std::size_t>(dim_)), hi(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    lo[static_cast<std::size_t>(i)] = static_cast<Coord>(
        std::ceil(static_cast<double>(q_) * (xi[static_cast<std::size_t>(i)] - inv_l) - 1e-12));
    hi[static_cast<std::size_t>(i)] = static_cast<Coord>(
        std::floor(static_cast<double>(q_) * (xi[static_cast<std::size_t>(i)] + inv_l) + 1e-12));
  }
  // Depth-first over candidate boxes with partial-distance pruning.
  std::vector<Coord> l(static_cast<std::size_t>(dim_));
  std::vector<double> partial(static_cast<std::size_t>(dim_) + 1, 0.0);
  int level = 0;
  l[0] = lo[0];
  while (level >= 0) {
    if (l[static_cast<std::size_t>(level)] > hi[static_cast<std::size_t>(level)]) {
      --level;
      if (level >= 0) ++l[static_cast<std::size_t>(level)];
      continue;
    }
    const double diff = xi[static_cast<std::size_t>(level)] -
                        static_cast<double>(l[static_cast<std::size_t>(level)]) /
                            static_cast<double>(q_);
    const double d2 = partial[static_cast<std::size_t>(level)] + diff * diff;
    if (d2 * L_ * L_ > 1.0) {
      ++l[static_cast<std::size_t>(level)];
      continue;
    }
    if (level + 1 == dim_) {
      total += profile(L_ * std::sqrt(d2));
      ++l[static_cast<std::size_t>(level)];
    } else {
      partial[static_cast<std::size_t>(level) + 1] = d2;
      ++level;
      l[static_cast<std::size_t>(level)] = lo[static_cast<std::size_t>(level)];
    }
  }
  return std::clamp(total, 0.0, 1.0);
}

double CutoffProfile::lattice_mass() const { return tail_mass(0.0); }

double CutoffProfile::tail_mass(double radius) const {
  // Sum over x in (qZ)^d with |x| >= radius: radially reduced through the
  // representation counts of the unit lattice (x = q m).
  const double s_grid = static_cast<double>(q_) / L_;  // s at |m| = 1
  const double n_cap_f = tables_->s_max / s_grid;
  const std::int64_t n_max = static_cast<std::int64_t>(n_cap_f * n_cap_f) + 1;
  if (n_max > 2'000'000)
    throw std::invalid_argument(
        "tail_mass: L/q too large for the radial table range");
  const auto counts = representation_counts_upto(dim_, n_max);
  const double r_over_q = radius / static_cast<double>(q_);
  std::int64_t n_lo = 0;
  if (radius > 0.0) {
    n_lo = static_cast<std::int64_t>(std::ceil(r_over_q * r_over_q - 1e-9));
    if (n_lo < 0) n_lo = 0;
  }
  double cell = 1.0;
  for (int i = 0; i < dim_; ++i) cell *= s_grid;
  Kahan acc;
  for (std::int64_t n = n_lo; n <= n_max; ++n) {
    const std::int64_t c = counts[static_cast<std::size_t>(n)];
    if (c == 0) continue;
    const double s = s_grid * std::sqrt(static_cast<double>(n));
    if (s >= tables_->s_max) break;
    acc.add(static_cast<long double>(c) * psi(s));
  }
  return static_cast<double>(acc.value() * static_cast<long double>(cell));
}

std::vector<double> CutoffProfile::grid_multiplier(Coord M) const {
  if (M < 1) throw std::invalid_argument("grid_multiplier: side must be >= 1");
  std::int64_t total = 1;
  for (int i = 0; i < dim_; ++i) {
    if (total > (std::int64_t{1} << 24) / M)
      throw std::invalid_argument("grid_multiplier: grid too large");
    total *= M;
  }
  std::vector<double> out(static_cast<std::size_t>(total));
  parallel_for_chunks(0, total, [&](std::int64_t lo_i, std::int64_t hi_i) {
    Point k;
    std::vector<double> xi(static_cast<std::size_t>(dim_));
    for (std::int64_t idx = lo_i; idx < hi_i; ++idx) {
      grid_decode(dim_, M, idx, k);
      for (int i = 0; i < dim_; ++i)
        xi[static_cast<std::size_t>(i)] =
            static_cast<double>(k[static_cast<std::size_t>(i)]) / static_cast<double>(M);
      out[static_cast<std::size_t>(idx)] = fourier(xi);
    }
  });
  return out;
}

CutoffProfile build_cutoff(int dim, std::int64_t q, double L, int resolution) {
  if (dim < 1 || dim > 8)
    throw std::invalid_argument("build_cutoff: dimension must be in [1, 8]");
  if (q < 1) throw std::invalid_argument("build_cutoff: q must be >= 1");
  if (!(static_cast<double>(q) <= L))
    throw std::invalid_argument("build_cutoff: requires q <= L");
  if (resolution < 0 || resolution > 4)
    throw std::invalid_argument("build_cutoff: resolution must be in [0, 4]");
  CutoffProfile p;
  p.dim_ = dim;
  p.q_ = q;
  p.L_ = L;
  p.tables_ = tables_for(dim, resolution);
  return p;
}

double ChiKernel::value(const Point& x) const {
  if (static_cast<int>(x.size()) != dim)
    throw std::invalid_argument("ChiKernel::value: dimension mismatch");
  for (Coord c : x) {
    if (c % q != 0) return 0.0;
    const Coord m = c / q;
    if (m > half_count || m < -half_count) return 0.0;
  }
  return cell_value;
}

double ChiKernel::mass() const {
  double v = 1.0;
  for (int i = 0; i < dim; ++i)
    v *= static_cast<double>(2 * half_count + 1) * static_cast<double>(q) / L;
  return v;
}

ChiKernel chi_builder(int dim, std::int64_t q, double L) {
  if (dim < 1) throw std::invalid_argument("chi_builder: dim must be >= 1");
  if (q < 1) throw std::invalid_argument("chi_builder: q must be >= 1");
  if (!(static_cast<double>(q) <= L))
    throw std::invalid_argument("chi_builder: requires q <= L");
  ChiKernel k;
  k.dim = dim;
  k.q = q;
  k.L = L;
  k.half_count = static_cast<std::int64_t>(std::floor(L / (2.0 * static_cast<double>(q)) + 1e-12));
  k.cell_value = 1.0;
  for (int i = 0; i < dim; ++i) k.cell_value *= static_cast<double>(q) / L;
  return k;
}

namespace {

// Orbit size of a coordinate pattern m_1 >= m_2 >= ... >= m_d >= 0 under
// signed permutations: d! / (prod of run factorials) * 2^{#nonzero}.
double orbit_size(const std::vector<Coord>& m) {
  double perms = 1.0;
  for (std::size_t i = 2; i <= m.size(); ++i) perms *= static_cast<double>(i);
  std::size_t i = 0;
  int nonzero = 0;
  while (i < m.size()) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    double runf = 1.0;
    for (std::size_t k = 2; k <= j - i; ++k) runf *= static_cast<double>(k);
    perms /= runf;
    if (m[i] != 0) nonzero += static_cast<int>(j - i);
    i = j;
  }
  return perms * std::pow(2.0, nonzero);
}

}  // namespace

double cutoff_l1_comparison(int dim, std::int64_t q, double L, double L1) {
  if (!(static_cast<double>(q) <= L && L <= L1))
    throw std::invalid_argument("cutoff_l1_comparison: requires q <= L <= L1");
  const CutoffProfile psi1 = build_cutoff(dim, q, L1);
  const ChiKernel chi = chi_builder(dim, q, L);
  const std::int64_t h = chi.half_count;
  // Truncation radius in m-lattice units: beyond s_cut the space profile
  // carries ~1e-14 of mass, far below the tolerance of every consumer.
  const double s_cut = 28.0;
  const std::int64_t R =
      static_cast<std::int64_t>(std::ceil(s_cut * L1 / static_cast<double>(q))) + h + 1;
  // Work estimate over the fundamental domain m_1 >= ... >= m_d >= 0.
  double leaves = 1.0;
  for (int i = 0; i < dim; ++i) leaves = leaves * (static_cast<double>(R) + 1.0 + i) / (i + 1.0);
  double box = std::pow(2.0 * static_cast<double>(h) + 1.0, dim);
  if (leaves * box > 5e8)
    throw std::invalid_argument("cutoff_l1_comparison: scales too large for direct summation");

  const double s_grid = static_cast<double>(q) / L1;
  auto psi_at = [&](long double n2) {
    return psi1.psi(s_grid * static_cast<double>(std::sqrt(n2)));
  };
  Kahan total;
  std::vector<Coord> m(static_cast<std::size_t>(dim), 0);
  std::vector<Coord> j(static_cast<std::size_t>(dim), 0);
  // Depth-first over the ordered simplex.
  auto leaf = [&]() {
    // chi * psi1 at q m (cell factors pulled out): chi_cell sum_j P(|m-j|).
    Kahan conv;
    for (std::size_t t = 0; t < j.size(); ++t) j[t] = -h;
    bool done = false;
    while (!done) {
      long double n2 = 0.0L;
      for (std::size_t t = 0; t < j.size(); ++t) {
        const long double dcoord = static_cast<long double>(m[t] - j[t]);
        n2 += dcoord * dcoord;
      }
      conv.add(static_cast<long double>(psi_at(n2)));
      done = true;
      for (std::size_t t = j.size(); t-- > 0;) {
        if (j[t] < h) {
          ++j[t];
          for (std::size_t u = t + 1; u < j.size(); ++u) j[u] = -h;
          done = false;
          break;
        }
      }
    }
    long double n2m = 0.0L;
    for (std::size_t t = 0; t < m.size(); ++t)
      n2m += static_cast<long double>(m[t]) * m[t];
    const double chi_mass_cell = chi.cell_value;  // (q/L)^d per box point
    const double diff = std::abs(
        chi_mass_cell * static_cast<double>(conv.value()) - psi_at(n2m));
    total.add(static_cast<long double>(diff) * static_cast<long double>(orbit_size(m)));
  };
  // simplex recursion (iterative)
  std::vector<Coord> hi_stack(static_cast<std::size_t>(dim));
  int level = 0;
  m[0] = 0;
  hi_stack[0] = R;
  while (level >= 0) {
    if (m[static_cast<std::size_t>(level)] > hi_stack[static_cast<std::size_t>(level)]) {
      --level;
      if (level >= 0) ++m[static_cast<std::size_t>(level)];
      continue;
    }
    if (level + 1 == dim) {
      leaf();
      ++m[static_cast<std::size_t>(level)];
    } else {
      ++level;
      hi_stack[static_cast<std::size_t>(level)] = m[static_cast<std::size_t>(level - 1)];
      m[static_cast<std::size_t>(level)] = 0;
    }
  }
  double cell1 = 1.0;
  for (int i = 0; i < dim; ++i) cell1 *= s_grid;
  return cell1 * static_cast<double>(total.value());
}

}  // namespace latdist
