#include "latdist/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "latdist/parallel.hpp"

namespace latdist {

namespace {

using cplx = std::complex<double>;

// Twiddle tables e^{sign * 2 pi i j / M}, j = 0..M-1, computed in long
// double and cached per (M, sign).
std::mutex g_tw_mu;
std::map<std::pair<Coord, int>, std::shared_ptr<const std::vector<cplx>>> g_tw;

std::shared_ptr<const std::vector<cplx>> twiddles(Coord M, int sign) {
  std::lock_guard<std::mutex> lk(g_tw_mu);
  auto key = std::make_pair(M, sign);
  auto it = g_tw.find(key);
  if (it != g_tw.end()) return it->second;
  auto tab = std::make_shared<std::vector<cplx>>(static_cast<std::size_t>(M));
  const long double step = 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(M);
  for (Coord j = 0; j < M; ++j) {
    const long double a = step * static_cast<long double>(j) * sign;
    (*tab)[static_cast<std::size_t>(j)] = {static_cast<double>(std::cos(a)),
                                           static_cast<double>(std::sin(a))};
  }
  g_tw.emplace(key, tab);
  return tab;
}

bool is_pow2(Coord M) { return M > 0 && (M & (M - 1)) == 0; }

// In-place radix-2 transform of `line` (length M, power of two) with
// e^{sign 2 pi i / M} roots.
void fft_pow2(cplx* line, Coord M, const std::vector<cplx>& tw) {
  // Bit reversal.
  for (Coord i = 1, j = 0; i < M; ++i) {
    Coord bit = M >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(line[i], line[j]);
  }
  for (Coord len = 2; len <= M; len <<= 1) {
    const Coord step = M / len;
    for (Coord i = 0; i < M; i += len) {
      for (Coord k = 0; k < len / 2; ++k) {
        const cplx w = tw[static_cast<std::size_t>(k * step)];
        const cplx u = line[i + k];
        const cplx v = line[i + k + len / 2] * w;
        line[i + k] = u + v;
        line[i + k + len / 2] = u - v;
      }
    }
  }
}

// Naive exact transform for general M; roots indexed by (j*k) mod M.
void dft_naive(const cplx* in, cplx* out, Coord M, const std::vector<cplx>& tw) {
  for (Coord k = 0; k < M; ++k) {
    cplx acc{0.0, 0.0};
    std::int64_t idx = 0;
    for (Coord j = 0; j < M; ++j) {
      acc += in[j] * tw[static_cast<std::size_t>(idx)];
      idx += k;
      if (idx >= M) idx -= M;
    }
    out[k] = acc;
  }
}

// Transforms every length-M line along one axis of the row-major array.
// stride is the index step between consecutive entries of a line.
void transform_axis(std::vector<cplx>& data, Coord M, std::int64_t stride, int sign) {
  const std::int64_t total = static_cast<std::int64_t>(data.size());
  const std::int64_t block = M * stride;          // span of one line group
  const std::int64_t n_lines = total / M;
  const auto tw = twiddles(M, sign);
  const bool pow2 = is_pow2(M);
  parallel_for_chunks(0, n_lines, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<cplx> scratch(static_cast<std::size_t>(M));
    std::vector<cplx> scratch2(pow2 ? 0u : static_cast<std::size_t>(M));
    for (std::int64_t ln = lo; ln < hi; ++ln) {
      const std::int64_t outer = ln / stride;
      const std::int64_t inner = ln % stride;
      const std::int64_t base = outer * block + inner;
      for (Coord j = 0; j < M; ++j) scratch[static_cast<std::size_t>(j)] = data[base + j * stride];
      if (pow2) {
        fft_pow2(scratch.data(), M, *tw);
      } else {
        dft_naive(scratch.data(), scratch2.data(), M, *tw);
        scratch.swap(scratch2);
      }
      for (Coord j = 0; j < M; ++j) data[base + j * stride] = scratch[static_cast<std::size_t>(j)];
    }
  });
}

void transform_all(std::vector<cplx>& data, int dim, Coord M, int sign) {
  std::int64_t stride = 1;
  for (int axis = dim - 1; axis >= 0; --axis) {
    transform_axis(data, M, stride, sign);
    stride *= M;
  }
}

}  // namespace

Spectrum dft(const GridFunction& f) {
  if (f.size() == 0) throw std::invalid_argument("dft: empty grid");
  Spectrum F;
  F.dim = f.dim;
  F.side = f.side;
  F.values = f.values;
  transform_all(F.values, f.dim, f.side, -1);
  return F;
}

GridFunction idft(const Spectrum& F, BoundaryMode mode, Coord support_side) {
  if (F.size() == 0) throw std::invalid_argument("idft: empty spectrum");
  GridFunction f = make_grid(F.dim, F.side, mode,
                             support_side == 0 ? F.side : support_side);
  f.values = F.values;
  transform_all(f.values, F.dim, F.side, +1);
  double scale = 1.0;
  for (int i = 0; i < F.dim; ++i) scale /= static_cast<double>(F.side);
  for (auto& v : f.values) v *= scale;
  return f;
}

double parseval_check(const GridFunction& f, const GridFunction& g) {
  if (f.dim != g.dim || f.side != g.side)
    throw std::invalid_argument("parseval_check: shape mismatch");
  std::complex<long double> space{0.0L, 0.0L};
  for (std::int64_t i = 0; i < f.size(); ++i) {
    const auto a = f.values[static_cast<std::size_t>(i)];
    const auto b = g.values[static_cast<std::size_t>(i)];
    space += std::complex<long double>(a.real(), a.imag()) *
             std::complex<long double>(b.real(), -b.imag());
  }
  const Spectrum F = dft(f), G = dft(g);
  std::complex<long double> freq{0.0L, 0.0L};
  for (std::int64_t i = 0; i < F.size(); ++i) {
    const auto a = F.values[static_cast<std::size_t>(i)];
    const auto b = G.values[static_cast<std::size_t>(i)];
    freq += std::complex<long double>(a.real(), a.imag()) *
            std::complex<long double>(b.real(), -b.imag());
  }
  long double scale = 1.0L;
  for (int i = 0; i < f.dim; ++i) scale /= static_cast<long double>(f.side);
  const std::complex<long double> diff = space - freq * scale;
  return static_cast<double>(std::abs(diff));
}

double sigma_hat(const Sphere& S, std::span<const double> xi) {
  if (S.points.empty()) throw std::invalid_argument("sigma_hat: empty sphere");
  if (static_cast<int>(xi.size()) != S.dim)
    throw std::invalid_argument("sigma_hat: dimension mismatch");
  long double acc = 0.0L;
  Point neg(static_cast<std::size_t>(S.dim));
  for (const Point& p : S.points) {
    bool zero = true, greater_than_neg = false;
    for (int i = 0; i < S.dim; ++i) {
      const Coord c = p[static_cast<std::size_t>(i)];
      neg[static_cast<std::size_t>(i)] = -c;
      if (c != 0) zero = false;
    }
    if (zero) {
      acc += 1.0L;  // the origin pairs with itself
      continue;
    }
    greater_than_neg = p > neg;
    if (!greater_than_neg) continue;  // the partner handles this pair
    double dot = 0.0;
    for (int i = 0; i < S.dim; ++i)
      dot += static_cast<double>(p[static_cast<std::size_t>(i)]) * xi[static_cast<std::size_t>(i)];
    acc += 2.0L * static_cast<long double>(
                      std::cos(2.0 * std::numbers::pi * dot));
  }
  return static_cast<double>(acc / static_cast<long double>(S.count()));
}

Spectrum sigma_hat_grid(const Sphere& S, Coord M, std::int64_t q) {
  if (S.points.empty()) throw std::invalid_argument("sigma_hat_grid: empty sphere");
  if (M < 1) throw std::invalid_argument("sigma_hat_grid: side must be >= 1");
  if (q < 1) throw std::invalid_argument("sigma_hat_grid: q must be >= 1");
  GridFunction counts = make_grid(S.dim, M, BoundaryMode::periodic);
  Point c(static_cast<std::size_t>(S.dim));
  for (const Point& y : S.points) {
    for (int i = 0; i < S.dim; ++i) {
      Coord v = (q * y[static_cast<std::size_t>(i)]) % M;
      if (v < 0) v += M;
      c[static_cast<std::size_t>(i)] = v;
    }
    counts.values[static_cast<std::size_t>(grid_index(S.dim, M, c))] += cplx{1.0, 0.0};
  }
  Spectrum F = dft(counts);
  const double inv = 1.0 / static_cast<double>(S.count());
  for (auto& v : F.values) v *= inv;
  return F;
}

Spectrum multiply(const Spectrum& F, const Spectrum& G) {
  if (F.dim != G.dim || F.side != G.side)
    throw std::invalid_argument("multiply: shape mismatch");
  Spectrum H = F;
  for (std::int64_t i = 0; i < F.size(); ++i)
    H.values[static_cast<std::size_t>(i)] *= G.values[static_cast<std::size_t>(i)];
  return H;
}

double l2_norm(const GridFunction& f) {
  long double acc = 0.0L;
  for (const auto& v : f.values)
    acc += static_cast<long double>(v.real()) * v.real() +
           static_cast<long double>(v.imag()) * v.imag();
  return static_cast<double>(std::sqrt(acc));
}

}  // namespace latdist
