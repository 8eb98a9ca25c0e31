// Theorem-facing checkers: the combinatorial/spectral counting identity,
// pointwise ratio searches (one radius, and one base point pinned across
// a window of radii), and the two-branch dichotomy reports with their
// smoothing diagnostics.
//
// The counting identity ties the two worlds together exactly:
//   sum_{x in A} |A ∩ (x + S)| / |S|  =  M^{-d} sum_k |F_A(k)|^2 shat(k/M),
// where F_A is the DFT of the indicator and shat the normalized sphere
// sum. The left side is evaluated combinatorially in exact integers, the
// right side spectrally; the residual is their absolute difference.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "latdist/point_set.hpp"
#include "latdist/types.hpp"

namespace latdist {

struct IdentityCheck {
  double lhs = 0;
  double rhs = 0;
  double residual = 0;
  Coord torus_side = 0;          // M used for the spectral side
  std::int64_t sphere_count = 0;
  std::int64_t pair_count = 0;   // exact integer numerator of the left side
};
// Periodic sets use M = N; truncate sets are padded to the next
// power of two >= N + 2 ceil(sqrt(lambda)). Empty spheres are rejected
// with std::invalid_argument.
IdentityCheck count_identity_check(const PointSet& A, std::int64_t lambda);

struct RatioSearch {
  Point best_x;            // lexicographically first maximizer in A
  std::int64_t best_count = 0;
  double best_ratio = 0;   // best_count / |S|
  double density = 0;      // |A| / N^d
  double threshold = 0;    // density - epsilon
  bool holds = false;      // best_ratio > threshold (strict)
};
// Exact maximization of |A ∩ (x + q S)| / |S| over base points x in A.
RatioSearch unpinned_check(const PointSet& A, std::int64_t lambda,
                           double epsilon, std::int64_t q = 1);

struct PinnedResult {
  bool found = false;
  Point witness;  // lexicographically first x in A passing every radius
  std::vector<std::pair<std::int64_t, double>> ratio_table;  // (lambda, ratio) at the witness
  double density = 0;
  double threshold = 0;
  bool holds = false;  // same as found
};
// Searches for one x in A whose ratio exceeds density - epsilon at every
// integer lambda in [lambda0, lambda1] with a nonempty sphere.
PinnedResult pinned_check(const PointSet& A, std::int64_t lambda0,
                          std::int64_t lambda1, double epsilon,
                          std::int64_t q = 1);

// Normalized frequency mass of the indicator over the annular shell
// family at modulus q_mod: (1/|A|) M^{-d} sum_{k/M in shell} |F_A(k)|^2.
double annulus_fourier_mass(const PointSet& A, double eta,
                            std::uint64_t q_mod, std::int64_t lambda0,
                            std::int64_t lambda1);

struct DichotomyBranchI {
  bool pinned = false;
  Point best_x;
  double best_ratio = 0;     // unpinned form only
  std::vector<std::pair<std::int64_t, double>> witness_table;  // pinned form only
  double threshold = 0;
  bool holds = false;
};
struct DichotomyBranchII {
  double fourier_mass = 0;
  double threshold = 0;  // constant * epsilon (pair form: * epsilon^2)
  bool holds = false;    // fourier_mass >= threshold
};
// Smoothing diagnostics: f1 = f * cutoff(L1), f2 = f * cutoff(L2) with
// L1 = eta^{-1/2} sqrt(lambda1), L2 = eta sqrt(lambda0). At desk scale
// the honest modulus usually exceeds L2, so the diagnostics run at the
// largest divisor of it that is <= L2 (modulus_reduced flag); when even
// modulus 1 exceeds L2 the block is marked unavailable.
struct DichotomyDiagnostics {
  bool available = false;
  bool modulus_reduced = false;
  std::uint64_t modulus = 0;
  double scale_l1 = 0;
  double scale_l2 = 0;
  double main_term = 0;        // <f, A f1> (single-radius form)
  double error_pairing = 0;    // <f, A (f - f2)> (single-radius form)
  std::int64_t exceptional_count = 0;  // #{x : f1(x) <= density - C eta}
  double maximal_pairing = 0;  // <f, A_*(1 - f1)> (pinned form)
  double mollified_term = 0;   // <f, A_{*,eta} f> (pinned form)
};
struct DichotomyOptions {
  double branch_ii_constant = 1.0;  // threshold = constant * eps (or eps^2)
  double exceptional_c = 1.0;       // C in the exceptional-set cut
  std::int64_t q_scale = 1;         // dilation for the branch (i) search
};
struct DichotomyReport {
  int dim = 0;
  Coord side = 0;
  bool pinned = false;
  std::int64_t lambda0 = 0;
  std::int64_t lambda1 = 0;
  double epsilon = 0;
  double eta = 0;
  double c_qeta = 1;
  std::uint64_t q_eta_val = 1;
  double density = 0;
  DichotomyBranchI branch_i;
  DichotomyBranchII branch_ii;
  DichotomyDiagnostics diagnostics;
  // Asymptotic parameter window lambda in [eta^{-4} * Lu^2, eta^{11} N^2]
  // evaluated at the minimal uniformity scale Lu = 1; violations are
  // reported, never refused.
  double window_lambda_min = 0;
  double window_lambda_max = 0;
  bool window_ok = false;
};

DichotomyReport dichotomy_report(const PointSet& A, std::int64_t lambda,
                                 double epsilon, double eta, double c_qeta,
                                 const DichotomyOptions& opt = {});
DichotomyReport dichotomy_report_pinned(const PointSet& A, std::int64_t lambda0,
                                        std::int64_t lambda1, double epsilon,
                                        double eta, double c_qeta,
                                        const DichotomyOptions& opt = {});

}  // namespace latdist
