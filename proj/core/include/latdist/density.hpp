// Box densities, residue-class uniformity tests, the density-increment
// loop, and deterministic set generators.
//
// Residue classes are taken relative to the box anchor: the class of a
// point x is s in {1..q}^d with s_i = ((x_i - anchor_i - 1) mod q) + 1.
// A set is eta-uniform at modulus q when no class carries relative
// density above (1 + eta^2) times the global density; the subcube
// variant additionally localizes the count to each subcube of side L in
// the partition of the box (divisibility chain q | L | N required).
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "latdist/point_set.hpp"
#include "latdist/types.hpp"

namespace latdist {

enum class UniformityVariant { global, subcube };

struct SubcubeRow {
  Point subcube;        // subcube index in {0..N/L-1}^d
  Point worst_residue;  // class with the largest localized ratio
  double ratio = 0;
};

struct UniformityReport {
  double eta = 0;
  double c_qeta = 1;
  std::uint64_t q_eta_val = 1;
  UniformityVariant variant = UniformityVariant::global;
  Coord subcube_side = 0;  // 0 for the global variant
  double global_density = 0;
  Point worst_residue;     // lexicographically smallest among the worst
  Point worst_subcube;     // subcube variant only (empty otherwise)
  double worst_ratio = 0;  // max over tested classes of ratio to global density
  bool passed = false;     // worst_ratio <= 1 + eta^2
  std::vector<SubcubeRow> subcube_table;  // one row per subcube (subcube variant)
};

// Full scan over residue classes (and subcubes for the subcube variant).
// Requires q_eta | N (and q_eta | L | N for the subcube variant); a
// broken chain throws std::invalid_argument naming the failed division.
UniformityReport uniformity_test(const PointSet& A, double eta, double C,
                                 UniformityVariant variant = UniformityVariant::global,
                                 Coord subcube_side = 0);

struct IncrementStep {
  Coord side = 0;          // box side at this level
  std::int64_t count = 0;  // |A| at this level
  double density = 0;
  double worst_ratio = 0;
  bool passed = false;
  Point chosen_residue;    // class selected for the rescale (empty if none)
};

struct IncrementTrace {
  std::vector<IncrementStep> steps;
  std::string status;  // "passed" | "budget_exhausted" | "box_exhausted"
  double eta = 0;
  double c_qeta = 1;
  std::uint64_t q_eta_val = 1;
};

// Repeatedly tests uniformity and, on failure, passes to the densest
// residue class (lexicographically smallest among ties) rescaled to the
// box of side N/q. Densities along the trace increase strictly by a
// factor > 1 + eta^2, so the step count is at most
// log(1/density_0)/log(1 + eta^2). Stops when the test passes, when
// max_steps increments have been taken, or when the current side is no
// longer divisible by the modulus.
IncrementTrace density_increment(const PointSet& A, double eta, double C,
                                 std::int64_t max_steps);

// Deterministic set generators. Grammar for parse_generator_spec:
//   bernoulli:p=<real>,seed=<int>
//   congruence:r=<int>,shift=<int>        (shift broadcast to all axes)
//   union(<spec>;<spec>)
//   complement(<spec>)
struct GeneratorSpec {
  enum class Kind { bernoulli, congruence, set_union, set_complement };
  Kind kind = Kind::bernoulli;
  double p = 0;
  std::uint64_t seed = 0;
  std::int64_t r = 1;
  std::int64_t shift = 0;
  std::vector<GeneratorSpec> children;
};
GeneratorSpec parse_generator_spec(const std::string& text);

// Instantiates the spec on the box anchor + {1..N}^d (default anchor 0).
// Deterministic for fixed parameters; output sorted and duplicate-free.
PointSet generate_set(const GeneratorSpec& spec, int dim, Coord N,
                      BoundaryMode mode = BoundaryMode::periodic,
                      const Point* anchor = nullptr);

}  // namespace latdist
