// Complex-valued functions on the finite grid {0..M-1}^d.
//
// Values are stored row-major with coordinate 0 slowest. `periodic` mode
// means the grid is the cyclic group of side M; `truncate` means the
// function is a zero-padded patch of the infinite lattice whose genuine
// support lies in {0..support_side-1}^d, with enough padding (chosen by
// the caller) that convolutions of interest never wrap. The text dump
// format is a header "d M mode" followed by M^d lines "re im".
#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "latdist/point_set.hpp"
#include "latdist/types.hpp"

namespace latdist {

struct GridFunction {
  int dim = 0;
  Coord side = 0;  // M
  BoundaryMode mode = BoundaryMode::periodic;
  Coord support_side = 0;  // declared support box; equals side in periodic mode
  std::vector<std::complex<double>> values;  // side^dim entries, row-major

  std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
};

// Zero grid with validated shape (side^dim entries). support_side 0 means
// the full side. Throws std::invalid_argument on bad parameters or if
// side^dim would exceed the in-memory cell budget (2^24 cells).
GridFunction make_grid(int dim, Coord side, BoundaryMode mode,
                       Coord support_side = 0);

// Row-major index of x in {0..side-1}^d (coordinate 0 slowest).
std::int64_t grid_index(int dim, Coord side, const Point& x);
// Inverse of grid_index; writes into out (resized to dim).
void grid_decode(int dim, Coord side, std::int64_t index, Point& out);

// Indicator of A embedded at box-relative coordinates {0..N-1}^d.
// Periodic A requires M == 0 (meaning M = N) or M == N; truncate A may be
// padded into any M >= N. Throws std::invalid_argument otherwise.
GridFunction embed_point_set(const PointSet& A, Coord M = 0);

// Text I/O per the documented dump format.
void save_grid(const GridFunction& f, std::ostream& os);
GridFunction load_grid(std::istream& is);

}  // namespace latdist
