// Finite point sets in a translated box, with O(1) membership indexing.
//
// A PointSet is a subset A of anchor + {1..N}^d, stored sorted and
// duplicate-free. The boundary mode records how the box is read when A
// is embedded into group computations: `periodic` identifies the box
// with the torus of side N, `truncate` treats A as a patch of the
// infinite lattice. The text format is line-oriented: a header line
// "d N anchor_1 ... anchor_d mode" followed by one point per line.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "latdist/types.hpp"

namespace latdist {

// Parser failure carrying the 1-based line number of the offending line.
class parse_error : public std::runtime_error {
 public:
  parse_error(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct PointSet {
  int dim = 0;
  Coord side = 0;          // N
  Point anchor;            // box is anchor + {1..N}^d
  BoundaryMode mode = BoundaryMode::periodic;
  std::vector<Point> elements;  // sorted lexicographically, unique, in-box

  std::int64_t size() const { return static_cast<std::int64_t>(elements.size()); }
  // Throws std::invalid_argument if any structural invariant fails.
  void validate() const;
};

// |A| / N^d.
double box_density(const PointSet& A);

// Dense bitmap over the box for O(1) membership tests.
// Canonical coordinates are box-relative: c = x - anchor - 1 in {0..N-1}^d.
class PointSetIndex {
 public:
  explicit PointSetIndex(const PointSet& A);

  int dim() const { return dim_; }
  Coord side() const { return side_; }
  BoundaryMode mode() const { return mode_; }
  std::int64_t count() const { return count_; }
  const Point& anchor() const { return anchor_; }

  // Membership of an absolute lattice point. In periodic mode coordinates
  // are reduced mod N into the box; in truncate mode points outside the
  // box are absent.
  bool contains(const Point& x) const;

  // Membership by canonical box-relative coordinates in {0..N-1}^d
  // (no reduction, no bounds forgiveness).
  bool contains_canonical(const Point& c) const;

 private:
  int dim_;
  Coord side_;
  Point anchor_;
  BoundaryMode mode_;
  std::int64_t count_;
  std::vector<std::uint8_t> bits_;
};

// Text I/O per the documented format. Loading validates dimensions, box
// membership, duplicates; failures throw parse_error with a line number.
void save_point_set(const PointSet& A, std::ostream& os);
PointSet load_point_set(std::istream& is);

}  // namespace latdist
