// Shared basic types for lattice points, boxes, and boundary conventions.
// Coordinates are signed 64-bit integers throughout; a "point" is a
// d-vector of coordinates and containers of points are kept in
// lexicographic order so every consumer sees one canonical ordering.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace latdist {

using Coord = std::int64_t;
using Point = std::vector<Coord>;

// How a finite box of lattice points is interpreted when it is embedded
// into a computation: `periodic` wraps it onto the cyclic group Z_M^d,
// `truncate` treats it as a patch of Z^d with zero outside.
enum class BoundaryMode { periodic, truncate };

inline std::string to_string(BoundaryMode m) {
  return m == BoundaryMode::periodic ? "periodic" : "truncate";
}

inline BoundaryMode boundary_mode_from_string(const std::string& s) {
  if (s == "periodic") return BoundaryMode::periodic;
  if (s == "truncate") return BoundaryMode::truncate;
  throw std::invalid_argument("unknown boundary mode: '" + s + "'");
}

// Squared Euclidean norm, exact in 64-bit (desk-scale coordinates).
inline std::int64_t norm_sq(const Point& x) {
  std::int64_t s = 0;
  for (Coord c : x) s += c * c;
  return s;
}

// Lexicographic comparison used as the canonical point order everywhere.
inline bool lex_less(const Point& a, const Point& b) { return a < b; }

// Library version reported in every machine-readable artifact.
inline const char* version_string() { return "1.0.0"; }

}  // namespace latdist
