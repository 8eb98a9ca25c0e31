#include "latdist/grid.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace latdist {

namespace {
constexpr std::int64_t kCellBudget = std::int64_t{1} << 24;

std::int64_t checked_cells(int dim, Coord side) {
  if (dim < 1) throw std::invalid_argument("grid: dim must be >= 1");
  if (side < 1) throw std::invalid_argument("grid: side must be >= 1");
  std::int64_t cells = 1;
  for (int i = 0; i < dim; ++i) {
    if (cells > kCellBudget / side)
      throw std::invalid_argument("grid: side^dim exceeds the cell budget");
    cells *= side;
  }
  return cells;
}
}  // namespace

GridFunction make_grid(int dim, Coord side, BoundaryMode mode, Coord support_side) {
  const std::int64_t cells = checked_cells(dim, side);
  if (support_side == 0) support_side = side;
  if (support_side < 1 || support_side > side)
    throw std::invalid_argument("grid: support side must lie in [1, side]");
  if (mode == BoundaryMode::periodic && support_side != side)
    throw std::invalid_argument("grid: periodic support must equal the side");
  GridFunction f;
  f.dim = dim;
  f.side = side;
  f.mode = mode;
  f.support_side = support_side;
  f.values.assign(static_cast<std::size_t>(cells), {0.0, 0.0});
  return f;
}

std::int64_t grid_index(int dim, Coord side, const Point& x) {
  std::int64_t idx = 0;
  for (int i = 0; i < dim; ++i) {
    const Coord v = x[static_cast<std::size_t>(i)];
    if (v < 0 || v >= side) throw std::invalid_argument("grid_index: coordinate out of range");
    idx = idx * side + v;
  }
  return idx;
}

void grid_decode(int dim, Coord side, std::int64_t index, Point& out) {
  out.resize(static_cast<std::size_t>(dim));
  for (int i = dim - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = index % side;
    index /= side;
  }
}

GridFunction embed_point_set(const PointSet& A, Coord M) {
  A.validate();
  if (M == 0) M = A.side;
  if (A.mode == BoundaryMode::periodic && M != A.side)
    throw std::invalid_argument("embed_point_set: periodic sets embed at M = N only");
  if (M < A.side)
    throw std::invalid_argument("embed_point_set: grid side smaller than the box");
  GridFunction f = make_grid(A.dim, M, A.mode, A.mode == BoundaryMode::periodic ? M : A.side);
  Point c(static_cast<std::size_t>(A.dim));
  for (const Point& p : A.elements) {
    for (int i = 0; i < A.dim; ++i)
      c[static_cast<std::size_t>(i)] =
          p[static_cast<std::size_t>(i)] - A.anchor[static_cast<std::size_t>(i)] - 1;
    f.values[static_cast<std::size_t>(grid_index(A.dim, M, c))] = {1.0, 0.0};
  }
  return f;
}

void save_grid(const GridFunction& f, std::ostream& os) {
  os << f.dim << ' ' << f.side << ' ' << to_string(f.mode) << '\n';
  os.precision(17);
  for (const auto& v : f.values) os << v.real() << ' ' << v.imag() << '\n';
}

GridFunction load_grid(std::istream& is) {
  std::string line;
  int line_no = 0;
  if (!std::getline(is, line)) throw parse_error(1, "missing header line");
  ++line_no;
  int dim = 0;
  Coord side = 0;
  std::string mode_tok;
  {
    std::istringstream hs(line);
    if (!(hs >> dim >> side >> mode_tok))
      throw parse_error(line_no, "header must be 'd M mode'");
    std::string extra;
    if (hs >> extra) throw parse_error(line_no, "unexpected token '" + extra + "'");
  }
  BoundaryMode mode;
  try {
    mode = boundary_mode_from_string(mode_tok);
  } catch (const std::invalid_argument& e) {
    throw parse_error(line_no, e.what());
  }
  GridFunction f = make_grid(dim, side, mode);
  for (std::int64_t i = 0; i < f.size(); ++i) {
    if (!std::getline(is, line))
      throw parse_error(line_no + 1, "expected " + std::to_string(f.size()) +
                                         " value lines, got " + std::to_string(i));
    ++line_no;
    std::istringstream ls(line);
    double re = 0, im = 0;
    if (!(ls >> re >> im)) throw parse_error(line_no, "value line must be 're im'");
    std::string extra;
    if (ls >> extra) throw parse_error(line_no, "unexpected token '" + extra + "'");
    f.values[static_cast<std::size_t>(i)] = {re, im};
  }
  return f;
}

}  // namespace latdist
