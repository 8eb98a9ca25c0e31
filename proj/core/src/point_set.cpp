#include "latdist/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace latdist {

namespace {

std::int64_t checked_pow(Coord base, int exp, std::int64_t limit) {
  std::int64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > limit / base) throw std::invalid_argument("box volume exceeds the supported range");
    v *= base;
  }
  return v;
}

}  // namespace

void PointSet::validate() const {
  if (dim < 1) throw std::invalid_argument("PointSet: dim must be >= 1");
  if (side < 1) throw std::invalid_argument("PointSet: side must be >= 1");
  if (static_cast<int>(anchor.size()) != dim)
    throw std::invalid_argument("PointSet: anchor length must equal dim");
  checked_pow(side, dim, (std::int64_t{1} << 62));
  const Point* prev = nullptr;
  for (const Point& p : elements) {
    if (static_cast<int>(p.size()) != dim)
      throw std::invalid_argument("PointSet: element length must equal dim");
    for (int i = 0; i < dim; ++i) {
      const Coord rel = p[static_cast<std::size_t>(i)] - anchor[static_cast<std::size_t>(i)];
      if (rel < 1 || rel > side)
        throw std::invalid_argument("PointSet: element outside the box");
    }
    if (prev != nullptr) {
      if (!(*prev < p))
        throw std::invalid_argument("PointSet: elements must be sorted and unique");
    }
    prev = &p;
  }
}

double box_density(const PointSet& A) {
  A.validate();
  double vol = 1.0;
  for (int i = 0; i < A.dim; ++i) vol *= static_cast<double>(A.side);
  return static_cast<double>(A.size()) / vol;
}

PointSetIndex::PointSetIndex(const PointSet& A)
    : dim_(A.dim), side_(A.side), anchor_(A.anchor), mode_(A.mode), count_(A.size()) {
  A.validate();
  std::int64_t cells = 1;
  for (int i = 0; i < dim_; ++i) {
    if (cells > (std::int64_t{1} << 30) / side_)
      throw std::invalid_argument("PointSetIndex: box too large to index");
    cells *= side_;
  }
  bits_.assign(static_cast<std::size_t>(cells), 0);
  for (const Point& p : A.elements) {
    std::int64_t idx = 0;
    for (int i = 0; i < dim_; ++i)
      idx = idx * side_ + (p[static_cast<std::size_t>(i)] - anchor_[static_cast<std::size_t>(i)] - 1);
    bits_[static_cast<std::size_t>(idx)] = 1;
  }
}

bool PointSetIndex::contains_canonical(const Point& c) const {
  std::int64_t idx = 0;
  for (int i = 0; i < dim_; ++i) {
    const Coord v = c[static_cast<std::size_t>(i)];
    if (v < 0 || v >= side_) return false;
    idx = idx * side_ + v;
  }
  return bits_[static_cast<std::size_t>(idx)] != 0;
}

bool PointSetIndex::contains(const Point& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("PointSetIndex: dimension mismatch");
  std::int64_t idx = 0;
  for (int i = 0; i < dim_; ++i) {
    Coord v = x[static_cast<std::size_t>(i)] - anchor_[static_cast<std::size_t>(i)] - 1;
    if (mode_ == BoundaryMode::periodic) {
      v %= side_;
      if (v < 0) v += side_;
    } else if (v < 0 || v >= side_) {
      return false;
    }
    idx = idx * side_ + v;
  }
  return bits_[static_cast<std::size_t>(idx)] != 0;
}

void save_point_set(const PointSet& A, std::ostream& os) {
  A.validate();
  os << A.dim << ' ' << A.side;
  for (Coord a : A.anchor) os << ' ' << a;
  os << ' ' << to_string(A.mode) << '\n';
  for (const Point& p : A.elements) {
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
    os << '\n';
  }
}

PointSet load_point_set(std::istream& is) {
  std::string line;
  int line_no = 0;
  // Header: "d N anchor_1 ... anchor_d mode".
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  if (line_no == 0 || line.find_first_not_of(" \t\r") == std::string::npos)
    throw parse_error(std::max(line_no, 1), "missing header line");
  PointSet A;
  {
    std::istringstream hs(line);
    std::string mode_tok;
    if (!(hs >> A.dim)) throw parse_error(line_no, "cannot read dimension");
    if (A.dim < 1) throw parse_error(line_no, "dimension must be >= 1");
    if (!(hs >> A.side)) throw parse_error(line_no, "cannot read box side");
    if (A.side < 1) throw parse_error(line_no, "box side must be >= 1");
    A.anchor.resize(static_cast<std::size_t>(A.dim));
    for (int i = 0; i < A.dim; ++i)
      if (!(hs >> A.anchor[static_cast<std::size_t>(i)]))
        throw parse_error(line_no, "cannot read anchor coordinate " + std::to_string(i + 1));
    if (!(hs >> mode_tok)) throw parse_error(line_no, "missing boundary mode");
    try {
      A.mode = boundary_mode_from_string(mode_tok);
    } catch (const std::invalid_argument& e) {
      throw parse_error(line_no, e.what());
    }
    std::string extra;
    if (hs >> extra) throw parse_error(line_no, "unexpected token '" + extra + "'");
  }
  std::vector<std::pair<Point, int>> pts;  // point + its line for diagnostics
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    Point p(static_cast<std::size_t>(A.dim));
    for (int i = 0; i < A.dim; ++i)
      if (!(ls >> p[static_cast<std::size_t>(i)]))
        throw parse_error(line_no, "cannot read coordinate " + std::to_string(i + 1));
    std::string extra;
    if (ls >> extra) throw parse_error(line_no, "unexpected token '" + extra + "'");
    for (int i = 0; i < A.dim; ++i) {
      const Coord rel = p[static_cast<std::size_t>(i)] - A.anchor[static_cast<std::size_t>(i)];
      if (rel < 1 || rel > A.side)
        throw parse_error(line_no, "point outside the box in coordinate " + std::to_string(i + 1));
    }
    pts.emplace_back(std::move(p), line_no);
  }
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].first == pts[i - 1].first)
      throw parse_error(std::max(pts[i].second, pts[i - 1].second), "duplicate point");
  A.elements.reserve(pts.size());
  for (auto& pr : pts) A.elements.push_back(std::move(pr.first));
  A.validate();
  return A;
}

}  // namespace latdist
