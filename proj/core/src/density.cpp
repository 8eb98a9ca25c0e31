#include "latdist/density.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "latdist/arithmetic.hpp"
#include "latdist/rng.hpp"

namespace latdist {

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t v = 1;
  for (int i = 0; i < e; ++i) v *= b;
  return v;
}

// Linear index of the residue class of p (anchor-relative, mod q).
std::int64_t residue_index(const Point& p, const Point& anchor, std::int64_t q) {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::int64_t r = (p[i] - anchor[i] - 1) % q;
    if (r < 0) r += q;
    idx = idx * q + r;
  }
  return idx;
}

Point decode_residue(std::int64_t idx, int dim, std::int64_t q) {
  Point s(static_cast<std::size_t>(dim));
  for (int i = dim - 1; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = idx % q + 1;  // classes are 1-based
    idx /= q;
  }
  return s;
}

}  // namespace

UniformityReport uniformity_test(const PointSet& A, double eta, double C,
                                 UniformityVariant variant, Coord subcube_side) {
  A.validate();
  if (!(eta > 0.0)) throw std::invalid_argument("uniformity_test: eta must be positive");
  const std::uint64_t q_u = q_eta_u64(eta, C);
  if (q_u > static_cast<std::uint64_t>(A.side))
    throw std::invalid_argument("uniformity_test: modulus exceeds the box side");
  const auto q = static_cast<std::int64_t>(q_u);
  if (A.side % q != 0)
    throw std::invalid_argument("uniformity_test: divisibility chain broken: q_eta does not divide N");
  if (variant == UniformityVariant::subcube) {
    if (subcube_side < 1)
      throw std::invalid_argument("uniformity_test: subcube variant needs a subcube side");
    if (subcube_side % q != 0)
      throw std::invalid_argument("uniformity_test: divisibility chain broken: q_eta does not divide L");
    if (A.side % subcube_side != 0)
      throw std::invalid_argument("uniformity_test: divisibility chain broken: L does not divide N");
  }

  UniformityReport rep;
  rep.eta = eta;
  rep.c_qeta = C;
  rep.q_eta_val = q_u;
  rep.variant = variant;
  rep.subcube_side = variant == UniformityVariant::subcube ? subcube_side : 0;
  rep.global_density = box_density(A);
  const double bound = 1.0 + eta * eta;

  if (variant == UniformityVariant::global) {
    std::map<std::int64_t, std::int64_t> class_counts;
    for (const Point& p : A.elements) ++class_counts[residue_index(p, A.anchor, q)];
    // ratio = count * q^d / |A| (relative class density over global).
    const double scale =
        A.size() > 0 ? std::pow(static_cast<double>(q), A.dim) / static_cast<double>(A.size())
                     : 0.0;
    // Map iteration is ascending in the class index, so the first maximum
    // is the lexicographically smallest worst class.
    std::int64_t best_count = -1;
    std::int64_t best_idx = 0;
    bool have = false;
    for (const auto& [idx, cnt] : class_counts) {
      if (cnt > best_count) {
        best_count = cnt;
        best_idx = idx;
        have = true;
      }
    }
    rep.worst_ratio = have ? static_cast<double>(best_count) * scale : 0.0;
    rep.worst_residue = have ? decode_residue(best_idx, A.dim, q) : Point{};
    rep.passed = rep.worst_ratio <= bound;
    return rep;
  }

  // Subcube variant: localized counts keyed by (subcube, class).
  const Coord L = subcube_side;
  const std::int64_t cells_per_class = ipow(L / q, A.dim);
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> counts;
  for (const Point& p : A.elements) {
    std::int64_t sub = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Coord rel = p[i] - A.anchor[i] - 1;
      sub = sub * (A.side / L) + rel / L;
    }
    ++counts[{sub, residue_index(p, A.anchor, q)}];
  }
  const double denom = rep.global_density * static_cast<double>(cells_per_class);
  std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> worst_per_sub;
  std::int64_t best_sub = -1, best_class = -1, best_count = -1;
  for (const auto& [key, cnt] : counts) {
    auto it = worst_per_sub.find(key.first);
    if (it == worst_per_sub.end() || cnt > it->second.second)
      worst_per_sub[key.first] = {key.second, cnt};
    if (cnt > best_count) {
      best_count = cnt;
      best_sub = key.first;
      best_class = key.second;
    }
  }
  const std::int64_t n_subs = ipow(A.side / L, A.dim);
  for (std::int64_t sub = 0; sub < n_subs; ++sub) {
    SubcubeRow row;
    Point sp(static_cast<std::size_t>(A.dim));
    std::int64_t tmp = sub;
    for (int i = A.dim - 1; i >= 0; --i) {
      sp[static_cast<std::size_t>(i)] = tmp % (A.side / L);
      tmp /= (A.side / L);
    }
    row.subcube = sp;
    auto it = worst_per_sub.find(sub);
    if (it != worst_per_sub.end()) {
      row.worst_residue = decode_residue(it->second.first, A.dim, q);
      row.ratio = denom > 0.0 ? static_cast<double>(it->second.second) / denom : 0.0;
    } else {
      row.worst_residue = Point{};
      row.ratio = 0.0;
    }
    rep.subcube_table.push_back(std::move(row));
  }
  if (best_count >= 0) {
    rep.worst_ratio = denom > 0.0 ? static_cast<double>(best_count) / denom : 0.0;
    rep.worst_residue = decode_residue(best_class, A.dim, q);
    Point sp(static_cast<std::size_t>(A.dim));
    std::int64_t tmp = best_sub;
    for (int i = A.dim - 1; i >= 0; --i) {
      sp[static_cast<std::size_t>(i)] = tmp % (A.side / L);
      tmp /= (A.side / L);
    }
    rep.worst_subcube = sp;
  }
  rep.passed = rep.worst_ratio <= bound;
  return rep;
}

IncrementTrace density_increment(const PointSet& A_in, double eta, double C,
                                 std::int64_t max_steps) {
  PointSet A = A_in;
  A.validate();
  if (max_steps < 0) throw std::invalid_argument("density_increment: max_steps must be >= 0");
  IncrementTrace trace;
  trace.eta = eta;
  trace.c_qeta = C;
  const std::uint64_t q_u = q_eta_u64(eta, C);
  trace.q_eta_val = q_u;
  const auto q = static_cast<std::int64_t>(q_u);

  for (std::int64_t step = 0;; ++step) {
    if (A.side % q != 0 || static_cast<std::uint64_t>(A.side) < q_u) {
      trace.status = "box_exhausted";
      return trace;
    }
    const UniformityReport rep = uniformity_test(A, eta, C);
    IncrementStep st;
    st.side = A.side;
    st.count = A.size();
    st.density = rep.global_density;
    st.worst_ratio = rep.worst_ratio;
    st.passed = rep.passed;
    if (rep.passed) {
      trace.steps.push_back(std::move(st));
      trace.status = "passed";
      return trace;
    }
    if (step >= max_steps) {
      trace.steps.push_back(std::move(st));
      trace.status = "budget_exhausted";
      return trace;
    }
    // Pass to the densest residue class, rescaled to side N/q.
    st.chosen_residue = rep.worst_residue;
    trace.steps.push_back(st);
    PointSet B;
    B.dim = A.dim;
    B.side = A.side / q;
    B.anchor.assign(static_cast<std::size_t>(A.dim), 0);
    B.mode = A.mode;
    const Point& s = st.chosen_residue;
    for (const Point& p : A.elements) {
      Point x(static_cast<std::size_t>(A.dim));
      bool in_class = true;
      for (int i = 0; i < A.dim; ++i) {
        const Coord rel = p[static_cast<std::size_t>(i)] -
                          A.anchor[static_cast<std::size_t>(i)] - 1;  // 0-based
        if (rel % q != s[static_cast<std::size_t>(i)] - 1) {
          in_class = false;
          break;
        }
        x[static_cast<std::size_t>(i)] = rel / q + 1;
      }
      if (in_class) B.elements.push_back(std::move(x));
    }
    std::sort(B.elements.begin(), B.elements.end());
    A = std::move(B);
  }
}

namespace {

// --- generator spec parsing ------------------------------------------------

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

GeneratorSpec parse_spec_rec(const std::string& text);

// Splits "a;b" at the top level (ignoring separators inside parentheses).
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::map<std::string, std::string> parse_kv(const std::string& body,
                                            const std::string& ctx) {
  std::map<std::string, std::string> kv;
  if (strip(body).empty()) return kv;
  for (const std::string& part : split_top(body, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("generator spec: expected key=value in '" + ctx + "'");
    const std::string k = strip(part.substr(0, eq));
    const std::string v = strip(part.substr(eq + 1));
    if (k.empty() || v.empty())
      throw std::invalid_argument("generator spec: empty key or value in '" + ctx + "'");
    if (!kv.emplace(k, v).second)
      throw std::invalid_argument("generator spec: duplicate key '" + k + "'");
  }
  return kv;
}

double parse_double(const std::string& v, const std::string& key) {
  std::size_t pos = 0;
  double x;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("generator spec: bad numeric value for '" + key + "'");
  }
  if (pos != v.size())
    throw std::invalid_argument("generator spec: trailing characters in '" + key + "'");
  return x;
}

std::int64_t parse_int(const std::string& v, const std::string& key) {
  std::size_t pos = 0;
  long long x;
  try {
    x = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("generator spec: bad integer value for '" + key + "'");
  }
  if (pos != v.size())
    throw std::invalid_argument("generator spec: trailing characters in '" + key + "'");
  return static_cast<std::int64_t>(x);
}

GeneratorSpec parse_spec_rec(const std::string& raw) {
  const std::string text = strip(raw);
  if (text.empty()) throw std::invalid_argument("generator spec: empty spec");
  // Function forms: union(...) / complement(...).
  for (const char* fn : {"union", "complement"}) {
    const std::size_t n = std::string(fn).size();
    if (text.rfind(std::string(fn) + "(", 0) == 0) {
      if (text.back() != ')')
        throw std::invalid_argument(std::string("generator spec: missing ')' in ") + fn);
      const std::string inner = text.substr(n + 1, text.size() - n - 2);
      GeneratorSpec g;
      const auto parts = split_top(inner, ';');
      if (std::string(fn) == "union") {
        g.kind = GeneratorSpec::Kind::set_union;
        if (parts.size() < 2)
          throw std::invalid_argument("generator spec: union needs at least two parts");
      } else {
        g.kind = GeneratorSpec::Kind::set_complement;
        if (parts.size() != 1)
          throw std::invalid_argument("generator spec: complement takes exactly one part");
      }
      for (const auto& part : parts) g.children.push_back(parse_spec_rec(part));
      return g;
    }
  }
  const auto colon = text.find(':');
  const std::string head = strip(colon == std::string::npos ? text : text.substr(0, colon));
  const std::string body = colon == std::string::npos ? "" : text.substr(colon + 1);
  const auto kv = parse_kv(body, text);
  GeneratorSpec g;
  if (head == "bernoulli") {
    g.kind = GeneratorSpec::Kind::bernoulli;
    if (!kv.count("p")) throw std::invalid_argument("generator spec: bernoulli needs p=");
    g.p = parse_double(kv.at("p"), "p");
    if (!(g.p >= 0.0 && g.p <= 1.0))
      throw std::invalid_argument("generator spec: p must lie in [0,1]");
    g.seed = kv.count("seed")
                 ? static_cast<std::uint64_t>(parse_int(kv.at("seed"), "seed"))
                 : 0;
    for (const auto& [k, v] : kv)
      if (k != "p" && k != "seed")
        throw std::invalid_argument("generator spec: unknown key '" + k + "'");
  } else if (head == "congruence") {
    g.kind = GeneratorSpec::Kind::congruence;
    if (!kv.count("r")) throw std::invalid_argument("generator spec: congruence needs r=");
    g.r = parse_int(kv.at("r"), "r");
    if (g.r < 1) throw std::invalid_argument("generator spec: r must be >= 1");
    g.shift = kv.count("shift") ? parse_int(kv.at("shift"), "shift") : 0;
    for (const auto& [k, v] : kv)
      if (k != "r" && k != "shift")
        throw std::invalid_argument("generator spec: unknown key '" + k + "'");
  } else {
    throw std::invalid_argument("generator spec: unknown kind '" + head + "'");
  }
  return g;
}

void generate_rec(const GeneratorSpec& spec, int dim, Coord N, const Point& anchor,
                  std::vector<Point>& out);

void generate_bernoulli(const GeneratorSpec& spec, int dim, Coord N,
                        const Point& anchor, std::vector<Point>& out) {
  std::int64_t total = 1;
  for (int i = 0; i < dim; ++i) {
    if (total > (std::int64_t{1} << 28) / N)
      throw std::invalid_argument("generate_set: box too large for a dense scan");
    total *= N;
  }
  for (std::int64_t idx = 0; idx < total; ++idx) {
    if (rng_uniform01(spec.seed, 0, static_cast<std::uint64_t>(idx)) < spec.p) {
      Point p(static_cast<std::size_t>(dim));
      std::int64_t t = idx;
      for (int i = dim - 1; i >= 0; --i) {
        p[static_cast<std::size_t>(i)] = anchor[static_cast<std::size_t>(i)] + t % N + 1;
        t /= N;
      }
      out.push_back(std::move(p));
    }
  }
}

void generate_congruence(const GeneratorSpec& spec, int dim, Coord N,
                         const Point& anchor, std::vector<Point>& out) {
  // Per-axis admissible absolute coordinates: x with x ≡ shift (mod r).
  std::vector<std::vector<Coord>> axis(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    for (Coord v = anchor[static_cast<std::size_t>(i)] + 1;
         v <= anchor[static_cast<std::size_t>(i)] + N; ++v) {
      std::int64_t rem = (v - spec.shift) % spec.r;
      if (rem < 0) rem += spec.r;
      if (rem == 0) axis[static_cast<std::size_t>(i)].push_back(v);
    }
    if (axis[static_cast<std::size_t>(i)].empty()) return;
  }
  Point p(static_cast<std::size_t>(dim));
  std::vector<std::size_t> pos(static_cast<std::size_t>(dim), 0);
  for (;;) {
    for (int i = 0; i < dim; ++i)
      p[static_cast<std::size_t>(i)] =
          axis[static_cast<std::size_t>(i)][pos[static_cast<std::size_t>(i)]];
    out.push_back(p);
    int i = dim - 1;
    for (; i >= 0; --i) {
      if (++pos[static_cast<std::size_t>(i)] < axis[static_cast<std::size_t>(i)].size()) break;
      pos[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) break;
  }
}

void generate_rec(const GeneratorSpec& spec, int dim, Coord N, const Point& anchor,
                  std::vector<Point>& out) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::bernoulli:
      generate_bernoulli(spec, dim, N, anchor, out);
      return;
    case GeneratorSpec::Kind::congruence:
      generate_congruence(spec, dim, N, anchor, out);
      return;
    case GeneratorSpec::Kind::set_union: {
      for (const auto& child : spec.children) {
        std::vector<Point> part;
        generate_rec(child, dim, N, anchor, part);
        out.insert(out.end(), part.begin(), part.end());
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return;
    }
    case GeneratorSpec::Kind::set_complement: {
      std::vector<Point> inner;
      generate_rec(spec.children.front(), dim, N, anchor, inner);
      std::sort(inner.begin(), inner.end());
      std::int64_t total = 1;
      for (int i = 0; i < dim; ++i) {
        if (total > (std::int64_t{1} << 28) / N)
          throw std::invalid_argument("generate_set: box too large for a dense scan");
        total *= N;
      }
      std::vector<Point> all;
      all.reserve(static_cast<std::size_t>(total));
      Point p(static_cast<std::size_t>(dim));
      for (std::int64_t idx = 0; idx < total; ++idx) {
        std::int64_t t = idx;
        for (int i = dim - 1; i >= 0; --i) {
          p[static_cast<std::size_t>(i)] = anchor[static_cast<std::size_t>(i)] + t % N + 1;
          t /= N;
        }
        if (!std::binary_search(inner.begin(), inner.end(), p)) all.push_back(p);
      }
      out = std::move(all);
      return;
    }
  }
  throw std::logic_error("generate_rec: unhandled generator kind");
}

}  // namespace

GeneratorSpec parse_generator_spec(const std::string& text) {
  return parse_spec_rec(text);
}

PointSet generate_set(const GeneratorSpec& spec, int dim, Coord N,
                      BoundaryMode mode, const Point* anchor) {
  if (dim < 1) throw std::invalid_argument("generate_set: dim must be >= 1");
  if (N < 1) throw std::invalid_argument("generate_set: N must be >= 1");
  PointSet A;
  A.dim = dim;
  A.side = N;
  A.mode = mode;
  A.anchor = anchor != nullptr ? *anchor : Point(static_cast<std::size_t>(dim), 0);
  if (static_cast<int>(A.anchor.size()) != dim)
    throw std::invalid_argument("generate_set: anchor length must equal dim");
  generate_rec(spec, dim, N, A.anchor, A.elements);
  std::sort(A.elements.begin(), A.elements.end());
  A.elements.erase(std::unique(A.elements.begin(), A.elements.end()), A.elements.end());
  A.validate();
  return A;
}

}  // namespace latdist
