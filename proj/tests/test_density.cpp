// Densities, residue-class uniformity, the density-increment loop, set
// generators, and point-set text I/O: anchors on full/structured boxes,
// the independent class-recount oracle, divisibility-chain errors, the
// subcube variant, increment traces (pass, rescale-to-full, budget and
// box exhaustion, step bound), generator grammar and determinism, and
// strict parsing with line numbers.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "latdist/density.hpp"
#include "latdist/point_set.hpp"
#include "latdist/types.hpp"
#include "oracle_helpers.hpp"

using latdist::BoundaryMode;
using latdist::GeneratorSpec;
using latdist::IncrementTrace;
using latdist::Point;
using latdist::PointSet;
using latdist::UniformityReport;
using latdist::UniformityVariant;

namespace {

PointSet gen(const std::string& spec, int dim, latdist::Coord N,
             const Point* anchor = nullptr) {
  return latdist::generate_set(latdist::parse_generator_spec(spec), dim, N,
                               BoundaryMode::periodic, anchor);
}

}  // namespace

TEST_CASE("box density anchors") {
  CHECK(latdist::box_density(gen("bernoulli:p=1,seed=0", 2, 4)) == 1.0);
  CHECK(latdist::box_density(gen("bernoulli:p=0,seed=0", 2, 4)) == 0.0);
  const PointSet even = gen("congruence:r=2,shift=0", 5, 4);
  CHECK(latdist::box_density(even) == 0.03125);
}

TEST_CASE("uniformity: full box passes with unit ratios") {
  const PointSet A = gen("bernoulli:p=1,seed=0", 2, 12);
  const UniformityReport rep = latdist::uniformity_test(A, 0.5, 1.0);
  CHECK(rep.q_eta_val == 12u);
  CHECK(rep.worst_ratio == 1.0);
  CHECK(rep.passed);
  CHECK(rep.worst_residue == Point{1, 1});
}

TEST_CASE("uniformity: the even sublattice concentrates its classes") {
  const PointSet A = gen("congruence:r=2,shift=0", 5, 12);
  const UniformityReport rep = latdist::uniformity_test(A, 0.5, 1.0);
  CHECK(rep.worst_ratio == 32.0);
  CHECK_FALSE(rep.passed);
  CHECK(rep.worst_residue == Point{2, 2, 2, 2, 2});
}

TEST_CASE("uniformity: worst ratio matches an independent recount") {
  const PointSet A = gen("bernoulli:p=0.5,seed=1234", 2, 60);
  const UniformityReport rep = latdist::uniformity_test(A, 0.5, 1.0);
  const auto counts = oracle::class_recount(A, 12);
  std::int64_t worst = 0;
  for (const auto& [cls, n] : counts) worst = std::max(worst, n);
  const double cells_per_class = std::pow(60.0 / 12.0, 2);
  const double expect =
      (static_cast<double>(worst) / cells_per_class) / latdist::box_density(A);
  CHECK(std::abs(rep.worst_ratio - expect) <= 1e-12);
  // The reported class realizes the reported ratio.
  const auto it = counts.find(std::vector<std::int64_t>(rep.worst_residue.begin(),
                                                        rep.worst_residue.end()));
  REQUIRE(it != counts.end());
  CHECK(it->second == worst);
}

TEST_CASE("uniformity at modulus one always passes") {
  const PointSet A = gen("bernoulli:p=0.3,seed=5", 2, 7);
  const UniformityReport rep = latdist::uniformity_test(A, 0.99, 1.0);
  CHECK(rep.q_eta_val == 1u);
  CHECK(rep.passed);
}

TEST_CASE("uniformity rejects broken divisibility chains by name") {
  // Modulus 12 against side 10 trips the size check; against side 16 it
  // trips the divisibility check.
  const PointSet tiny = gen("bernoulli:p=0.5,seed=2", 2, 10);
  CHECK_THROWS_WITH(latdist::uniformity_test(tiny, 0.5, 1.0),
                    Catch::Matchers::ContainsSubstring("exceeds the box side"));
  const PointSet A = gen("bernoulli:p=0.5,seed=2", 2, 16);
  CHECK_THROWS_WITH(latdist::uniformity_test(A, 0.5, 1.0),
                    Catch::Matchers::ContainsSubstring("does not divide N"));
  const PointSet B = gen("bernoulli:p=0.5,seed=2", 2, 24);
  CHECK_THROWS_WITH(
      latdist::uniformity_test(B, 0.5, 1.0, UniformityVariant::subcube, 8),
      Catch::Matchers::ContainsSubstring("does not divide L"));
  CHECK_THROWS_WITH(
      latdist::uniformity_test(B, 0.5, 1.0, UniformityVariant::subcube, 36),
      Catch::Matchers::ContainsSubstring("L does not divide N"));
}

TEST_CASE("subcube uniformity localizes the class counts") {
  // Modulus 2 (eta = 0.7 puts the lcm threshold at 2), subcubes of side 6.
  const PointSet A = gen("congruence:r=2,shift=0", 2, 12);
  const UniformityReport rep =
      latdist::uniformity_test(A, 0.7, 1.0, UniformityVariant::subcube, 6);
  CHECK(rep.q_eta_val == 2u);
  CHECK(rep.subcube_side == 6);
  REQUIRE(rep.subcube_table.size() == 4);  // (12/6)^2 subcubes
  for (const auto& row : rep.subcube_table) {
    // Each subcube holds 9 even points in class (2,2): 9 / (0.25 * 9) = 4.
    CHECK(std::abs(row.ratio - 4.0) <= 1e-12);
    CHECK(row.worst_residue == Point{2, 2});
  }
  CHECK(rep.worst_subcube == Point{0, 0});
  CHECK(std::abs(rep.worst_ratio - 4.0) <= 1e-12);
  CHECK_FALSE(rep.passed);
}

TEST_CASE("class counts partition the set") {
  const PointSet A = gen("bernoulli:p=0.4,seed=77", 3, 24);
  const auto counts = oracle::class_recount(A, 12);
  std::int64_t total = 0;
  for (const auto& [cls, n] : counts) total += n;
  CHECK(total == A.size());
}

TEST_CASE("increment: uniform input stops immediately") {
  const PointSet A = gen("bernoulli:p=1,seed=0", 2, 12);
  const IncrementTrace tr = latdist::density_increment(A, 0.5, 1.0, 10);
  CHECK(tr.status == "passed");
  REQUIRE(tr.steps.size() == 1);
  CHECK(tr.steps[0].passed);
  CHECK(tr.steps[0].chosen_residue.empty());
}

TEST_CASE("increment: congruence inputs reach density one in one step") {
  // Modulus 2 at eta = 0.7: the even sublattice rescales onto the full box.
  const PointSet A2 = gen("congruence:r=2,shift=0", 2, 8);
  const IncrementTrace t2 = latdist::density_increment(A2, 0.7, 1.0, 10);
  CHECK(t2.status == "passed");
  REQUIRE(t2.steps.size() == 2);
  CHECK(t2.steps[0].chosen_residue == Point{2, 2});
  CHECK(t2.steps[1].density == 1.0);
  CHECK(t2.steps[1].side == 4);

  // Modulus 12 at eta = 0.5: multiples of three rescale onto the full box.
  const PointSet A3 = gen("congruence:r=3,shift=0", 2, 144);
  const IncrementTrace t3 = latdist::density_increment(A3, 0.5, 1.0, 10);
  CHECK(t3.status == "passed");
  REQUIRE(t3.steps.size() == 2);
  CHECK(t3.steps[0].chosen_residue == Point{3, 3});
  CHECK(t3.steps[1].density == 1.0);
  CHECK(t3.steps[1].side == 12);
}

TEST_CASE("increment: budget exhaustion reports a partial trace") {
  const PointSet A = gen("congruence:r=2,shift=0", 2, 8);
  const IncrementTrace tr = latdist::density_increment(A, 0.7, 1.0, 0);
  CHECK(tr.status == "budget_exhausted");
  REQUIRE(tr.steps.size() == 1);
  CHECK_FALSE(tr.steps[0].passed);
  CHECK(tr.steps[0].chosen_residue.empty());
}

TEST_CASE("increment: indivisible boxes exhaust") {
  const PointSet A = gen("bernoulli:p=0.5,seed=3", 2, 8);
  const IncrementTrace tr = latdist::density_increment(A, 0.5, 1.0, 10);
  CHECK(tr.status == "box_exhausted");  // 12 does not divide 8
  CHECK(tr.steps.empty());
}

TEST_CASE("increment: densities grow geometrically within the step bound") {
  const PointSet A = gen("bernoulli:p=0.3,seed=99", 2, 16);
  const IncrementTrace tr = latdist::density_increment(A, 0.7, 1.0, 100);
  REQUIRE(!tr.steps.empty());
  const double delta0 = tr.steps[0].density;
  const double bound = std::log(1.0 / delta0) / std::log(1.0 + 0.49);
  CHECK(static_cast<double>(tr.steps.size() - 1) <= bound + 1e-9);
  for (std::size_t i = 1; i < tr.steps.size(); ++i) {
    CHECK(tr.steps[i].density > tr.steps[i - 1].density * 1.49 - 1e-12);
    CHECK(tr.steps[i].density <= 1.0);
  }
}

TEST_CASE("generator grammar round-trips its kinds") {
  const GeneratorSpec b = latdist::parse_generator_spec("bernoulli:p=0.3,seed=7");
  CHECK(b.kind == GeneratorSpec::Kind::bernoulli);
  CHECK(b.p == 0.3);
  CHECK(b.seed == 7u);

  const GeneratorSpec c = latdist::parse_generator_spec("congruence:r=2,shift=1");
  CHECK(c.kind == GeneratorSpec::Kind::congruence);
  CHECK(c.r == 2);
  CHECK(c.shift == 1);

  const GeneratorSpec u = latdist::parse_generator_spec(
      "union(congruence:r=2,shift=0; complement(bernoulli:p=1,seed=0))");
  CHECK(u.kind == GeneratorSpec::Kind::set_union);
  REQUIRE(u.children.size() == 2);
  CHECK(u.children[1].kind == GeneratorSpec::Kind::set_complement);
}

TEST_CASE("generator grammar rejects malformed specs") {
  CHECK_THROWS_WITH(latdist::parse_generator_spec("gaussian:p=1"),
                    Catch::Matchers::ContainsSubstring("unknown kind"));
  CHECK_THROWS_WITH(latdist::parse_generator_spec("bernoulli:p=0.5,extra=1"),
                    Catch::Matchers::ContainsSubstring("unknown key"));
  CHECK_THROWS_WITH(latdist::parse_generator_spec("bernoulli:seed=1"),
                    Catch::Matchers::ContainsSubstring("needs p="));
  CHECK_THROWS_WITH(latdist::parse_generator_spec("union(bernoulli:p=1,seed=0)"),
                    Catch::Matchers::ContainsSubstring("at least two"));
  CHECK_THROWS_WITH(latdist::parse_generator_spec("complement(a;b)"),
                    Catch::Matchers::ContainsSubstring("exactly one"));
  CHECK_THROWS_AS(latdist::parse_generator_spec("union(bernoulli:p=1,seed=0"),
                  std::invalid_argument);
}

TEST_CASE("generators: anchors, determinism, algebra") {
  const PointSet full = gen("bernoulli:p=1,seed=3", 2, 4);
  CHECK(full.size() == 16);

  const PointSet a = gen("bernoulli:p=0.5,seed=11", 2, 8);
  const PointSet b = gen("bernoulli:p=0.5,seed=11", 2, 8);
  CHECK(a.elements == b.elements);
  const PointSet c = gen("bernoulli:p=0.5,seed=12", 2, 8);
  CHECK(a.elements != c.elements);

  const PointSet evens = gen("congruence:r=2,shift=0", 1, 4);
  CHECK(evens.elements == std::vector<Point>{{2}, {4}});
  const PointSet odds = gen("congruence:r=2,shift=1", 1, 4);
  CHECK(odds.elements == std::vector<Point>{{1}, {3}});

  const PointSet comp = gen("complement(congruence:r=2,shift=0)", 1, 4);
  CHECK(comp.elements == odds.elements);
  const PointSet uni =
      gen("union(congruence:r=2,shift=0; complement(congruence:r=2,shift=0))", 1, 4);
  CHECK(uni.size() == 4);
}

TEST_CASE("generators respect the box anchor") {
  const Point anchor{5};
  const PointSet A = gen("congruence:r=2,shift=0", 1, 4, &anchor);
  // Box is {6,7,8,9}; the congruence is absolute, so evens are kept.
  CHECK(A.elements == std::vector<Point>{{6}, {8}});
  CHECK(A.anchor == anchor);
}

TEST_CASE("point-set text format round-trips") {
  const Point anchor{3, -2};
  const PointSet A = gen("bernoulli:p=0.6,seed=21", 2, 5, &anchor);
  std::ostringstream os;
  latdist::save_point_set(A, os);
  std::istringstream is(os.str());
  const PointSet B = latdist::load_point_set(is);
  CHECK(B.dim == A.dim);
  CHECK(B.side == A.side);
  CHECK(B.anchor == A.anchor);
  CHECK(B.mode == A.mode);
  CHECK(B.elements == A.elements);
}

TEST_CASE("point-set parser reports offending line numbers") {
  const std::string dup = "2 4 0 0 periodic\n1 1\n1 1\n";
  std::istringstream is1(dup);
  try {
    latdist::load_point_set(is1);
    FAIL("expected a parse error");
  } catch (const latdist::parse_error& e) {
    CHECK(e.line() == 3);
  }
  const std::string outside = "2 4 0 0 periodic\n1 5\n";
  std::istringstream is2(outside);
  try {
    latdist::load_point_set(is2);
    FAIL("expected a parse error");
  } catch (const latdist::parse_error& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream is3("2 nonsense\n");
  CHECK_THROWS_AS(latdist::load_point_set(is3), latdist::parse_error);
}

TEST_CASE("membership index honors both boundary modes") {
  PointSet A = gen("congruence:r=2,shift=0", 2, 4);
  const latdist::PointSetIndex periodic(A);
  CHECK(periodic.contains(Point{2, 4}));
  CHECK(periodic.contains(Point{6, 8}));   // wraps onto (2,4)
  CHECK(periodic.contains(Point{-2, 4}));  // wraps onto (2,4)
  CHECK(!periodic.contains(Point{1, 4}));

  A.mode = BoundaryMode::truncate;
  const latdist::PointSetIndex trunc(A);
  CHECK(trunc.contains(Point{2, 4}));
  CHECK(!trunc.contains(Point{6, 8}));
  CHECK(!trunc.contains(Point{-2, 4}));
}
