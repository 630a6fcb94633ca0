#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "tropenum/enumeration.hpp"
#include "tropenum/errors.hpp"

using namespace tropenum;

namespace {

void check_solution(const CurveSolution& s, const Fan& fan, const Degree& deg, const std::vector<RatVec2>& pts) {
  const ParamTropCurve& c = s.curve;
  CHECK_NOTHROW(validate(c));
  CHECK(check_balancing(c).empty());
  CHECK(genus(c) == 0);
  CHECK(degree(c, fan) == deg);
  CHECK(s.mult == mikhalkin_multiplicity(c));
  CHECK(s.welschinger == welschinger_multiplicity(c));
  std::size_t unbounded = 0;
  for (const auto& e : c.edges)
    if (!e.v) {
      ++unbounded;
      CHECK(e.weight == 1);
    }
  CHECK(unbounded == static_cast<std::size_t>(degree_total(deg)));
  REQUIRE(c.marks.size() == pts.size());
  for (const auto& [label, v] : c.marks) {
    CHECK(c.pos[v] == pts[label - 1]);
    CHECK(c.incident(v).size() == 2);
  }
  for (std::size_t v = 0; v < c.pos.size(); ++v)
    if (!c.is_marked(v)) CHECK(c.incident(v).size() == 3);
}

void check_report(const CountReport& r) {
  Int n = 0, w = 0;
  std::set<std::string> types;
  for (const auto& s : r.curves) {
    check_solution(s, r.fan, r.degree, r.points);
    n += s.mult;
    w += s.welschinger;
    types.insert(s.type);
  }
  CHECK(types.size() == r.curves.size());
  CHECK(n == r.n_trop);
  CHECK(w == r.w_trop);
}

std::vector<oracle::Pt> polygon(const Fan& fan, const Degree& deg) {
  std::vector<oracle::Pt> out;
  for (const auto& v : newton_polygon(fan, deg)) out.push_back({v.x, v.y});
  return out;
}

}  // namespace

TEST_CASE("sampling") {
  CHECK(sample_generic_points(0, 1).empty());
  auto two = sample_generic_points(2, 1);
  REQUIRE(two.size() == 2);
  CHECK(two[0].x != two[1].x);
  CHECK(two[0].y != two[1].y);
  CHECK(sample_generic_points(8, 42) == sample_generic_points(8, 42));
  CHECK(sample_generic_points(8, 42) != sample_generic_points(8, 43));
  CHECK(sample_generic_points(8, 42, {}, 0) != sample_generic_points(8, 42, {}, 1));
  BBox small{0, 1, 0, 1};
  for (const auto& p : sample_generic_points(6, 3, small)) {
    CHECK(p.x >= 0);
    CHECK(p.x <= 1);
    CHECK(p.y >= 0);
    CHECK(p.y <= 1);
  }
}

TEST_CASE("the line through two points") {
  Fan p2 = fan_p2();
  Degree d1 = parse_degree(p2, "1");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CountReport r = count_report(p2, d1, seed);
    check_report(r);
    REQUIRE(r.curves.size() == 1);
    CHECK(r.n_trop == 1);
    CHECK(r.curves[0].mult == 1);
  }
}

TEST_CASE("a line through two points on a vertical line is not rigid") {
  Fan p2 = fan_p2();
  std::vector<RatVec2> pts{{0, 0}, {0, 1}};
  CHECK_THROWS_AS(enumerate_rational_curves(p2, parse_degree(p2, "1"), pts), GenericityError);
}

TEST_CASE("wrong number of points") {
  Fan p2 = fan_p2();
  CHECK_THROWS_AS(enumerate_rational_curves(p2, parse_degree(p2, "1"), {{0, 0}}), PreconditionError);
}

TEST_CASE("conics and lines agree with both oracles") {
  Fan p2 = fan_p2();
  CHECK(oracle::kontsevich(2) == 1);
  for (int d = 1; d <= 2; ++d) {
    Degree deg = parse_degree(p2, std::to_string(d));
    mpz_class lp = oracle::lattice_path_count(polygon(p2, deg));
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      CountReport r = count_report(p2, deg, seed);
      check_report(r);
      CHECK(r.n_trop == oracle::kontsevich(d));
      CHECK(r.n_trop == lp);
      CHECK(r.w_trop == 1);
    }
  }
}

TEST_CASE("other small degrees agree with lattice paths") {
  Fan p1 = fan_p1xp1();
  for (const char* spec : {"1,1,1,1", "2,1,2,1", "1,2,1,2"}) {
    Degree deg = parse_degree(p1, spec);
    mpz_class lp = oracle::lattice_path_count(polygon(p1, deg));
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      CountReport r = count_report(p1, deg, seed);
      check_report(r);
      CHECK(r.n_trop == lp);
    }
  }
  Fan dp6 = fan_dp6();
  Degree line = make_degree(dp6, {1, 0, 1, 0, 1, 0});
  CountReport r = count_report(dp6, line, 1);
  check_report(r);
  CHECK(r.n_trop == oracle::lattice_path_count(polygon(dp6, line)));
}

TEST_CASE("plane cubics") {
  Fan p2 = fan_p2();
  Degree d3 = parse_degree(p2, "3");
  mpz_class lp = oracle::lattice_path_count(polygon(p2, d3));
  CHECK(lp == 12);
  CHECK(oracle::kontsevich(3) == 12);
  CountReport r = count_report(p2, d3, 7);
  check_report(r);
  CHECK(r.n_trop == 12);
  CHECK(r.w_trop == 8);
}

TEST_CASE("degree six del Pezzo") {
  Fan dp6 = fan_dp6();
  Degree ac = parse_degree(dp6, "anticanonical");
  CHECK(oracle::lattice_path_count(polygon(dp6, ac)) == 12);
  std::set<std::vector<Int>> seen;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    CountReport r = count_report(dp6, ac, seed);
    check_report(r);
    CHECK(r.n_trop == 12);
    CHECK(r.w_trop == 8);
    for (const auto& s : r.curves) CHECK((s.mult == 1 || s.mult == 3 || s.mult == 4));
    seen.insert(r.multiplicities());
  }
  std::vector<Int> a(8, 1), b(9, 1);
  a.push_back(4);
  b.push_back(3);
  for (const auto& m : seen) CHECK((m == a || m == b));
}

TEST_CASE("parallel enumeration is deterministic") {
  Fan dp6 = fan_dp6();
  Degree ac = parse_degree(dp6, "anticanonical");
  CountReport a = count_report(dp6, ac, 3, 1), b = count_report(dp6, ac, 3, 4);
  REQUIRE(a.curves.size() == b.curves.size());
  for (std::size_t i = 0; i < a.curves.size(); ++i) {
    CHECK(a.curves[i].type == b.curves[i].type);
    CHECK(a.curves[i].curve.pos == b.curves[i].curve.pos);
  }
}

TEST_CASE("maslov index zero trees") {
  Fan p2 = fan_p2();
  CHECK(enumerate_maslov0_trees(p2, {}).empty());
  auto one = enumerate_maslov0_trees(p2, sample_generic_points(1, 1));
  REQUIRE(one.size() == 3);
  for (const auto& t : one) {
    CHECK(t.mask == 1u);
    CHECK(degree_total(degree(t.tree, p2)) == 1);
    std::size_t rho = std::find(t.ends.begin(), t.ends.end(), 1) - t.ends.begin();
    CHECK(t.tree.curve.edges[t.tree.out_edge].dir == -p2.rays[rho]);
    CHECK(t.mult == 1);
  }
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto pts = sample_generic_points(3, seed);
    auto trees = enumerate_maslov0_trees(p2, pts);
    bool glued = false;
    for (const auto& t : trees) {
      CHECK(check_balancing(t.tree.curve).empty());
      CHECK(degree_total(degree(t.tree, p2)) == std::popcount(t.mask));
      CHECK(t.mult == mikhalkin_multiplicity(t.tree));
      for (const auto& [label, v] : t.tree.curve.marks) CHECK(t.tree.curve.pos[v] == pts[label - 1]);
      glued = glued || std::popcount(t.mask) >= 2;
    }
    CHECK(glued);
  }
}

TEST_CASE("maslov index two disks") {
  Fan p2 = fan_p2();
  RatVec2 q{Rat(7, 3), Rat(11, 5)};
  auto none = enumerate_maslov2_disks(p2, {}, q);
  REQUIRE(none.size() == 3);
  for (const auto& d : none) CHECK(d.mask == 0u);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto pts = sample_generic_points(3, seed);
    for (const auto& d : enumerate_maslov2_disks(p2, pts, q)) {
      CHECK(maslov_index(d.disk, p2) == 2);
      CHECK(d.disk.curve.pos[d.disk.out_vertex] == q);
      CHECK(check_balancing(d.disk.curve, d.disk.out_vertex).empty());
      CHECK_FALSE(check_balancing(d.disk.curve).empty());
      CHECK(d.mult == mikhalkin_multiplicity(d.disk));
    }
  }
  auto pts = sample_generic_points(2, 1);
  CHECK_THROWS(enumerate_maslov2_disks(p2, pts, pts[0]));
}
