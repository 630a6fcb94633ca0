#include <doctest.h>

#include "oracles.hpp"
#include "tropenum/correspondence.hpp"
#include "tropenum/enumeration.hpp"
#include "tropenum/errors.hpp"

using namespace tropenum;

namespace {

std::vector<std::vector<long>> as_rows(const IntMatrix& m) {
  std::vector<std::vector<long>> rows(m.rows, std::vector<long>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) rows[i][j] = m.at(i, j).get_si();
  return rows;
}

ParamTropCurve marked_line() {
  ParamTropCurve c;
  auto o = c.add_vertex({0, 0});
  auto p = c.add_vertex({2, 0});
  auto q = c.add_vertex({0, 3});
  c.add_segment(o, p, 1);
  c.add_segment(o, q, 1);
  c.add_ray(p, {1, 0});
  c.add_ray(q, {0, 1});
  c.add_ray(o, {-1, -1});
  c.marks[1] = p;
  c.marks[2] = q;
  return c;
}

// two vertices joined by a weight-2 edge; marks on three of the four ends,
// and optionally the middle mark on the bounded edge instead of one end
ParamTropCurve marked_mult4(bool mark_on_bounded) {
  ParamTropCurve c;
  auto a = c.add_vertex({0, 0});
  auto b = c.add_vertex({1, 0});
  auto p1 = c.add_vertex({-1, 1});
  c.add_segment(p1, a, 1);
  c.add_ray(p1, {-1, 1});
  c.add_ray(b, {1, -1});
  c.marks[1] = p1;
  if (mark_on_bounded) {
    auto m = c.add_vertex({Rat(1, 2), 0});
    c.add_segment(a, m, 2);
    c.add_segment(m, b, 2);
    c.marks[2] = m;
    c.add_ray(a, {-1, -1});
  } else {
    c.add_segment(a, b, 2);
    auto p2 = c.add_vertex({-1, -1});
    c.add_segment(a, p2, 1);
    c.add_ray(p2, {-1, -1});
    c.marks[2] = p2;
  }
  auto p3 = c.add_vertex({2, 1});
  c.add_segment(b, p3, 1);
  c.add_ray(p3, {1, 1});
  c.marks[3] = p3;
  return c;
}

}  // namespace

TEST_CASE("line through two points") {
  ParamTropCurve c = marked_line();
  REQUIRE(check_balancing(c).empty());
  PhiSystem s = build_phi(c);
  CHECK(s.matrix.rows == 2);
  CHECK(s.matrix.cols == 2);
  CHECK(index_d(s) == 1);
  CHECK(log_count_w(s) == 1);
  CHECK(verify_correspondence(c));
}

TEST_CASE("weight two bounded edge") {
  ParamTropCurve c = marked_mult4(false);
  REQUIRE(check_balancing(c).empty());
  CHECK(mikhalkin_multiplicity(c) == 4);
  PhiSystem s = build_phi(c);
  CHECK(s.matrix.rows == 4);
  CHECK(s.matrix.cols == 4);
  CHECK(index_d(s) == abs(oracle::leibniz_det(as_rows(s.matrix))));
  CHECK(log_count_w(s) == 2);
  CHECK(index_d(s) == 2);
  CHECK(verify_correspondence(c));
}

TEST_CASE("a mark on a weight two edge contributes its weight") {
  ParamTropCurve c = marked_mult4(true);
  REQUIRE(check_balancing(c).empty());
  PhiSystem s = build_phi(c);
  CHECK(log_count_w(s) == 4);
  CHECK(index_d(s) == 1);
  CHECK(index_d(s) == abs(oracle::leibniz_det(as_rows(s.matrix))));
  CHECK(verify_correspondence(c));
}

TEST_CASE("multiplicity three vertex") {
  // vertex joining (1,0), (1,3) and (-2,-3), marks on the first two ends
  ParamTropCurve c;
  auto o = c.add_vertex({0, 0});
  auto p = c.add_vertex({1, 0});
  auto q = c.add_vertex({1, 3});
  c.add_segment(o, p, 1);
  c.add_segment(o, q, 1);
  c.add_ray(p, {1, 0});
  c.add_ray(q, {1, 3});
  c.add_ray(o, {-2, -3});
  c.marks[1] = p;
  c.marks[2] = q;
  CHECK(mikhalkin_multiplicity(c) == 3);
  PhiSystem s = build_phi(c);
  CHECK(index_d(s) * log_count_w(s) == 3);
  CHECK(index_d(s) == 3);
}

TEST_CASE("index does not depend on edge orientation") {
  ParamTropCurve c = marked_mult4(false);
  Int base = index_d(build_phi(c));
  PhiSystem s = build_phi(c);
  for (std::uint64_t mask = 0; mask < (1u << s.bounded.size()); ++mask) CHECK(index_d(build_phi(c, mask)) == base);
}

TEST_CASE("correspondence over enumerated solutions") {
  struct Case {
    Fan fan;
    std::string degree;
    std::uint64_t seeds;
  };
  for (const Case& cs : {Case{fan_p2(), "2", 4}, Case{fan_p2(), "3", 1}, Case{fan_dp6(), "anticanonical", 5},
                         Case{fan_p1xp1(), "2,1,2,1", 2}}) {
    Degree deg = parse_degree(cs.fan, cs.degree);
    for (std::uint64_t seed = 1; seed <= cs.seeds; ++seed) {
      CountReport r = count_report(cs.fan, deg, seed);
      for (const auto& sol : r.curves) {
        PhiSystem s = build_phi(sol.curve);
        auto order = cokernel_order(s.matrix);
        REQUIRE(order.has_value());  // injective with finite index
        CHECK(index_d(s) * log_count_w(s) == sol.mult);
        if (s.bounded.size() <= 6)
          for (std::uint64_t mask = 1; mask < (1u << s.bounded.size()); mask += 3)
            CHECK(index_d(build_phi(sol.curve, mask)) == *order);
      }
    }
  }
}

TEST_CASE("decomposition of a single point") {
  Fan p2 = fan_p2();
  Decomposition d = build_decomposition({}, p2, {{0, 0}});
  CHECK(d.report.ok());
  CHECK(d.decomp.vertices.size() == 1);
  CHECK(d.decomp.faces.size() == 3);
  auto [scaled, a] = rescale_lattice(d.decomp);
  CHECK(a == 1);
  Fan3D f = fan_over(scaled, p2);
  CHECK(slice_height_one(f) == cells_of(scaled));
  CHECK(height_zero_cones(f) == fan_cones(p2));
  CHECK(fan3d_cone_list(f).find("3: 0,0,1 ") != std::string::npos);
}

TEST_CASE("a line needs translates at its points") {
  Fan p2 = fan_p2();
  CountReport r = count_report(p2, parse_degree(p2, "1"), 2);
  std::vector<ParamTropCurve> curves{r.curves[0].curve};
  Decomposition bare = build_decomposition(curves, p2, r.points, TranslatePolicy::Never);
  CHECK_FALSE(bare.report.points_are_vertices);
  CHECK_FALSE(bare.report.ok());
  Decomposition full = build_decomposition(curves, p2, r.points, TranslatePolicy::Always);
  CHECK(full.report.ok());
  CHECK(full.translates_added);
  Decomposition lazy = build_decomposition(curves, p2, r.points, TranslatePolicy::IfNeeded);
  CHECK(lazy.report.ok());
  CHECK(lazy.translates_added);
}

TEST_CASE("degree six del Pezzo degeneration") {
  Fan dp6 = fan_dp6();
  Degree ac = parse_degree(dp6, "anticanonical");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CountReport r = count_report(dp6, ac, seed);
    std::vector<ParamTropCurve> curves;
    for (const auto& s : r.curves) curves.push_back(s.curve);
    Decomposition d = build_decomposition(curves, dp6, r.points);
    CHECK(d.report.ok());
    CHECK(check_decomposition(d.decomp, curves, dp6, r.points).ok());
    // Euler characteristic of the compactified plane
    long V = d.decomp.vertices.size(), E = d.decomp.edges.size(), F = d.decomp.faces.size();
    CHECK((V + 1) + F == E + 2);
    auto [scaled, a] = rescale_lattice(d.decomp);
    for (const auto& v : scaled.vertices) {
      CHECK(v.x.get_den() == 1);
      CHECK(v.y.get_den() == 1);
    }
    Fan3D f = fan_over(scaled, dp6);
    CHECK(slice_height_one(f) == cells_of(scaled));
    CHECK(height_zero_cones(f) == fan_cones(dp6));

    Decomposition lazy = build_decomposition(curves, dp6, r.points, TranslatePolicy::IfNeeded);
    CHECK(lazy.report.ok());
    // the union of all solutions already satisfies every property
    CHECK_FALSE(lazy.translates_added);
  }
}

TEST_CASE("decomposition checks catch violations") {
  Fan p2 = fan_p2();
  CountReport r = count_report(p2, parse_degree(p2, "2"), 1);
  std::vector<ParamTropCurve> curves{r.curves[0].curve};
  Decomposition d = build_decomposition(curves, p2, r.points);
  REQUIRE(d.report.ok());
  // a curve that is not in the skeleton
  CountReport other = count_report(p2, parse_degree(p2, "2"), 2);
  DecompReport bad = check_decomposition(d.decomp, {other.curves[0].curve}, p2, r.points);
  CHECK_FALSE(bad.curves_in_skeleton);
  // a point that is not a vertex
  DecompReport off = check_decomposition(d.decomp, curves, p2, {{Rat(1, 7), Rat(-100)}});
  CHECK_FALSE(off.points_are_vertices);
}

TEST_CASE("rescale") {
  PolyDecomp d;
  d.vertices = {{Rat(1, 2), Rat(1, 3)}, {0, 0}};
  auto [s, a] = rescale_lattice(d);
  CHECK(a == 6);
  CHECK(s.vertices[0] == RatVec2{3, 2});
}
