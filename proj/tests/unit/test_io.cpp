#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tropenum/errors.hpp"
#include "tropenum/io.hpp"

using namespace tropenum;
using oracle::frac;

namespace {

template <class Load, class Save>
void round_trip(const json& j, Load load, Save save) {
  json again = save(load(j));
  CHECK((dump(again) == dump(j)));
}

CountReport conics(std::uint64_t seed, unsigned jobs = 1) {
  Fan fan = fan_p2();
  return count_report(fan, parse_degree(fan, "2"), seed, jobs);
}

}  // namespace

TEST_CASE("rationals and points") {
  CHECK(to_json(frac(-6, 4)) == "-3/2");
  CHECK(to_json(Rat(7)) == "7");
  CHECK(rat_from_json("10/4") == frac(5, 2));
  CHECK(rat_from_json(3) == 3);
  CHECK_THROWS_AS(rat_from_json("1/0"), ParseError);
  CHECK_THROWS_AS(rat_from_json("abc"), ParseError);
  CHECK_THROWS_AS(rat_from_json(1.5), ParseError);
  RatVec2 p{frac(1, 3), frac(-2, 7)};
  CHECK((point_from_json(to_json(p)) == p));
  CHECK(mask_to_json(0b101) == json::array({1, 3}));
  CHECK(mask_from_json(json::array({2, 1})) == 0b11u);
  CHECK_THROWS_AS(mask_from_json(json::array({0})), ParseError);
}

TEST_CASE("fans and degrees") {
  for (const Fan& fan : {fan_p2(), fan_p1xp1(), fan_dp6()}) {
    Fan back = fan_from_json(to_json(fan));
    CHECK((back.rays == fan.rays));
    Degree d = parse_degree(fan, "anticanonical");
    CHECK((degree_from_json(fan, to_json(d)).d == d.d));
  }
  json bad = to_json(fan_p2());
  bad["rays"] = json::array({json::array({2, 0}), json::array({0, 1}), json::array({-1, -1})});
  CHECK((fan_from_json(bad).rays == fan_p2().rays));  // rays are made primitive
  bad["rays"] = json::array({json::array({1, 0}), json::array({0, 1})});
  CHECK_THROWS_AS(fan_from_json(bad), ParseError);
  bad["rays"] = "three";
  CHECK_THROWS_AS(fan_from_json(bad), ParseError);
  CHECK_THROWS_AS(load_fan("no-such-fan"), ParseError);
}

TEST_CASE("count report round trip in both conventions") {
  CountReport r = conics(2);
  for (Convention c : {Convention::Max, Convention::Min}) {
    json j = to_json(r, c);
    CHECK(j["schema"] == "tropenum.count");
    CHECK(j["version"] == kSchemaVersion);
    round_trip(j, count_report_from_json, [c](const CountReport& x) { return to_json(x, c); });
    CountReport back = count_report_from_json(j);
    CHECK((back.points == r.points));
    CHECK(back.n_trop == r.n_trop);
  }
  json mn = to_json(r, Convention::Min);
  CHECK((point_from_json(mn["points"][0]) == RatVec2{-r.points[0].x, -r.points[0].y}));
}

TEST_CASE("curves round trip and are validated") {
  CountReport r = conics(3);
  for (const auto& s : r.curves) round_trip(to_json(s.curve), curve_from_json, [](const auto& c) { return to_json(c); });
  json j = to_json(r.curves.front().curve);
  j["edges"][0]["weight"] = 5;
  CHECK_THROWS_AS(curve_from_json(j), ParseError);
  j = to_json(r.curves.front().curve);
  j["edges"][0]["dir"] = json::array({2, 2});
  CHECK_THROWS_AS(curve_from_json(j), ParseError);
}

TEST_CASE("diagram, potential and consistency") {
  Fan fan = fan_p2();
  auto tp = fixture::two_point();
  ScatteringDiagram d = build_diagram(fan, tp.points);
  json jd = to_json(d, fan);
  round_trip(jd, [](const json& j) { return diagram_from_json(j); }, [&](const ScatteringDiagram& x) { return to_json(x, fan); });
  Fan f2;
  ScatteringDiagram d2 = diagram_from_json(jd, &f2);
  CHECK((f2.rays == fan.rays));
  REQUIRE(d2.walls.size() == d.walls.size());
  for (std::size_t i = 0; i < d.walls.size(); ++i) CHECK((d2.walls[i].f == d.walls[i].f));

  json broken = jd;
  broken["walls"][0]["dir"] = json::array({7, 1});
  CHECK_THROWS_AS(diagram_from_json(broken), ParseError);

  Potential w = potential(d, fan, tp.q);
  json jw = to_json(w, tp.q, fan);
  Potential w2 = potential_from_json(jw);
  CHECK((w2.value == w.value));
  CHECK(w2.lines.size() == w.lines.size());
  CHECK((dump(to_json(w2, tp.q, fan)) == dump(jw)));

  json jc = to_json(check_consistency(fan, d));
  CHECK(jc["schema"] == "tropenum.consistency");
  CHECK(jc["consistent"] == true);
}

TEST_CASE("ring elements") {
  RingElement x = RingElement::monomial({1, 0, 2}, 0b11, frac(-2, 3)) + RingElement::constant(3, 1);
  x.set_y0(1);
  CHECK((ring_from_json(3, to_json(x)) == x));
  Monomial m{{0, 1, 1}, 0b10};
  CHECK((monomial_from_json(to_json(m)) == m));
}

TEST_CASE("decomposition and 3d fan") {
  Fan fan = fan_dp6();
  CountReport r = count_report(fan, parse_degree(fan, "anticanonical"), 1);
  std::vector<ParamTropCurve> curves;
  for (const auto& s : r.curves) curves.push_back(s.curve);
  Decomposition dec = build_decomposition(curves, fan, r.points, TranslatePolicy::IfNeeded);
  REQUIRE(dec.report.ok());
  round_trip(to_json(dec.decomp), decomp_from_json, [](const PolyDecomp& p) { return to_json(p); });
  auto [scaled, a] = rescale_lattice(dec.decomp);
  Fan3D f3 = fan_over(scaled, fan);
  round_trip(to_json(f3), fan3d_from_json, [](const Fan3D& f) { return to_json(f); });
}

TEST_CASE("schema checks and malformed files") {
  json j = to_json(conics(1));
  json other = j;
  other["schema"] = "tropenum.diagram";
  CHECK_THROWS_AS(count_report_from_json(other), ParseError);
  other = j;
  other["version"] = kSchemaVersion + 1;
  CHECK_THROWS_AS(count_report_from_json(other), ParseError);
  other = j;
  other.erase("points");
  CHECK_THROWS_AS(count_report_from_json(other), ParseError);

  std::string path = "tropenum_io_test_bad.json";
  {
    std::ofstream f(path);
    f << "{ \"schema\": ";
  }
  CHECK_THROWS_AS(read_json_file(path), ParseError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_json_file("does/not/exist.json"), ParseError);
}

TEST_CASE("output does not depend on the number of jobs") {
  CHECK((dump(to_json(conics(4, 1))) == dump(to_json(conics(4, 3)))));
  Fan fan = fan_p2();
  auto pts = sample_generic_points(3, 2);
  CHECK((dump(to_json(build_diagram(fan, pts, 1), fan)) == dump(to_json(build_diagram(fan, pts, 4), fan))));
  RatVec2 q{frac(7, 3), frac(11, 5)};
  CHECK((dump(disks_to_json(fan, pts, q, enumerate_maslov2_disks(fan, pts, q, 1))) ==
         dump(disks_to_json(fan, pts, q, enumerate_maslov2_disks(fan, pts, q, 4)))));
}
