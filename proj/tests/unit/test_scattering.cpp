#include <doctest.h>

#include <bit>
#include <random>

#include "oracles.hpp"
#include "tropenum/enumeration.hpp"
#include "tropenum/errors.hpp"
#include "tropenum/scattering.hpp"

using namespace tropenum;
using oracle::frac;

namespace {

RingElement x(std::size_t ray, std::uint32_t u = 0, const Rat& c = 1) {
  Exponent e(3, 0);
  e[ray] = 1;
  return RingElement::monomial(e, u, c);
}

RingElement one() { return RingElement::constant(3, 1); }

RingElement random_element(std::mt19937_64& rng, int terms) {
  std::uniform_int_distribution<int> ex(-2, 2), um(0, 7), cn(-4, 4), cd(1, 3), nt(0, terms);
  RingElement r(3);
  for (int i = nt(rng); i > 0; --i) {
    Exponent e{ex(rng), ex(rng), ex(rng)};
    r.add_term({e, static_cast<std::uint32_t>(um(rng))}, frac(cn(rng), cd(rng)));
  }
  return r;
}

// 1 + (random element of the u ideal)
RingElement random_unipotent(std::mt19937_64& rng) {
  RingElement n = random_element(rng, 4);
  RingElement r = one();
  for (const auto& [m, c] : n.terms())
    if (m.u != 0) r.add_term(m, c);
  return r;
}

// 1 + sum c u_I x0^j: a function on the wall's own direction
RingElement random_wall_function(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pw(1, 3), um(1, 7), cn(-4, 4);
  RingElement r = one();
  for (int i = 0; i < 3; ++i) r.add_term({{pw(rng), 0, 0}, static_cast<std::uint32_t>(um(rng))}, cn(rng));
  return r;
}

Wall wall_at(const RatVec2& base, std::size_t ray, const RingElement& f) {
  Fan fan = fan_p2();
  Wall w;
  w.base = base;
  w.m0 = Exponent(3, 0);
  w.m0[ray] = 1;
  w.dir = -fan.rays[ray];
  w.f = f;
  return w;
}

std::vector<RatVec2> points_for(std::size_t k, std::uint64_t seed) { return sample_generic_points(k, seed); }

}  // namespace

TEST_CASE("ring: u_i squares to zero") {
  for (std::uint32_t u = 1; u < 8; ++u) {
    CHECK((x(0, u) * x(1, u)).is_zero());
    CHECK_FALSE((x(0, u) * x(1, 8 | 16)).is_zero());
  }
  RingElement a = x(0, 1) * x(1, 2);
  CHECK((a == x(0, 3) * x(1, 0)));
}

TEST_CASE("ring: commutative ring laws on random elements") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 60; ++it) {
    RingElement a = random_element(rng, 5), b = random_element(rng, 5), c = random_element(rng, 5);
    CHECK((a * b == b * a));
    CHECK(((a * b) * c == a * (b * c)));
    CHECK((a * (b + c) == a * b + a * c));
    CHECK((a + b - b == a));
    CHECK(((a * one()) == a));
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("ring: mod_u and the u ideal") {
  RingElement f = one() + x(0, 1) + x(2, 0, 3);
  CHECK((f.mod_u() == one() + x(2, 0, 3)));
  CHECK_FALSE(f.in_u_ideal());
  CHECK((f - f.mod_u()).in_u_ideal());
}

TEST_CASE("ring: powers of unipotent elements") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 40; ++it) {
    RingElement f = random_unipotent(rng);
    std::uniform_int_distribution<int> ed(-3, 3);
    int a = ed(rng), b = ed(rng);
    CHECK((f.pow(a) * f.pow(b) == f.pow(a + b)));
    CHECK((f.pow(-1) * f == one()));
    CHECK((f.pow(0) == one()));
    CHECK((f.pow(2) == f * f));
  }
  // (1 + u1 x0)^-1 = 1 - u1 x0
  CHECK(((one() + x(0, 1)).pow(-1) == one() - x(0, 1)));
}

TEST_CASE("automorphisms: generator examples") {
  Fan fan = fan_p2();
  Exponent m{1, 0, 0};  // r(m) = (1,0)
  IntVec2 n{0, 1};      // orthogonal to r(m)
  auto th = apply_generator(fan, 3, 1, m, n);
  CHECK((th.images[0] == x(0)));
  CHECK((th.images[1] == x(1) * (one() + x(0, 1, 3))));
  CHECK((th.images[2] == x(2) * (one() - x(0, 1, 3))));

  auto back = apply_generator(fan, -3, 1, m, n);
  CHECK(back.after(th).is_identity());
  CHECK(th.after(back).is_identity());

  std::mt19937_64 rng(3);
  for (int it = 0; it < 30; ++it) {
    RingElement a = random_element(rng, 4), b = random_element(rng, 4);
    CHECK((th.apply(a * b) == th.apply(a) * th.apply(b)));
    CHECK((th.apply(a + b) == th.apply(a) + th.apply(b)));
  }
}

TEST_CASE("wall crossing: explicit formula and inverse") {
  Fan fan = fan_p2();
  Wall w = wall_at({0, 0}, 0, one() + x(0, 1));
  auto up = wall_crossing(fan, w, IntVec2{0, 1});
  auto down = wall_crossing(fan, w, IntVec2{0, -1});
  // crossing upwards: n0 = (0,-1)
  CHECK((up.images[0] == x(0)));
  CHECK((up.images[1] == x(1) * (one() - x(0, 1))));
  CHECK((up.images[2] == x(2) * (one() + x(0, 1))));
  CHECK(down.after(up).is_identity());
  CHECK((wall_crossing(fan, w, 1).after(wall_crossing(fan, w, -1)).is_identity()));

  RingElement y = x(1) * x(2, 2);
  CHECK((cross(fan, w, IntVec2{0, 1}, y) == up.apply(y)));

  Wall trivial = wall_at({0, 0}, 1, one());
  CHECK(wall_crossing(fan, trivial, IntVec2{1, 0}).is_identity());
}

TEST_CASE("wall crossing: walls on a common line commute") {
  Fan fan = fan_p2();
  std::mt19937_64 rng(17);
  for (int it = 0; it < 20; ++it) {
    Wall a = wall_at({0, 0}, 0, random_wall_function(rng));
    Wall b = wall_at({0, 0}, 0, random_wall_function(rng));
    b.base = {5, 0};
    auto ta = wall_crossing(fan, a, IntVec2{1, 1}), tb = wall_crossing(fan, b, IntVec2{1, 1});
    CHECK((ta.after(tb).images == tb.after(ta).images));
  }
}

TEST_CASE("paths: crossings, composition and non-transversality") {
  Fan fan = fan_p2();
  ScatteringDiagram d;
  d.nrays = 3;
  d.walls.push_back(wall_at({0, 0}, 0, one() + x(0, 1)));  // along the negative x axis
  d.marked_points.push_back({0, 0});

  CHECK(path_automorphism(fan, d, {{1, 1}, {2, 3}}).is_identity());
  auto cr = path_crossings(d, {{-3, frac(-1, 2)}, {-2, frac(1, 2)}});
  REQUIRE(cr.size() == 1);
  CHECK((cr[0].point == RatVec2{frac(-5, 2), 0}));
  CHECK(path_automorphism(fan, d, {{-3, -1}, {-3, 1}, {-3, -1}}).is_identity());

  CHECK_THROWS_AS(path_automorphism(fan, d, {{-1, -1}, {1, 1}}), NonTransversePath);
  CHECK_THROWS_AS(path_automorphism(fan, d, {{-1, 0}, {-2, 0}}), NonTransversePath);
  CHECK_THROWS_AS(path_automorphism(fan, d, {{-1, -1}, {-1, 0}}), NonTransversePath);

  std::vector<RatVec2> ab{{-3, -1}, {-1, frac(1, 7)}}, bc{{-1, frac(1, 7)}, {-4, frac(-2, 3)}};
  std::vector<RatVec2> abc{ab[0], ab[1], bc[1]};
  auto whole = path_automorphism(fan, d, abc);
  auto parts = path_automorphism(fan, d, bc).after(path_automorphism(fan, d, ab));
  CHECK((whole.images == parts.images));
  RingElement y = x(1, 0, 2) + x(2, 2);
  CHECK((transport_element(fan, d, abc, y) == whole.apply(y)));
}

TEST_CASE("diagram: no points, one point") {
  Fan fan = fan_p2();
  CHECK(build_diagram(fan, {}).walls.empty());
  auto pts = points_for(1, 1);
  ScatteringDiagram d = build_diagram(fan, pts);
  REQUIRE(d.walls.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    bool found = false;
    for (const Wall& w : d.walls)
      if (w.f == one() + x(j, 1)) {
        found = true;
        CHECK((w.base == pts[0]));
        CHECK((w.dir == -fan.rays[j]));
        CHECK_FALSE(w.scattered);
      }
    CHECK(found);
  }
  CHECK(check_consistency(fan, d).consistent());
}

TEST_CASE("diagram: wall invariants on random configurations") {
  for (const Fan& fan : {fan_p2(), fan_dp6()}) {
    for (std::size_t k = 1; k <= 3; ++k) {
      for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        ScatteringDiagram d = build_diagram(fan, points_for(k, seed));
        for (const Wall& w : d.walls) {
          CHECK((w.f.mod_u() == RingElement::constant(fan.size(), 1)));
          CHECK((w.dir == -r_of(fan, w.m0)));
          for (const auto& [m, c] : w.f.terms()) {
            if (m.u == 0) continue;
            CHECK(m.u < (1u << k));
            // Maslov index zero: as many ends as marked points
            std::int64_t ends = 0;
            for (auto e : m.e) ends += e;
            CHECK(ends == std::popcount(m.u));
            // exponent is a multiple of m0
            CHECK(r_of(fan, m.e).x * w.dir.y == r_of(fan, m.e).y * w.dir.x);
          }
        }
      }
    }
  }
}

TEST_CASE("consistency: P2 with up to three points") {
  Fan fan = fan_p2();
  std::size_t loops = 0;
  for (std::size_t k = 1; k <= 3; ++k)
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      ScatteringDiagram d = build_diagram(fan, points_for(k, seed));
      ConsistencyReport rep = check_consistency(fan, d);
      CHECK_MESSAGE(rep.consistent(), "k=" << k << " seed=" << seed);
      loops += rep.loops.size();
    }
  CHECK(loops > 0);
}

TEST_CASE("consistency: removing a scattered wall is detected") {
  Fan fan = fan_p2();
  int tried = 0;
  for (std::uint64_t seed = 1; seed <= 10 && tried < 3; ++seed) {
    ScatteringDiagram d = build_diagram(fan, points_for(2, seed));
    for (std::size_t i = 0; i < d.walls.size(); ++i) {
      if (!d.walls[i].scattered) continue;
      ScatteringDiagram broken = d;
      broken.walls.erase(broken.walls.begin() + static_cast<std::ptrdiff_t>(i));
      CHECK_FALSE(check_consistency(fan, broken).consistent());
      ++tried;
    }
  }
  CHECK(tried > 0);
}

TEST_CASE("consistency: marked points carry monodromy") {
  Fan fan = fan_p2();
  ScatteringDiagram d = build_diagram(fan, points_for(1, 2));
  ConsistencyReport rep = check_consistency(fan, d, true);
  bool saw_marked = false;
  for (const auto& l : rep.loops)
    if (l.marked) {
      saw_marked = true;
      CHECK_FALSE(l.identity);
    }
  CHECK(saw_marked);
  CHECK(rep.consistent());
}

TEST_CASE("singular points are sorted and distinct") {
  ScatteringDiagram d = build_diagram(fan_p2(), points_for(3, 4));
  auto s = singular_points(d);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK((s[i - 1] < s[i]));
  for (const auto& p : d.marked_points) CHECK(std::find(s.begin(), s.end(), p) != s.end());
  for (const auto& p : s) {
    auto loop = small_loop(d, p);
    CHECK(loop.size() >= 4);
    CHECK((loop.front() == loop.back()));
  }
}
