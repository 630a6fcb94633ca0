#pragma once

// Configurations and samplers shared by the unit and acceptance tests.

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tropenum/broken.hpp"
#include "tropenum/enumeration.hpp"

namespace fixture {

using namespace tropenum;

// Two points on P^2 (sampler seed 3). Q sees the five monomials
// x2, u2 x1 x2, x1, x0, u1 x0 x2; Q2 lies across the scattered wall and the
// initial walls of P1 and sees six, one of them carrying u1 u2.
struct TwoPoint {
  std::vector<RatVec2> points;
  RatVec2 q, q2;
};

inline TwoPoint two_point() {
  return {sample_generic_points(2, 3), {oracle::frac(8, 7), oracle::frac(-53, 11)},
          {oracle::frac(-6, 7), oracle::frac(-64, 11)}};
}

inline std::vector<std::string> monomial_strings(const std::vector<MonoTerm>& terms) {
  std::vector<std::string> out;
  for (const auto& t : terms) out.push_back(monomial_string(t.mono));
  std::sort(out.begin(), out.end());
  return out;
}

struct AdjacentPair {
  std::size_t wall;
  RatVec2 a, b;  // the segment a-b crosses exactly this wall (and co-supported ones)
};

// Endpoints a small step either side of a random point on each wall. Pairs
// where the step meets another wall or a broken line would be non-generic are
// skipped.
inline std::vector<AdjacentPair> adjacent_pairs(const ScatteringDiagram& d, const Fan& fan, std::mt19937_64& rng,
                                                std::size_t want) {
  std::vector<AdjacentPair> out;
  std::uniform_int_distribution<long> num(1, 400);
  for (int round = 0; round < 40 && out.size() < want; ++round) {
    for (std::size_t i = 0; i < d.walls.size() && out.size() < want; ++i) {
      const Wall& w = d.walls[i];
      Rat t = oracle::frac(num(rng), 97);
      RatVec2 p = w.base + t * RatVec2(w.dir);
      RatVec2 n(IntVec2{-w.dir.y, w.dir.x});
      Rat delta = oracle::frac(1, 1009);
      AdjacentPair pair{i, p - delta * n, p + delta * n};
      try {
        auto cr = path_crossings(d, {pair.a, pair.b});
        bool only = !cr.empty();
        for (const auto& c : cr)
          only = only && c.point == p && wedge(RatVec2(d.walls[c.wall].dir), RatVec2(w.dir)) == 0;
        if (!only) continue;
        enumerate_broken_lines(d, fan, pair.a);
        enumerate_broken_lines(d, fan, pair.b);
      } catch (const GenericityError&) {
        continue;
      } catch (const NonTransversePath&) {
        continue;
      }
      out.push_back(pair);
    }
  }
  return out;
}

}  // namespace fixture
