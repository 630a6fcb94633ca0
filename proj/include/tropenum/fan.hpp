#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropenum/lattice.hpp"

namespace tropenum {

struct Fan {
  std::vector<IntVec2> rays;  // primitive, counterclockwise from (1,0)
  std::vector<std::pair<std::size_t, std::size_t>> cones2d;  // (i, i+1 mod n)
  bool smooth = false;
  std::string name;  // builtin name, empty for user fans

  std::size_t size() const { return rays.size(); }
  // index of the ray spanned by v (any positive multiple), if any
  std::optional<std::size_t> ray_index(const IntVec2& v) const;

  struct Location {
    bool on_ray = false;
    std::size_t index = 0;  // ray index when on_ray, otherwise cone index
  };
  // The unique cell of the fan whose relative interior contains v != 0.
  Location locate(const RatVec2& v) const;
};

// Sorts rays counterclockwise from (1,0), normalizes them to primitive vectors
// and checks completeness. Cones are the consecutive pairs.
Fan make_fan(const std::vector<IntVec2>& rays);
// Same, additionally checking that the given cones are exactly the consecutive pairs
// (cones refer to indices into the input ray list).
Fan make_fan(const std::vector<IntVec2>& rays,
             const std::vector<std::pair<std::size_t, std::size_t>>& cones);

Fan fan_p2();
Fan fan_p1xp1();
Fan fan_dp6();
Fan builtin_fan(const std::string& name);

// Strict angular order on nonzero vectors, starting at the direction (1,0).
bool angle_less(const IntVec2& a, const IntVec2& b);

struct Degree {
  std::vector<std::int64_t> d;  // indexed by ray order

  friend bool operator==(const Degree&, const Degree&) = default;
};

// Validates nonnegativity and sum_rho d_rho * rho = 0.
Degree make_degree(const Fan& fan, std::vector<std::int64_t> d);
std::int64_t degree_total(const Degree& deg);
IntVec2 degree_image(const Fan& fan, const std::vector<std::int64_t>& d);

// "3" on p2 means 3*(rho_1+rho_2+rho_3); "anticanonical" is one per ray;
// otherwise a comma separated list of per-ray multiplicities.
Degree parse_degree(const Fan& fan, const std::string& spec);

// Boundary vertices in counterclockwise order, lexicographically least vertex at the origin.
std::vector<IntVec2> newton_polygon(const Fan& fan, const Degree& deg);

}  // namespace tropenum
