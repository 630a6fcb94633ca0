#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tropenum/fan.hpp"
#include "tropenum/lattice.hpp"
#include "tropenum/tropcurve.hpp"

namespace tropenum {

// Edge of the reduced graph: a maximal chain of curve edges through marked points.
struct ReducedEdge {
  std::size_t minus = 0;              // v_-: reduced vertex index
  std::optional<std::size_t> plus;    // v_+: nullopt for unbounded edges
  IntVec2 u;                          // primitive direction
  IntVec2 n;                          // primitive normal, lexicographically positive
  std::int64_t weight = 1;
  std::vector<int> marks;             // labels of marked points on the edge
};

struct PhiSystem {
  std::vector<std::size_t> vertices;  // curve vertex behind each reduced vertex
  std::vector<ReducedEdge> edges;
  std::vector<std::size_t> bounded;   // indices into edges, one row each
  std::vector<std::pair<int, std::size_t>> mark_rows;  // (label, edge index)
  IntMatrix matrix;                   // rows: bounded edges, then marks; 2 columns per vertex
};

// flip_mask bit i swaps v_+ and v_- on the i-th bounded reduced edge (default:
// v_- is the lexicographically smaller endpoint).
PhiSystem build_phi(const ParamTropCurve& c, std::uint64_t flip_mask = 0);
Int index_d(const PhiSystem& sys);
Int log_count_w(const PhiSystem& sys);
Int log_count_w(const ParamTropCurve& c);
bool verify_correspondence(const ParamTropCurve& c);

// ---- polyhedral decomposition ----

struct PolyDecomp {
  struct Edge {
    std::size_t a = 0;
    std::optional<std::size_t> b;  // nullopt: ray from a
    IntVec2 dir;                   // primitive, a -> b or outward
  };
  struct Face {
    std::vector<std::size_t> vertices;  // counterclockwise boundary vertices
    std::vector<IntVec2> recession;     // generators of the recession cone (0, 1 or 2)
  };
  std::vector<RatVec2> vertices;
  std::vector<Edge> edges;
  std::vector<Face> faces;
};

struct DecompReport {
  bool curves_in_skeleton = false;   // every curve image lies in the 1-skeleton
  bool points_are_vertices = false;  // every P_i is a vertex
  bool rational = false;             // vertices rational, edge directions integral
  bool cells_have_vertices = false;  // each cell has at least one vertex
  bool recession_in_fan = false;     // recession cones are cones of the fan
  std::vector<std::string> failures;
  bool ok() const {
    return curves_in_skeleton && points_are_vertices && rational && cells_have_vertices && recession_in_fan;
  }
};

enum class TranslatePolicy { Always, Never, IfNeeded };

struct Decomposition {
  PolyDecomp decomp;
  DecompReport report;
  bool translates_added = false;
};

Decomposition build_decomposition(const std::vector<ParamTropCurve>& curves, const Fan& fan,
                                  const std::vector<RatVec2>& points,
                                  TranslatePolicy policy = TranslatePolicy::Always);

DecompReport check_decomposition(const PolyDecomp& d, const std::vector<ParamTropCurve>& curves,
                                 const Fan& fan, const std::vector<RatVec2>& points);

// Scales all vertices by the least common denominator a.
std::pair<PolyDecomp, Int> rescale_lattice(const PolyDecomp& d);

struct Fan3D {
  using Gen = std::array<Int, 3>;
  struct Cone {
    std::vector<Gen> gens;  // sorted
    friend bool operator==(const Cone&, const Cone&) = default;
    friend bool operator<(const Cone& a, const Cone& b) { return a.gens < b.gens; }
  };
  std::vector<Cone> cones;  // sorted, no duplicates
};

Fan3D fan_over(const PolyDecomp& d, const Fan& fan);

// Height-1 slice: the cells as (vertex set, recession generators).
struct SlicedCell {
  std::vector<RatVec2> vertices;
  std::vector<IntVec2> recession;
  friend bool operator==(const SlicedCell&, const SlicedCell&) = default;
};
std::vector<SlicedCell> slice_height_one(const Fan3D& f);
std::vector<SlicedCell> cells_of(const PolyDecomp& d);
// Cones living in height 0, as sorted generator lists.
std::vector<std::vector<IntVec2>> height_zero_cones(const Fan3D& f);
std::vector<std::vector<IntVec2>> fan_cones(const Fan& fan);

std::string fan3d_cone_list(const Fan3D& f);

}  // namespace tropenum
