#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tropenum/fan.hpp"
#include "tropenum/lattice.hpp"

namespace tropenum {

enum class Convention { Min, Max };

struct CurveEdge {
  std::size_t u = 0;
  std::optional<std::size_t> v;  // nullopt: unbounded edge leaving u
  IntVec2 dir;                   // primitive; from u to v (u < v), or toward infinity
  std::int64_t weight = 1;

  bool bounded() const { return v.has_value(); }
};

// Parametrized tropical curve. Marked points are labels on vertices: a marked
// vertex is bivalent in the embedded graph and carries the collapsed marked edge.
struct ParamTropCurve {
  std::vector<RatVec2> pos;
  std::vector<CurveEdge> edges;
  std::map<int, std::size_t> marks;  // label -> vertex

  std::size_t add_vertex(const RatVec2& p);
  // Bounded edge a--b; the direction is read off the positions.
  std::size_t add_segment(std::size_t a, std::size_t b, std::int64_t weight);
  std::size_t add_ray(std::size_t a, const IntVec2& weighted_dir);

  // Weighted outgoing vectors at vertex v, in edge order.
  std::vector<IntVec2> flags(std::size_t v) const;
  std::vector<std::size_t> incident(std::size_t v) const;
  bool is_marked(std::size_t v) const;
};

// Disk: V_out is univalent and exempt from balancing.
struct TropicalDisk {
  ParamTropCurve curve;
  std::size_t out_vertex = 0;
};

// Tree: a disk whose E_out is extended to a distinguished unbounded edge.
struct TropicalTree {
  ParamTropCurve curve;
  std::size_t out_edge = 0;
};

struct MinPlusTerm {
  Rat coeff;
  IntVec2 exponent;
};

struct MinPlusPoly {
  std::vector<MinPlusTerm> terms;
};

// Structural checks: edge endpoints consistent with directions, positive lengths,
// primitive directions, valid mark vertices. Throws DomainError.
void validate(const ParamTropCurve& c);

// Vertices violating balancing (V_out excluded when given).
std::vector<std::size_t> check_balancing(const ParamTropCurve& c,
                                         std::optional<std::size_t> exempt = std::nullopt);

// Per-ray count of unbounded unmarked edges (weighted); skip_edge excludes a tree's E_out.
Degree degree(const ParamTropCurve& c, const Fan& fan,
              std::optional<std::size_t> skip_edge = std::nullopt);
Degree degree(const TropicalDisk& d, const Fan& fan);
Degree degree(const TropicalTree& t, const Fan& fan);

std::int64_t genus(const ParamTropCurve& c);

// Product over vertices of w1 w2 |m1 ^ m2|; marked vertices contribute 1.
// Checks the three vertex formulas agree. exempt: V_out of a disk.
Int mikhalkin_multiplicity(const ParamTropCurve& c,
                           std::optional<std::size_t> exempt = std::nullopt);
Int mikhalkin_multiplicity(const TropicalDisk& d);
Int mikhalkin_multiplicity(const TropicalTree& t);

std::int64_t welschinger_multiplicity(const ParamTropCurve& c);
Int vertex_multiplicity(const ParamTropCurve& c, std::size_t v);

std::int64_t maslov_index(const TropicalDisk& d, const Fan& fan);

// Unparametrized weighted planar graph.
struct PlanarEdge {
  enum class Kind { Segment, Ray, Line };
  Kind kind = Kind::Segment;
  RatVec2 a;  // segment start, ray base, or a point on the line
  RatVec2 b;  // segment end (unused otherwise)
  IntVec2 dir;  // primitive; a->b for segments, outward for rays
  std::int64_t weight = 1;
};

struct PlanarGraph {
  std::vector<RatVec2> vertices;
  std::vector<PlanarEdge> edges;
};

PlanarGraph corner_locus(const MinPlusPoly& f, Convention conv = Convention::Min);
std::vector<RatVec2> check_balancing(const PlanarGraph& g);

}  // namespace tropenum
