#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tropenum/enumeration.hpp"
#include "tropenum/fan.hpp"
#include "tropenum/lattice.hpp"

namespace tropenum {

using Exponent = std::vector<std::int64_t>;  // element of T_Sigma, one entry per ray

struct Monomial {
  Exponent e;
  std::uint32_t u = 0;  // square-free u multi-index, bit i is u_{i+1}

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.u != b.u) return a.u < b.u;
    return a.e < b.e;
  }
};

// Element of C[T_Sigma] (x) R_k with u_i^2 = 0, plus a formal y0 coefficient.
class RingElement {
 public:
  explicit RingElement(std::size_t nrays = 0) : n_(nrays) {}

  static RingElement constant(std::size_t nrays, const Rat& c);
  static RingElement monomial(const Exponent& e, std::uint32_t u = 0, const Rat& c = 1);
  static RingElement generator(std::size_t nrays, std::size_t ray);

  std::size_t nrays() const { return n_; }
  const std::map<Monomial, Rat>& terms() const { return terms_; }
  const Rat& y0() const { return y0_; }
  void set_y0(const Rat& c) { y0_ = c; }
  void add_term(const Monomial& m, const Rat& c);

  bool is_zero() const { return terms_.empty() && sgn(y0_) == 0; }
  // Drops every term carrying a u.
  RingElement mod_u() const;
  // True when the element lies in the ideal (u_1, ..., u_k) (y0 ignored).
  bool in_u_ideal() const;

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator-() const;
  RingElement operator*(const RingElement& o) const;
  RingElement operator*(const Rat& c) const;
  RingElement& operator+=(const RingElement& o);
  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.n_ == b.n_ && a.y0_ == b.y0_ && a.terms_ == b.terms_;
  }

  // 1 + N with N nilpotent: integer powers, negative ones via the finite geometric series.
  RingElement pow(std::int64_t e) const;

  std::string str() const;

 private:
  std::size_t n_;
  std::map<Monomial, Rat> terms_;
  Rat y0_ = 0;
};

IntVec2 r_of(const Fan& fan, const Exponent& m);

// Automorphism of C[T_Sigma] (x) R_k fixing u_i and y0, stored by generator images.
struct RingAutomorphism {
  std::vector<RingElement> images;  // images[rho] = theta(z^{e_rho})

  static RingAutomorphism identity(std::size_t nrays);
  bool is_identity() const;
  RingElement apply(const RingElement& x) const;
  // (this o other)(x) = this(other(x))
  RingAutomorphism after(const RingAutomorphism& other) const;
};

// exp(c u_I z^m (x) n): z^{m'} -> z^{m'} (1 + c u_I <n, r(m')> z^m).
RingAutomorphism apply_generator(const Fan& fan, const Rat& c, std::uint32_t I, const Exponent& m,
                                 const IntVec2& n);

struct Wall {
  enum class Carrier { Ray, Line };
  RatVec2 base;
  Carrier carrier = Carrier::Ray;
  Exponent m0;   // support = base - R_{>=0} r(m0)
  IntVec2 dir;   // -r(m0): direction the wall extends from its base
  RingElement f;
  std::string provenance;  // encoding of the generating tree
  bool scattered = false;  // produced at a collision (not an initial wall)
};

struct ScatteringDiagram {
  std::vector<Wall> walls;
  std::vector<RatVec2> marked_points;
  std::size_t nrays = 0;
};

// theta(z^m) = z^m f^{<n0, r(m)>}, n0 primitive with <n0, r(m0)> = 0 and <n0, crossing_dir> < 0.
RingAutomorphism wall_crossing(const Fan& fan, const Wall& w, const IntVec2& crossing_dir);
// crossing_sign +1 uses the lexicographically positive normal as n0, -1 its negative.
RingAutomorphism wall_crossing(const Fan& fan, const Wall& w, int crossing_sign);
// Applies the same automorphism directly to an element.
RingElement cross(const Fan& fan, const Wall& w, const IntVec2& crossing_dir, const RingElement& x);

struct Crossing {
  std::size_t wall = 0;
  std::size_t segment = 0;
  Rat t;          // parameter on the segment
  RatVec2 point;
};

// Ordered transverse crossings of a polyline; throws NonTransversePath.
std::vector<Crossing> path_crossings(const ScatteringDiagram& d, const std::vector<RatVec2>& path);
RingAutomorphism path_automorphism(const Fan& fan, const ScatteringDiagram& d, const std::vector<RatVec2>& path);
// theta_gamma applied directly to x (same result as path_automorphism(...).apply(x)).
RingElement transport_element(const Fan& fan, const ScatteringDiagram& d, const std::vector<RatVec2>& path,
                              const RingElement& x);

ScatteringDiagram build_diagram(const Fan& fan, const std::vector<RatVec2>& points, unsigned jobs = 1);
ScatteringDiagram diagram_from_trees(const Fan& fan, const std::vector<RatVec2>& points,
                                     const std::vector<TreeRecord>& trees);

bool on_support(const Wall& w, const RatVec2& p);
// Sing: wall bases and transverse pairwise intersections, sorted, without duplicates.
std::vector<RatVec2> singular_points(const ScatteringDiagram& d);

struct LoopResult {
  RatVec2 point;
  bool marked = false;       // point is one of the P_i (not required to be trivial)
  bool identity = false;
  std::vector<RatVec2> loop;
  RingAutomorphism automorphism;
};

struct ConsistencyReport {
  std::vector<LoopResult> loops;
  bool consistent() const;  // identity at every non-marked singular point
};

// A small counterclockwise loop around p meeting only walls through p.
std::vector<RatVec2> small_loop(const ScatteringDiagram& d, const RatVec2& p);
ConsistencyReport check_consistency(const Fan& fan, const ScatteringDiagram& d, bool include_marked = false);

std::string monomial_string(const Monomial& m);

}  // namespace tropenum
