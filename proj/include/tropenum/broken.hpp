#pragma once

#include <optional>
#include <vector>

#include "tropenum/scattering.hpp"

namespace tropenum {

struct BrokenLine {
  struct Segment {
    std::optional<RatVec2> start;  // nullopt: comes in from infinity
    RatVec2 end;
    Monomial mono;
    Rat coeff;
  };
  int ray = -1;                    // initial monomial z^{e_ray}
  std::vector<Segment> segments;   // ordered from infinity to the endpoint
  std::vector<std::size_t> bends;  // walls bent at, in order

  const Monomial& final_monomial() const { return segments.back().mono; }
  const Rat& final_coeff() const { return segments.back().coeff; }
};

// All broken lines ending at q, found by tracing backwards from q.
std::vector<BrokenLine> enumerate_broken_lines(const ScatteringDiagram& d, const Fan& fan, const RatVec2& q);

struct Potential {
  RingElement value;  // includes the y0 term
  std::vector<BrokenLine> lines;

  // kappa = product of all ray generators (x0 x1 x2 on P^2); y2 = u_1 + ... + u_k.
  RingElement kappa() const;
  RingElement y2(std::size_t k) const;
};

Potential potential(const ScatteringDiagram& d, const Fan& fan, const RatVec2& q);

struct MonoTerm {
  Monomial mono;
  Rat coeff;
  friend bool operator==(const MonoTerm&, const MonoTerm&) = default;
  friend bool operator<(const MonoTerm& a, const MonoTerm& b) {
    if (!(a.mono == b.mono)) return a.mono < b.mono;
    return a.coeff < b.coeff;
  }
};

std::vector<MonoTerm> broken_line_monomials(const std::vector<BrokenLine>& lines);
std::vector<MonoTerm> disk_monomials(const std::vector<DiskRecord>& disks);

struct DiskCorrespondence {
  std::vector<MonoTerm> from_lines;  // sorted
  std::vector<MonoTerm> from_disks;  // sorted
  bool equal() const { return from_lines == from_disks; }
};

DiskCorrespondence compare_disks_and_lines(const Fan& fan, const std::vector<RatVec2>& points, const RatVec2& q,
                                           unsigned jobs = 1);
bool verify_disk_correspondence(const Fan& fan, const std::vector<RatVec2>& points, const RatVec2& q);

// theta_gamma(W) along a transverse path; y0 is fixed.
Potential transport(const ScatteringDiagram& d, const Fan& fan, const Potential& w, const std::vector<RatVec2>& path);

}  // namespace tropenum
