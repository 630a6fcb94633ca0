#include "tropenum/tropcurve.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tropenum {

std::size_t ParamTropCurve::add_vertex(const RatVec2& p) {
  pos.push_back(p);
  return pos.size() - 1;
}

std::size_t ParamTropCurve::add_segment(std::size_t a, std::size_t b, std::int64_t weight) {
  if (a == b) throw DomainError("segment with equal endpoints");
  if (a > b) std::swap(a, b);
  CurveEdge e;
  e.u = a;
  e.v = b;
  e.dir = primitive_direction(pos[b] - pos[a]);
  e.weight = weight;
  edges.push_back(e);
  return edges.size() - 1;
}

std::size_t ParamTropCurve::add_ray(std::size_t a, const IntVec2& weighted_dir) {
  Primitive p = primitive(weighted_dir);
  CurveEdge e;
  e.u = a;
  e.dir = p.p;
  e.weight = p.k;
  edges.push_back(e);
  return edges.size() - 1;
}

std::vector<std::size_t> ParamTropCurve::incident(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].u == v || edges[i].v == v) out.push_back(i);
  return out;
}

std::vector<IntVec2> ParamTropCurve::flags(std::size_t v) const {
  std::vector<IntVec2> out;
  for (const CurveEdge& e : edges) {
    if (e.u == v) out.push_back(e.weight * e.dir);
    else if (e.v == v) out.push_back(-(e.weight * e.dir));
  }
  return out;
}

bool ParamTropCurve::is_marked(std::size_t v) const {
  for (const auto& [label, vert] : marks)
    if (vert == v) return true;
  return false;
}

void validate(const ParamTropCurve& c) {
  const std::size_t n = c.pos.size();
  for (const CurveEdge& e : c.edges) {
    if (e.u >= n || (e.v && *e.v >= n)) throw DomainError("edge endpoint out of range");
    if (e.dir.is_zero() || primitive(e.dir).k != 1) throw DomainError("edge direction not primitive");
    if (e.weight < 1) throw DomainError("edge weight must be positive");
    if (!e.v) continue;
    if (e.u >= *e.v) throw DomainError("bounded edge must be stored from its lower-indexed endpoint");
    RatVec2 d = c.pos[*e.v] - c.pos[e.u];
    if (sgn(d.x) == 0 && sgn(d.y) == 0) throw DomainError("degenerate edge of zero length");
    RatVec2 dir(e.dir);
    if (sgn(wedge(dir, d)) != 0 || sgn(dot(dir, d)) <= 0)
      throw DomainError("bounded edge endpoints disagree with its direction");
  }
  std::set<std::size_t> seen;
  for (const auto& [label, v] : c.marks) {
    if (v >= n) throw DomainError("mark on a missing vertex");
    if (!seen.insert(v).second) throw DomainError("two marks on one vertex");
  }
}

std::vector<std::size_t> check_balancing(const ParamTropCurve& c, std::optional<std::size_t> exempt) {
  std::vector<std::size_t> bad;
  for (std::size_t v = 0; v < c.pos.size(); ++v) {
    if (exempt && *exempt == v) continue;
    IntVec2 s;
    for (const IntVec2& f : c.flags(v)) s += f;
    if (!s.is_zero()) bad.push_back(v);
  }
  return bad;
}

Degree degree(const ParamTropCurve& c, const Fan& fan, std::optional<std::size_t> skip_edge) {
  std::vector<std::int64_t> d(fan.size(), 0);
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const CurveEdge& e = c.edges[i];
    if (e.bounded() || (skip_edge && *skip_edge == i)) continue;
    auto r = fan.ray_index(e.dir);
    if (!r) throw DomainError("unbounded edge direction is not a ray of the fan: not in X_Sigma");
    d[*r] += e.weight;
  }
  return Degree{d};
}

Degree degree(const TropicalDisk& d, const Fan& fan) { return degree(d.curve, fan); }

Degree degree(const TropicalTree& t, const Fan& fan) { return degree(t.curve, fan, t.out_edge); }

std::int64_t genus(const ParamTropCurve& c) {
  const std::size_t n = c.pos.size();
  if (n == 0) throw DomainError("empty graph");
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::int64_t bounded = 0;
  std::size_t comps = n;
  for (const CurveEdge& e : c.edges) {
    if (!e.v) continue;
    ++bounded;
    std::size_t a = find(e.u), b = find(*e.v);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  if (comps != 1) throw DomainError("disconnected graph");
  return bounded - static_cast<std::int64_t>(n) + 1;
}

Int vertex_multiplicity(const ParamTropCurve& c, std::size_t v) {
  std::vector<IntVec2> fl = c.flags(v);
  if (c.is_marked(v)) {
    if (fl.size() != 2 || !(fl[0] + fl[1]).is_zero())
      throw PreconditionError("marked point must lie in the interior of an edge");
    return 1;
  }
  if (fl.size() != 3) throw PreconditionError("multiplicity requires a trivalent curve");
  std::int64_t a = std::abs(wedge(fl[0], fl[1]));
  std::int64_t b = std::abs(wedge(fl[1], fl[2]));
  std::int64_t d = std::abs(wedge(fl[2], fl[0]));
  if (a != b || b != d) throw InvariantError("vertex multiplicity formulas disagree (vertex not balanced)");
  return Int(static_cast<long>(a));
}

namespace {

void check_simple(const ParamTropCurve& c) {
  std::vector<RatVec2> p = c.pos;
  std::sort(p.begin(), p.end());
  if (std::adjacent_find(p.begin(), p.end()) != p.end())
    throw PreconditionError("curve is not simple: two vertices share a position");
}

}  // namespace

Int mikhalkin_multiplicity(const ParamTropCurve& c, std::optional<std::size_t> exempt) {
  check_simple(c);
  Int m = 1;
  for (std::size_t v = 0; v < c.pos.size(); ++v) {
    if (exempt && *exempt == v) continue;
    m *= vertex_multiplicity(c, v);
  }
  return m;
}

Int mikhalkin_multiplicity(const TropicalDisk& d) { return mikhalkin_multiplicity(d.curve, d.out_vertex); }

Int mikhalkin_multiplicity(const TropicalTree& t) { return mikhalkin_multiplicity(t.curve); }

std::int64_t welschinger_multiplicity(const ParamTropCurve& c) {
  check_simple(c);
  std::int64_t s = 1;
  for (std::size_t v = 0; v < c.pos.size(); ++v) {
    Int m = vertex_multiplicity(c, v);
    if (m % 2 == 0) return 0;
    Int h = (m - 1) / 2;
    if (h % 2 != 0) s = -s;
  }
  return s;
}

std::int64_t maslov_index(const TropicalDisk& d, const Fan& fan) {
  return 2 * (degree_total(degree(d, fan)) - static_cast<std::int64_t>(d.curve.marks.size()));
}

// ---- corner locus ----

namespace {

struct Interval {
  bool has_lo = false, has_hi = false;
  Rat lo, hi;
};

}  // namespace

PlanarGraph corner_locus(const MinPlusPoly& f, Convention conv) {
  PlanarGraph g;
  const std::size_t n = f.terms.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (f.terms[i].exponent == f.terms[j].exponent) throw DomainError("corner_locus: repeated exponent");
  // min convention: value_i(z) = c_i + <n_i, z>; max is min of the negated polynomial
  auto val = [&](std::size_t i, const RatVec2& z) {
    Rat v = f.terms[i].coeff + dot(RatVec2(f.terms[i].exponent), z);
    return conv == Convention::Min ? v : Rat(-v);
  };

  struct Key {
    int kind;
    RatVec2 a, b;
    IntVec2 dir;
    bool operator<(const Key& o) const {
      if (kind != o.kind) return kind < o.kind;
      if (!(a == o.a)) return a < o.a;
      if (!(b == o.b)) return b < o.b;
      return dir < o.dir;
    }
  };
  std::map<Key, std::int64_t> merged;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      IntVec2 dn = f.terms[i].exponent - f.terms[j].exponent;
      // line <dn, z> = c_j - c_i
      Rat rhs = f.terms[j].coeff - f.terms[i].coeff;
      RatVec2 z0 = dn.x != 0 ? RatVec2(rhs / Rat(static_cast<long>(dn.x)), 0)
                             : RatVec2(0, rhs / Rat(static_cast<long>(dn.y)));
      IntVec2 d = primitive(rot90(dn)).p;
      RatVec2 dr(d);
      Interval iv;
      bool empty = false;
      for (std::size_t k = 0; k < n && !empty; ++k) {
        if (k == i || k == j) continue;
        // val_i(z0 + t d) <= val_k(z0 + t d)  <=>  slope * t <= gap
        Rat slope = val(i, z0 + dr) - val(i, z0) - (val(k, z0 + dr) - val(k, z0));
        Rat gap = val(k, z0) - val(i, z0);
        if (sgn(slope) == 0) {
          if (sgn(gap) < 0) empty = true;
        } else if (sgn(slope) > 0) {
          Rat t = gap / slope;
          if (!iv.has_hi || t < iv.hi) iv.hi = t, iv.has_hi = true;
        } else {
          Rat t = gap / slope;
          if (!iv.has_lo || t > iv.lo) iv.lo = t, iv.has_lo = true;
        }
      }
      if (empty) continue;
      if (iv.has_lo && iv.has_hi && iv.lo >= iv.hi) continue;
      // interior sample to find all minimizing terms
      Rat ts = iv.has_lo && iv.has_hi ? Rat((iv.lo + iv.hi) / 2)
               : iv.has_lo            ? Rat(iv.lo + 1)
               : iv.has_hi            ? Rat(iv.hi - 1)
                                      : Rat(0);
      RatVec2 zs = z0 + ts * dr;
      Rat best = val(i, zs);
      std::vector<std::size_t> tied;
      for (std::size_t k = 0; k < n; ++k)
        if (val(k, zs) == best) tied.push_back(k);
      // keep only pairs adjacent along the common line of exponents
      IntVec2 ni = f.terms[i].exponent, nj = f.terms[j].exponent;
      auto along = [&](std::size_t k) { return dot(f.terms[k].exponent - ni, nj - ni); };
      std::int64_t ai = along(i), aj = along(j);
      bool adjacent = true;
      for (std::size_t k : tied)
        if (k != i && k != j && along(k) > std::min(ai, aj) && along(k) < std::max(ai, aj)) adjacent = false;
      if (!adjacent) continue;
      std::int64_t w = primitive(dn).k;
      Key key;
      if (iv.has_lo && iv.has_hi) {
        key = {0, z0 + iv.lo * dr, z0 + iv.hi * dr, d};
        if (key.b < key.a) {
          std::swap(key.a, key.b);
          key.dir = -key.dir;
        }
      } else if (iv.has_lo) {
        key = {1, z0 + iv.lo * dr, {}, d};
      } else if (iv.has_hi) {
        key = {1, z0 + iv.hi * dr, {}, -d};
      } else {
        // canonical point and direction for a full line
        IntVec2 dd = d;
        if (dd < IntVec2{0, 0}) dd = -dd;
        RatVec2 p = z0;
        if (dd.x != 0) p = z0 + Rat(-z0.x / Rat(static_cast<long>(dd.x))) * RatVec2(dd);
        else p = z0 + Rat(-z0.y / Rat(static_cast<long>(dd.y))) * RatVec2(dd);
        key = {2, p, {}, dd};
      }
      merged[key] += w;
    }

  std::set<RatVec2> verts;
  for (const auto& [key, w] : merged) {
    PlanarEdge e;
    e.kind = key.kind == 0 ? PlanarEdge::Kind::Segment
             : key.kind == 1 ? PlanarEdge::Kind::Ray
                             : PlanarEdge::Kind::Line;
    e.a = key.a;
    e.b = key.b;
    e.dir = key.dir;
    e.weight = w;
    g.edges.push_back(e);
    if (key.kind <= 1) verts.insert(key.a);
    if (key.kind == 0) verts.insert(key.b);
  }
  g.vertices.assign(verts.begin(), verts.end());
  return g;
}

std::vector<RatVec2> check_balancing(const PlanarGraph& g) {
  std::vector<RatVec2> bad;
  for (const RatVec2& v : g.vertices) {
    IntVec2 s;
    for (const PlanarEdge& e : g.edges) {
      if (e.kind == PlanarEdge::Kind::Line) continue;
      if (e.a == v) s += e.weight * e.dir;
      if (e.kind == PlanarEdge::Kind::Segment && e.b == v) s -= e.weight * e.dir;
    }
    if (!s.is_zero()) bad.push_back(v);
  }
  return bad;
}

}  // namespace tropenum
