#include "tropenum/correspondence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace tropenum {

namespace {

IntVec2 lex_positive_normal(const IntVec2& u) {
  IntVec2 n{-u.y, u.x};
  if (n.x < 0 || (n.x == 0 && n.y < 0)) n = -n;
  return n;
}

}  // namespace

PhiSystem build_phi(const ParamTropCurve& c, std::uint64_t flip_mask) {
  validate(c);
  PhiSystem sys;
  std::map<std::size_t, std::size_t> vidx;
  for (std::size_t v = 0; v < c.pos.size(); ++v)
    if (!c.is_marked(v)) {
      vidx[v] = sys.vertices.size();
      sys.vertices.push_back(v);
    }
  if (sys.vertices.empty())
    throw PreconditionError("curve has no unmarked vertex; the lattice map is not defined");
  std::map<std::size_t, int> label_of;
  for (const auto& [label, v] : c.marks) label_of[v] = label;

  std::vector<bool> used(c.edges.size(), false);
  for (std::size_t e0 = 0; e0 < c.edges.size(); ++e0) {
    if (used[e0]) continue;
    // walk from one end of the chain containing e0 to the other
    std::vector<std::optional<std::size_t>> ends;
    std::vector<std::size_t> last_edge;
    std::vector<int> marks;
    for (int side = 0; side < 2; ++side) {
      std::size_t e = e0;
      std::optional<std::size_t> v = side == 0 ? std::optional<std::size_t>(c.edges[e0].u) : c.edges[e0].v;
      used[e0] = true;
      while (v && c.is_marked(*v)) {
        if (side == 0 || std::find(marks.begin(), marks.end(), label_of[*v]) == marks.end())
          marks.push_back(label_of[*v]);
        auto inc = c.incident(*v);
        if (inc.size() != 2) throw PreconditionError("marked point must lie in the interior of an edge");
        std::size_t next = inc[0] == e ? inc[1] : inc[0];
        used[next] = true;
        const CurveEdge& ce = c.edges[next];
        std::optional<std::size_t> w = ce.u == *v ? ce.v : std::optional<std::size_t>(ce.u);
        e = next;
        v = w;
      }
      ends.push_back(v);
      last_edge.push_back(e);
    }
    if (!ends[0] && !ends[1]) throw PreconditionError("curve has no unmarked vertex; the lattice map is not defined");
    ReducedEdge re;
    re.weight = c.edges[e0].weight;
    std::sort(marks.begin(), marks.end());
    re.marks = marks;
    if (ends[0] && ends[1]) {
      std::size_t a = vidx.at(*ends[0]), b = vidx.at(*ends[1]);
      if (c.pos[*ends[1]] < c.pos[*ends[0]]) std::swap(a, b);
      if (flip_mask >> (sys.bounded.size() % 64) & 1) std::swap(a, b);
      re.minus = a;
      re.plus = b;
      re.u = primitive_direction(c.pos[sys.vertices[b]] - c.pos[sys.vertices[a]]);
      sys.bounded.push_back(sys.edges.size());
    } else {
      std::size_t v = ends[0] ? *ends[0] : *ends[1];
      re.minus = vidx.at(v);
      // the unbounded curve edge closing the chain stores its outward direction
      IntVec2 d = c.edges[ends[0] ? last_edge[1] : last_edge[0]].dir;
      re.u = d;
    }
    re.n = lex_positive_normal(re.u);
    sys.edges.push_back(re);
  }

  for (std::size_t ei = 0; ei < sys.edges.size(); ++ei)
    for (int label : sys.edges[ei].marks) sys.mark_rows.emplace_back(label, ei);
  std::sort(sys.mark_rows.begin(), sys.mark_rows.end());

  const std::size_t rows = sys.bounded.size() + sys.mark_rows.size();
  const std::size_t cols = 2 * sys.vertices.size();
  sys.matrix = IntMatrix(rows, cols);
  std::size_t r = 0;
  for (std::size_t ei : sys.bounded) {
    const ReducedEdge& e = sys.edges[ei];
    sys.matrix.at(r, 2 * *e.plus) += static_cast<long>(e.n.x);
    sys.matrix.at(r, 2 * *e.plus + 1) += static_cast<long>(e.n.y);
    sys.matrix.at(r, 2 * e.minus) -= static_cast<long>(e.n.x);
    sys.matrix.at(r, 2 * e.minus + 1) -= static_cast<long>(e.n.y);
    ++r;
  }
  for (const auto& [label, ei] : sys.mark_rows) {
    const ReducedEdge& e = sys.edges[ei];
    sys.matrix.at(r, 2 * e.minus) = static_cast<long>(e.n.x);
    sys.matrix.at(r, 2 * e.minus + 1) = static_cast<long>(e.n.y);
    ++r;
  }
  return sys;
}

Int index_d(const PhiSystem& sys) {
  if (smith_invariants(sys.matrix).size() != sys.matrix.cols)
    throw PreconditionError("lattice map has a kernel: curve is not rigid");
  auto o = cokernel_order(sys.matrix);
  if (!o) throw PreconditionError("lattice map has infinite cokernel");
  return *o;
}

Int log_count_w(const PhiSystem& sys) {
  Int w = 1;
  for (std::size_t ei : sys.bounded) w *= static_cast<long>(sys.edges[ei].weight);
  for (const auto& [label, ei] : sys.mark_rows) w *= static_cast<long>(sys.edges[ei].weight);
  return w;
}

Int log_count_w(const ParamTropCurve& c) { return log_count_w(build_phi(c)); }

bool verify_correspondence(const ParamTropCurve& c) {
  PhiSystem sys = build_phi(c);
  return index_d(sys) * log_count_w(sys) == mikhalkin_multiplicity(c);
}

// ---- overlay ----

namespace {

struct Feature {
  RatVec2 a;
  std::optional<RatVec2> b;
  IntVec2 dir;
};

// parameter of p along the feature (monotone)
Rat param(const Feature& f, const RatVec2& p) { return dot(RatVec2(f.dir), p - f.a); }

bool on_feature(const Feature& f, const RatVec2& p) {
  RatVec2 rel = p - f.a;
  if (sgn(wedge(RatVec2(f.dir), rel)) != 0) return false;
  Rat t = dot(RatVec2(f.dir), rel);
  if (sgn(t) < 0) return false;
  if (f.b && t > param(f, *f.b)) return false;
  return true;
}

std::optional<RatVec2> intersect(const Feature& f, const Feature& g) {
  std::int64_t w = wedge(f.dir, g.dir);
  if (w == 0) return std::nullopt;
  RatVec2 rel = g.a - f.a;
  Rat wr(static_cast<long>(w));
  Rat s = wedge(rel, RatVec2(g.dir)) / wr;
  RatVec2 p = f.a + s * RatVec2(f.dir);
  if (on_feature(f, p) && on_feature(g, p)) return p;
  return std::nullopt;
}


}  // namespace

namespace {

PolyDecomp overlay(const std::vector<Feature>& feats) {
  std::set<RatVec2> vset;
  for (const Feature& f : feats) {
    vset.insert(f.a);
    if (f.b) vset.insert(*f.b);
  }
  for (std::size_t i = 0; i < feats.size(); ++i)
    for (std::size_t j = i + 1; j < feats.size(); ++j)
      if (auto p = intersect(feats[i], feats[j])) vset.insert(*p);
  PolyDecomp d;
  d.vertices.assign(vset.begin(), vset.end());

  std::set<std::pair<std::size_t, std::size_t>> segs;
  std::set<std::pair<std::size_t, IntVec2>> rays;
  for (const Feature& f : feats) {
    std::vector<std::pair<Rat, std::size_t>> on;
    for (std::size_t v = 0; v < d.vertices.size(); ++v)
      if (on_feature(f, d.vertices[v])) on.emplace_back(param(f, d.vertices[v]), v);
    std::sort(on.begin(), on.end());
    for (std::size_t i = 0; i + 1 < on.size(); ++i) {
      std::size_t a = on[i].second, b = on[i + 1].second;
      segs.insert({std::min(a, b), std::max(a, b)});
    }
    if (!f.b) rays.insert({on.back().second, f.dir});
  }
  for (auto [a, b] : segs) d.edges.push_back({a, b, primitive_direction(d.vertices[b] - d.vertices[a])});
  for (const auto& [a, dir] : rays) d.edges.push_back({a, std::nullopt, dir});

  // half-edges: 2e is the edge as stored (a -> b or outward), 2e+1 its reverse
  const std::size_t H = 2 * d.edges.size();
  auto tail = [&](std::size_t h) -> std::optional<std::size_t> {
    const auto& e = d.edges[h / 2];
    if (h % 2 == 0) return e.a;
    return e.b;
  };
  auto hdir = [&](std::size_t h) {
    const auto& e = d.edges[h / 2];
    return h % 2 == 0 ? e.dir : IntVec2(-e.dir);
  };
  std::vector<std::vector<std::size_t>> out(d.vertices.size());
  for (std::size_t h = 0; h < H; ++h)
    if (auto t = tail(h)) out[*t].push_back(h);
  for (auto& lst : out)
    std::sort(lst.begin(), lst.end(), [&](std::size_t x, std::size_t y) { return angle_less(hdir(x), hdir(y)); });
  // rays ordered counterclockwise at infinity
  std::vector<std::size_t> ray_edges;
  for (std::size_t e = 0; e < d.edges.size(); ++e)
    if (!d.edges[e].b) ray_edges.push_back(e);
  std::sort(ray_edges.begin(), ray_edges.end(), [&](std::size_t x, std::size_t y) {
    const auto &ex = d.edges[x], &ey = d.edges[y];
    if (ex.dir != ey.dir) return angle_less(ex.dir, ey.dir);
    return wedge(RatVec2(ex.dir), d.vertices[ex.a]) < wedge(RatVec2(ey.dir), d.vertices[ey.a]);
  });
  std::map<std::size_t, std::size_t> ray_pos;
  for (std::size_t i = 0; i < ray_edges.size(); ++i) ray_pos[ray_edges[i]] = i;

  auto next = [&](std::size_t h) -> std::size_t {
    const auto& e = d.edges[h / 2];
    if (!e.b && h % 2 == 0) {
      std::size_t i = (ray_pos[h / 2] + 1) % ray_edges.size();
      return 2 * ray_edges[i] + 1;
    }
    std::size_t head = h % 2 == 0 ? *e.b : e.a;
    std::size_t twin = h ^ 1;
    const auto& lst = out[head];
    auto it = std::find(lst.begin(), lst.end(), twin);
    std::size_t i = static_cast<std::size_t>(it - lst.begin());
    return lst[(i + lst.size() - 1) % lst.size()];
  };

  std::vector<bool> seen(H, false);
  for (std::size_t h0 = 0; h0 < H; ++h0) {
    if (seen[h0]) continue;
    PolyDecomp::Face f;
    std::size_t h = h0;
    std::vector<std::pair<IntVec2, IntVec2>> jumps;
    do {
      seen[h] = true;
      if (auto t = tail(h)) f.vertices.push_back(*t);
      const auto& e = d.edges[h / 2];
      std::size_t nx = next(h);
      if (!e.b && h % 2 == 0) jumps.emplace_back(e.dir, d.edges[nx / 2].dir);
      h = nx;
    } while (h != h0);
    if (jumps.size() == 1) {
      auto [d1, d2] = jumps[0];
      if (d1 == d2) f.recession = {d1};
      else f.recession = {d1, d2};
    } else if (jumps.size() > 1) {
      // non-convex unbounded region; keep every direction for the report
      for (auto& [d1, d2] : jumps) f.recession.push_back(d1);
    }
    d.faces.push_back(std::move(f));
  }
  return d;
}

bool same_cone_as_fan(const std::vector<IntVec2>& rec, const Fan& fan) {
  if (rec.empty()) return true;
  if (rec.size() == 1) return fan.ray_index(rec[0]).has_value() && fan.rays[*fan.ray_index(rec[0])] == rec[0];
  if (rec.size() != 2) return false;
  for (auto [i, j] : fan.cones2d)
    if (fan.rays[i] == rec[0] && fan.rays[j] == rec[1]) return true;
  return false;
}

// Curve images as features. Marked bivalent vertices are not vertices of the
// image, so the two edges through them are joined.
std::vector<Feature> curve_features(const std::vector<ParamTropCurve>& curves) {
  std::vector<Feature> feats;
  for (const ParamTropCurve& c : curves) {
    auto smooth = [&](std::size_t v) { return c.is_marked(v) && c.incident(v).size() == 2; };
    auto other_edge = [&](std::size_t v, std::size_t e) {
      auto inc = c.incident(v);
      return inc[0] == e ? inc[1] : inc[0];
    };
    struct End {
      std::optional<std::size_t> vertex;  // nullopt: the chain leaves along `ray`
      IntVec2 ray;
    };
    std::vector<bool> seen(c.edges.size(), false);
    // follow edge e away from `from` through smoothable vertices
    auto walk = [&](std::size_t from, std::size_t e) -> End {
      while (true) {
        seen[e] = true;
        const CurveEdge& ce = c.edges[e];
        if (!ce.v) return {std::nullopt, ce.dir};
        std::size_t to = ce.u == from ? *ce.v : ce.u;
        if (!smooth(to)) return {to, {}};
        e = other_edge(to, e);
        from = to;
      }
    };
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
      if (seen[e]) continue;
      const CurveEdge& ce = c.edges[e];
      End fwd = ce.v ? walk(ce.u, e) : End{std::nullopt, ce.dir};
      seen[e] = true;
      End back = smooth(ce.u) ? walk(ce.u, other_edge(ce.u, e)) : End{ce.u, {}};
      Feature f;
      if (back.vertex && fwd.vertex) {
        f.a = c.pos[*back.vertex];
        f.b = c.pos[*fwd.vertex];
        f.dir = primitive_direction(*f.b - f.a);
      } else if (back.vertex) {
        f.a = c.pos[*back.vertex];
        f.dir = fwd.ray;
      } else if (fwd.vertex) {
        f.a = c.pos[*fwd.vertex];
        f.dir = back.ray;
      } else {
        throw PreconditionError("curve component is a line through marked points only");
      }
      feats.push_back(f);
    }
  }
  return feats;
}

}  // namespace

DecompReport check_decomposition(const PolyDecomp& d, const std::vector<ParamTropCurve>& curves, const Fan& fan,
                                 const std::vector<RatVec2>& points) {
  DecompReport r;
  std::set<RatVec2> vset(d.vertices.begin(), d.vertices.end());

  // 1: each curve edge is a union of decomposition edges
  r.curves_in_skeleton = true;
  std::set<std::pair<RatVec2, RatVec2>> dsegs;
  std::set<std::pair<RatVec2, IntVec2>> drays;
  for (const auto& e : d.edges) {
    if (e.b) {
      RatVec2 p = d.vertices[e.a], q = d.vertices[*e.b];
      if (q < p) std::swap(p, q);
      dsegs.insert({p, q});
    } else {
      drays.insert({d.vertices[e.a], e.dir});
    }
  }
  for (const Feature& f : curve_features(curves)) {
    std::vector<std::pair<Rat, RatVec2>> on;
    for (const RatVec2& v : d.vertices)
      if (on_feature(f, v)) on.emplace_back(param(f, v), v);
    std::sort(on.begin(), on.end());
    bool ok = !on.empty() && on.front().second == f.a && (!f.b || on.back().second == *f.b);
    for (std::size_t i = 0; ok && i + 1 < on.size(); ++i) {
      RatVec2 p = on[i].second, q = on[i + 1].second;
      if (q < p) std::swap(p, q);
      ok = dsegs.count({p, q}) > 0;
    }
    if (ok && !f.b) ok = drays.count({on.back().second, f.dir}) > 0;
    if (!ok) {
      r.curves_in_skeleton = false;
      r.failures.push_back("curve edge from " + to_string(f.a) + " not covered by the 1-skeleton");
    }
  }

  // 2
  r.points_are_vertices = true;
  for (const RatVec2& p : points)
    if (!vset.count(p)) {
      r.points_are_vertices = false;
      r.failures.push_back("point " + to_string(p) + " is not a vertex");
    }

  // 3: exact rationals by construction; denominators must be positive
  r.rational = true;
  for (const RatVec2& v : d.vertices)
    if (sgn(v.x.get_den()) <= 0 || sgn(v.y.get_den()) <= 0) r.rational = false;

  // 4
  r.cells_have_vertices = !d.vertices.empty();
  for (std::size_t i = 0; i < d.faces.size(); ++i)
    if (d.faces[i].vertices.empty()) {
      r.cells_have_vertices = false;
      r.failures.push_back("face " + std::to_string(i) + " has no vertex");
    }

  // 5
  r.recession_in_fan = true;
  for (const auto& e : d.edges)
    if (!e.b && !same_cone_as_fan({e.dir}, fan)) {
      r.recession_in_fan = false;
      r.failures.push_back("unbounded edge direction is not a ray of the fan");
    }
  for (std::size_t i = 0; i < d.faces.size(); ++i)
    if (!same_cone_as_fan(d.faces[i].recession, fan)) {
      r.recession_in_fan = false;
      r.failures.push_back("recession cone of face " + std::to_string(i) + " is not a cone of the fan");
    }
  return r;
}

Decomposition build_decomposition(const std::vector<ParamTropCurve>& curves, const Fan& fan,
                                  const std::vector<RatVec2>& points, TranslatePolicy policy) {
  auto build = [&](bool translates) {
    std::vector<Feature> feats = curve_features(curves);
    if (translates)
      for (const RatVec2& p : points)
        for (const IntVec2& r : fan.rays) feats.push_back({p, std::nullopt, r});
    Decomposition out;
    out.decomp = overlay(feats);
    out.translates_added = translates;
    // Euler characteristic with one vertex at infinity
    std::size_t V = out.decomp.vertices.size() + 1, E = out.decomp.edges.size(), F = out.decomp.faces.size();
    if (V + F != E + 2) throw InvariantError("overlay is disconnected or inconsistent");
    out.report = check_decomposition(out.decomp, curves, fan, points);
    return out;
  };
  if (policy == TranslatePolicy::Always) return build(true);
  Decomposition d = build(false);
  if (policy == TranslatePolicy::Never || d.report.ok()) return d;
  return build(true);
}

std::pair<PolyDecomp, Int> rescale_lattice(const PolyDecomp& d) {
  Int a = 1;
  for (const RatVec2& v : d.vertices) {
    mpz_lcm(a.get_mpz_t(), a.get_mpz_t(), v.x.get_den_mpz_t());
    mpz_lcm(a.get_mpz_t(), a.get_mpz_t(), v.y.get_den_mpz_t());
  }
  PolyDecomp out = d;
  Rat ar(a);
  for (RatVec2& v : out.vertices) v = ar * v;
  return {out, a};
}

namespace {

Fan3D::Gen gen(const RatVec2& v) { return {v.x.get_num(), v.y.get_num(), Int(1)}; }
Fan3D::Gen gen(const IntVec2& d) { return {Int(static_cast<long>(d.x)), Int(static_cast<long>(d.y)), Int(0)}; }

}  // namespace

Fan3D fan_over(const PolyDecomp& d, const Fan& fan) {
  for (const RatVec2& v : d.vertices)
    if (v.x.get_den() != 1 || v.y.get_den() != 1) throw DomainError("fan_over needs an integral decomposition");
  for (const auto& f : d.faces) {
    if (f.vertices.empty()) throw DomainError("fan_over: cell without a vertex");
    if (!same_cone_as_fan(f.recession, fan)) throw DomainError("fan_over: recession cone not in the fan");
  }
  std::set<Fan3D::Cone> cones;
  auto add = [&](std::vector<Fan3D::Gen> g) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    cones.insert({g});
  };
  for (const RatVec2& v : d.vertices) add({gen(v)});
  for (const auto& e : d.edges) {
    if (e.b) add({gen(d.vertices[e.a]), gen(d.vertices[*e.b])});
    else add({gen(d.vertices[e.a]), gen(e.dir)});
  }
  for (const auto& f : d.faces) {
    std::vector<Fan3D::Gen> g;
    for (std::size_t v : f.vertices) g.push_back(gen(d.vertices[v]));
    for (const IntVec2& r : f.recession) g.push_back(gen(r));
    add(g);
  }
  // height-0 faces of the cones above
  for (const auto& e : d.edges)
    if (!e.b) add({gen(e.dir)});
  for (const auto& f : d.faces) {
    if (f.recession.empty()) continue;
    std::vector<Fan3D::Gen> g;
    for (const IntVec2& r : f.recession) g.push_back(gen(r));
    add(g);
    for (const IntVec2& r : f.recession) add({gen(r)});
  }
  Fan3D out;
  out.cones.assign(cones.begin(), cones.end());
  return out;
}

std::vector<SlicedCell> slice_height_one(const Fan3D& f) {
  std::vector<SlicedCell> out;
  for (const auto& c : f.cones) {
    SlicedCell s;
    for (const auto& g : c.gens) {
      if (g[2] == 1) s.vertices.emplace_back(Rat(g[0]), Rat(g[1]));
      else s.recession.push_back({g[0].get_si(), g[1].get_si()});
    }
    if (s.vertices.empty()) continue;
    std::sort(s.vertices.begin(), s.vertices.end());
    std::sort(s.recession.begin(), s.recession.end());
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const SlicedCell& a, const SlicedCell& b) {
    if (a.vertices != b.vertices) return std::lexicographical_compare(a.vertices.begin(), a.vertices.end(),
                                                                      b.vertices.begin(), b.vertices.end());
    return a.recession < b.recession;
  });
  return out;
}

std::vector<SlicedCell> cells_of(const PolyDecomp& d) {
  std::vector<SlicedCell> out;
  for (const RatVec2& v : d.vertices) out.push_back({{v}, {}});
  for (const auto& e : d.edges) {
    if (e.b) out.push_back({{d.vertices[e.a], d.vertices[*e.b]}, {}});
    else out.push_back({{d.vertices[e.a]}, {e.dir}});
  }
  for (const auto& f : d.faces) {
    SlicedCell s;
    for (std::size_t v : f.vertices) s.vertices.push_back(d.vertices[v]);
    s.recession = f.recession;
    out.push_back(s);
  }
  for (auto& s : out) {
    std::sort(s.vertices.begin(), s.vertices.end());
    s.vertices.erase(std::unique(s.vertices.begin(), s.vertices.end()), s.vertices.end());
    std::sort(s.recession.begin(), s.recession.end());
  }
  std::sort(out.begin(), out.end(), [](const SlicedCell& a, const SlicedCell& b) {
    if (a.vertices != b.vertices) return std::lexicographical_compare(a.vertices.begin(), a.vertices.end(),
                                                                      b.vertices.begin(), b.vertices.end());
    return a.recession < b.recession;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<IntVec2>> height_zero_cones(const Fan3D& f) {
  std::vector<std::vector<IntVec2>> out;
  for (const auto& c : f.cones) {
    bool zero = std::all_of(c.gens.begin(), c.gens.end(), [](const Fan3D::Gen& g) { return g[2] == 0; });
    if (!zero) continue;
    std::vector<IntVec2> g;
    for (const auto& x : c.gens) g.push_back({x[0].get_si(), x[1].get_si()});
    std::sort(g.begin(), g.end());
    out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<IntVec2>> fan_cones(const Fan& fan) {
  std::vector<std::vector<IntVec2>> out;
  for (const IntVec2& r : fan.rays) out.push_back({r});
  for (auto [i, j] : fan.cones2d) {
    std::vector<IntVec2> g{fan.rays[i], fan.rays[j]};
    std::sort(g.begin(), g.end());
    out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string fan3d_cone_list(const Fan3D& f) {
  std::string s;
  for (const auto& c : f.cones) {
    s += std::to_string(c.gens.size()) + ":";
    for (const auto& g : c.gens) s += " " + g[0].get_str() + "," + g[1].get_str() + "," + g[2].get_str();
    s += "\n";
  }
  return s;
}

}  // namespace tropenum
