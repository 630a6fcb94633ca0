#include "tropenum/broken.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace tropenum {

namespace {

struct Hit {
  Rat t;
  std::vector<std::size_t> walls;  // co-supported walls met at the same point
  RatVec2 point;
};

// Transverse wall crossings of the open ray x + t*v, t > 0, grouped by point.
std::vector<Hit> hits_along(const ScatteringDiagram& d, const RatVec2& x, const IntVec2& v) {
  std::vector<std::pair<Rat, std::size_t>> raw;
  const RatVec2 vr(v);
  for (std::size_t i = 0; i < d.walls.size(); ++i) {
    const Wall& w = d.walls[i];
    const RatVec2 o(w.dir);
    RatVec2 rel = w.base - x;
    Rat den = wedge(vr, o);
    if (sgn(den) == 0) {
      if (sgn(wedge(rel, o)) == 0) throw GenericityError("broken line runs along a wall");
      continue;
    }
    Rat t = wedge(rel, o) / den;
    Rat s = wedge(rel, vr) / den;
    if (sgn(t) <= 0) continue;
    if (w.carrier == Wall::Carrier::Ray) {
      if (sgn(s) < 0) continue;
      if (sgn(s) == 0) throw GenericityError("broken line passes through a wall base");
    }
    raw.emplace_back(t, i);
  }
  std::sort(raw.begin(), raw.end());
  std::vector<Hit> out;
  for (const auto& [t, i] : raw) {
    if (!out.empty() && out.back().t == t) {
      if (wedge(d.walls[out.back().walls.front()].dir, d.walls[i].dir) != 0)
        throw GenericityError("broken line passes through a singular point");
      out.back().walls.push_back(i);
    } else {
      out.push_back({t, {i}, x + t * vr});
    }
  }
  return out;
}

struct Step {
  RatVec2 point;  // bend point (start of the later segment)
  Monomial before;
  Rat coeff_before;
  std::vector<std::size_t> walls;
};

}  // namespace

std::vector<BrokenLine> enumerate_broken_lines(const ScatteringDiagram& d, const Fan& fan, const RatVec2& q) {
  const std::size_t nr = fan.size();
  for (const Wall& w : d.walls)
    if (on_support(w, q)) throw GenericityError("non-generic Q: lies on a wall");

  // candidate final monomials: e_rho plus exponents of walls with disjoint u-sets
  std::set<Monomial> cands;
  std::vector<Monomial> wall_terms;
  for (const Wall& w : d.walls)
    for (const auto& [m, c] : w.f.terms())
      if (m.u != 0) wall_terms.push_back(m);
  std::sort(wall_terms.begin(), wall_terms.end());
  wall_terms.erase(std::unique(wall_terms.begin(), wall_terms.end()), wall_terms.end());
  std::function<void(std::size_t, Monomial)> grow = [&](std::size_t i, Monomial cur) {
    cands.insert(cur);
    for (std::size_t j = i; j < wall_terms.size(); ++j) {
      if (cur.u & wall_terms[j].u) continue;
      Monomial nx = cur;
      nx.u |= wall_terms[j].u;
      for (std::size_t r = 0; r < nr; ++r) nx.e[r] += wall_terms[j].e[r];
      grow(j + 1, nx);
    }
  };
  for (std::size_t r = 0; r < nr; ++r) {
    Monomial m{Exponent(nr, 0), 0};
    m.e[r] = 1;
    grow(0, m);
  }

  std::vector<BrokenLine> out;
  std::vector<Step> steps;  // bends, nearest to q first
  Monomial fin;

  auto emit = [&](int ray) {
    BrokenLine bl;
    bl.ray = ray;
    const std::size_t s = steps.size();
    std::vector<std::optional<RatVec2>> pts{std::nullopt};
    std::vector<Monomial> mons;
    for (std::size_t i = s; i-- > 0;) {
      pts.push_back(steps[i].point);
      mons.push_back(steps[i].before);
      bl.bends.push_back(steps[i].walls.front());
    }
    pts.push_back(q);
    mons.push_back(fin);
    Rat c = 1;
    for (std::size_t j = 0; j < mons.size(); ++j) {
      if (j > 0) c *= steps[s - j].coeff_before;
      bl.segments.push_back({pts[j], *pts[j + 1], mons[j], c});
    }
    out.push_back(std::move(bl));
  };

  std::function<void(const RatVec2&, const Monomial&)> trace = [&](const RatVec2& x, const Monomial& m) {
    IntVec2 v = r_of(fan, m.e);
    if (v.is_zero()) return;
    for (const Hit& h : hits_along(d, x, v)) {
      RingElement f = RingElement::constant(nr, 1);
      for (std::size_t wi : h.walls) f = f * d.walls[wi].f;
      IntVec2 n = primitive(rot90(d.walls[h.walls.front()].dir)).p;
      std::int64_t e = std::abs(dot(n, v));
      RingElement g = f.pow(e);
      for (const auto& [t, c] : g.terms()) {
        if (t.u == 0) continue;  // the unit term means passing straight through
        if ((t.u & m.u) != t.u) continue;
        Monomial before{Exponent(nr), m.u & ~t.u};
        for (std::size_t r = 0; r < nr; ++r) before.e[r] = m.e[r] - t.e[r];
        steps.push_back({h.point, before, c, h.walls});
        trace(h.point, before);
        steps.pop_back();
      }
    }
    // unbent from here on: must be an initial monomial arriving from infinity
    if (m.u != 0) return;
    int ray = -1;
    for (std::size_t r = 0; r < nr; ++r) {
      if (m.e[r] == 1 && ray < 0) ray = static_cast<int>(r);
      else if (m.e[r] != 0) return;
    }
    if (ray >= 0) emit(ray);
  };

  for (const Monomial& c : cands) {
    fin = c;
    trace(q, c);
  }

  // forward re-check: each bend multiplies by a term of f^{<n0, r(m)>} of the walls at that point
  for (const BrokenLine& bl : out) {
    for (std::size_t j = 1; j < bl.segments.size(); ++j) {
      const auto& prev = bl.segments[j - 1];
      const auto& s = bl.segments[j];
      RingElement f = RingElement::constant(nr, 1);
      const Wall& w0 = d.walls[bl.bends[j - 1]];
      for (const Wall& w : d.walls)
        if (wedge(w.dir, w0.dir) == 0 && on_support(w, *s.start)) f = f * w.f;
      IntVec2 n = primitive(rot90(w0.dir)).p;
      RingElement g = f.pow(std::abs(dot(n, r_of(fan, prev.mono.e))));
      Monomial t{Exponent(nr), s.mono.u & ~prev.mono.u};
      for (std::size_t r = 0; r < nr; ++r) t.e[r] = s.mono.e[r] - prev.mono.e[r];
      auto it = g.terms().find(t);
      if ((prev.mono.u & t.u) || it == g.terms().end() || s.coeff != prev.coeff * it->second)
        throw InvariantError("broken line bend not realized by its wall");
    }
  }
  std::sort(out.begin(), out.end(), [](const BrokenLine& a, const BrokenLine& b) {
    if (!(a.final_monomial() == b.final_monomial())) return a.final_monomial() < b.final_monomial();
    if (a.ray != b.ray) return a.ray < b.ray;
    return a.bends < b.bends;
  });
  return out;
}

RingElement Potential::kappa() const {
  return RingElement::monomial(Exponent(value.nrays(), 1));
}

RingElement Potential::y2(std::size_t k) const {
  RingElement s(value.nrays());
  for (std::size_t i = 0; i < k; ++i) s.add_term({Exponent(value.nrays(), 0), 1u << i}, 1);
  return s;
}

Potential potential(const ScatteringDiagram& d, const Fan& fan, const RatVec2& q) {
  Potential p;
  p.lines = enumerate_broken_lines(d, fan, q);
  p.value = RingElement(fan.size());
  p.value.set_y0(1);
  for (const BrokenLine& bl : p.lines) p.value.add_term(bl.final_monomial(), bl.final_coeff());
  return p;
}

std::vector<MonoTerm> broken_line_monomials(const std::vector<BrokenLine>& lines) {
  std::vector<MonoTerm> out;
  for (const BrokenLine& bl : lines) out.push_back({bl.final_monomial(), bl.final_coeff()});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MonoTerm> disk_monomials(const std::vector<DiskRecord>& disks) {
  std::vector<MonoTerm> out;
  for (const DiskRecord& d : disks) out.push_back({{d.ends, d.mask}, Rat(d.mult)});
  std::sort(out.begin(), out.end());
  return out;
}

DiskCorrespondence compare_disks_and_lines(const Fan& fan, const std::vector<RatVec2>& points, const RatVec2& q,
                                           unsigned jobs) {
  ScatteringDiagram d = build_diagram(fan, points, jobs);
  DiskCorrespondence c;
  c.from_lines = broken_line_monomials(enumerate_broken_lines(d, fan, q));
  c.from_disks = disk_monomials(enumerate_maslov2_disks(fan, points, q, jobs));
  return c;
}

bool verify_disk_correspondence(const Fan& fan, const std::vector<RatVec2>& points, const RatVec2& q) {
  return compare_disks_and_lines(fan, points, q).equal();
}

Potential transport(const ScatteringDiagram& d, const Fan& fan, const Potential& w, const std::vector<RatVec2>& path) {
  Potential out;
  out.value = transport_element(fan, d, path, w.value);
  return out;
}

}  // namespace tropenum
