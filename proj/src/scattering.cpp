#include "tropenum/scattering.hpp"

#include <algorithm>
#include <set>

namespace tropenum {

// ---- ring ----

RingElement RingElement::constant(std::size_t nrays, const Rat& c) {
  RingElement r(nrays);
  r.add_term({Exponent(nrays, 0), 0}, c);
  return r;
}

RingElement RingElement::monomial(const Exponent& e, std::uint32_t u, const Rat& c) {
  RingElement r(e.size());
  r.add_term({e, u}, c);
  return r;
}

RingElement RingElement::generator(std::size_t nrays, std::size_t ray) {
  Exponent e(nrays, 0);
  e.at(ray) = 1;
  return monomial(e);
}

void RingElement::add_term(const Monomial& m, const Rat& c) {
  if (m.e.size() != n_) throw DomainError("monomial exponent has the wrong number of rays");
  if (sgn(c) == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

RingElement RingElement::mod_u() const {
  RingElement r(n_);
  r.y0_ = y0_;
  for (const auto& [m, c] : terms_)
    if (m.u == 0) r.terms_.emplace(m, c);
  return r;
}

bool RingElement::in_u_ideal() const {
  for (const auto& [m, c] : terms_)
    if (m.u == 0) return false;
  return true;
}

RingElement RingElement::operator+(const RingElement& o) const {
  RingElement r = *this;
  r += o;
  return r;
}

RingElement& RingElement::operator+=(const RingElement& o) {
  if (n_ != o.n_) {
    if (o.terms_.empty()) {
      y0_ += o.y0_;
      return *this;
    }
    if (!terms_.empty()) throw DomainError("ring elements over different fans");
    n_ = o.n_;
  }
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  y0_ += o.y0_;
  return *this;
}

RingElement RingElement::operator-() const {
  RingElement r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  r.y0_ = -r.y0_;
  return r;
}

RingElement RingElement::operator-(const RingElement& o) const { return *this + (-o); }

RingElement RingElement::operator*(const Rat& c) const {
  RingElement r(n_);
  if (sgn(c) == 0) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  r.y0_ = y0_ * c;
  return r;
}

namespace {

// Returns the scalar if x is a constant (no u, zero exponent), else nullopt.
std::optional<Rat> as_scalar(const RingElement& x) {
  if (sgn(x.y0()) != 0) return std::nullopt;
  if (x.terms().empty()) return Rat(0);
  if (x.terms().size() != 1) return std::nullopt;
  const auto& [m, c] = *x.terms().begin();
  if (m.u != 0) return std::nullopt;
  for (auto v : m.e)
    if (v != 0) return std::nullopt;
  return c;
}

}  // namespace

RingElement RingElement::operator*(const RingElement& o) const {
  if (sgn(y0_) != 0 || sgn(o.y0_) != 0) {
    if (auto s = as_scalar(o)) return *this * *s;
    if (auto s = as_scalar(*this)) return o * *s;
    throw DomainError("y0 is a formal additive constant; it cannot be multiplied");
  }
  if (n_ != o.n_) throw DomainError("ring elements over different fans");
  RingElement r(n_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      if (m1.u & m2.u) continue;  // u_i^2 = 0
      Monomial m{Exponent(n_), m1.u | m2.u};
      for (std::size_t i = 0; i < n_; ++i) m.e[i] = checked_add(m1.e[i], m2.e[i]);
      r.add_term(m, c1 * c2);
    }
  return r;
}

namespace {

// x = c z^a (1 + N) with N in the u-ideal; returns (c, a, N).
struct UnitSplit {
  Rat c;
  Exponent a;
  RingElement n;
};

UnitSplit split_unit(const RingElement& x) {
  if (sgn(x.y0()) != 0) throw DomainError("cannot invert an element with a y0 part");
  const Monomial* lead = nullptr;
  Rat c;
  for (const auto& [m, v] : x.terms())
    if (m.u == 0) {
      if (lead) throw DomainError("element is not a monomial times a unipotent factor");
      lead = &m;
      c = v;
    }
  if (!lead) throw DomainError("element is nilpotent, not invertible");
  UnitSplit s{c, lead->e, RingElement(x.nrays())};
  for (const auto& [m, v] : x.terms()) {
    if (&m == lead) continue;
    Monomial q{m.e, m.u};
    for (std::size_t i = 0; i < q.e.size(); ++i) q.e[i] = checked_add(q.e[i], -lead->e[i]);
    s.n.add_term(q, v / c);
  }
  return s;
}

RingElement unipotent_pow(const RingElement& n, std::int64_t e) {
  // (1 + N)^e for nilpotent N
  const std::size_t nr = n.nrays();
  RingElement one = RingElement::constant(nr, 1);
  if (e == 0) return one;
  RingElement base = one + n;
  if (e < 0) {
    RingElement inv = one, term = one;
    RingElement neg = -n;
    for (;;) {
      term = term * neg;
      if (term.is_zero()) break;
      inv += term;
    }
    base = inv;
    e = -e;
  }
  RingElement r = one;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

}  // namespace

RingElement RingElement::pow(std::int64_t e) const {
  UnitSplit s = split_unit(*this);
  Exponent ea(s.a.size());
  for (std::size_t i = 0; i < ea.size(); ++i) ea[i] = checked_mul(s.a[i], e);
  Rat ce = 1;
  if (e >= 0) {
    for (std::int64_t i = 0; i < e; ++i) ce *= s.c;
  } else {
    for (std::int64_t i = 0; i < -e; ++i) ce /= s.c;
  }
  return RingElement::monomial(ea, 0, ce) * unipotent_pow(s.n, e);
}

std::string monomial_string(const Monomial& m) {
  std::string s;
  auto push = [&](const std::string& x) {
    if (!s.empty()) s += "*";
    s += x;
  };
  for (int i = 0; i < 32; ++i)
    if (m.u >> i & 1) push("u" + std::to_string(i + 1));
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    if (m.e[i] == 0) continue;
    std::string x = "x" + std::to_string(i);
    if (m.e[i] != 1) x += "^" + std::to_string(m.e[i]);
    push(x);
  }
  return s.empty() ? "1" : s;
}

std::string RingElement::str() const {
  std::string s;
  auto push = [&](const Rat& c, const std::string& mono) {
    std::string t;
    if (mono == "1") t = to_string(c);
    else if (c == 1) t = mono;
    else if (c == -1) t = "-" + mono;
    else t = to_string(c) + "*" + mono;
    if (s.empty()) s = t;
    else if (t[0] == '-') s += " - " + t.substr(1);
    else s += " + " + t;
  };
  if (sgn(y0_) != 0) push(y0_, "y0");
  for (const auto& [m, c] : terms_) push(c, monomial_string(m));
  return s.empty() ? "0" : s;
}

IntVec2 r_of(const Fan& fan, const Exponent& m) {
  if (m.size() != fan.size()) throw DomainError("exponent has the wrong number of rays");
  return degree_image(fan, m);
}

// ---- automorphisms ----

RingAutomorphism RingAutomorphism::identity(std::size_t nrays) {
  RingAutomorphism a;
  for (std::size_t i = 0; i < nrays; ++i) a.images.push_back(RingElement::generator(nrays, i));
  return a;
}

bool RingAutomorphism::is_identity() const {
  for (std::size_t i = 0; i < images.size(); ++i)
    if (!(images[i] == RingElement::generator(images.size(), i))) return false;
  return true;
}

RingElement RingAutomorphism::apply(const RingElement& x) const {
  const std::size_t n = images.size();
  RingElement out(n);
  out.set_y0(x.y0());
  std::vector<std::map<std::int64_t, RingElement>> cache(n);
  auto power = [&](std::size_t i, std::int64_t e) -> const RingElement& {
    auto it = cache[i].find(e);
    if (it != cache[i].end()) return it->second;
    return cache[i].emplace(e, images[i].pow(e)).first->second;
  };
  for (const auto& [m, c] : x.terms()) {
    Exponent zero(n, 0);
    RingElement t = RingElement::monomial(zero, m.u, c);
    for (std::size_t i = 0; i < n; ++i)
      if (m.e[i] != 0) t = t * power(i, m.e[i]);
    out += t;
  }
  return out;
}

RingAutomorphism RingAutomorphism::after(const RingAutomorphism& other) const {
  RingAutomorphism r;
  for (const RingElement& img : other.images) r.images.push_back(apply(img));
  return r;
}

RingAutomorphism apply_generator(const Fan& fan, const Rat& c, std::uint32_t I, const Exponent& m,
                                 const IntVec2& n) {
  if (I == 0) throw DomainError("apply_generator needs a nonempty index set");
  const std::size_t nr = fan.size();
  RingAutomorphism a;
  for (std::size_t i = 0; i < nr; ++i) {
    std::int64_t pairing = dot(n, fan.rays[i]);
    RingElement factor = RingElement::constant(nr, 1) + RingElement::monomial(m, I, c * Rat(static_cast<long>(pairing)));
    a.images.push_back(RingElement::generator(nr, i) * factor);
  }
  return a;
}

namespace {

IntVec2 crossing_normal(const Wall& w, const IntVec2& crossing_dir) {
  IntVec2 n = primitive(rot90(w.dir)).p;
  std::int64_t s = dot(n, crossing_dir);
  if (s == 0) throw NonTransversePath("path runs parallel to a wall");
  return s > 0 ? -n : n;
}

IntVec2 crossing_normal(const Wall& w, const RatVec2& crossing_dir) {
  IntVec2 n = primitive(rot90(w.dir)).p;
  Rat s = dot(RatVec2(n), crossing_dir);
  if (sgn(s) == 0) throw NonTransversePath("path runs parallel to a wall");
  return sgn(s) > 0 ? -n : n;
}

RingAutomorphism crossing_from_normal(const Fan& fan, const Wall& w, const IntVec2& n0) {
  const std::size_t nr = fan.size();
  RingAutomorphism a;
  for (std::size_t i = 0; i < nr; ++i)
    a.images.push_back(RingElement::generator(nr, i) * w.f.pow(dot(n0, fan.rays[i])));
  return a;
}

RingElement cross_with_normal(const Fan& fan, const Wall& w, const IntVec2& n0, const RingElement& x) {
  RingElement out(x.nrays());
  out.set_y0(x.y0());
  for (const auto& [m, c] : x.terms()) {
    RingElement t = RingElement::monomial(m.e, m.u, c);
    out += t * w.f.pow(dot(n0, r_of(fan, m.e)));
  }
  return out;
}

}  // namespace

RingAutomorphism wall_crossing(const Fan& fan, const Wall& w, const IntVec2& crossing_dir) {
  return crossing_from_normal(fan, w, crossing_normal(w, crossing_dir));
}

RingAutomorphism wall_crossing(const Fan& fan, const Wall& w, int crossing_sign) {
  IntVec2 n = primitive(rot90(w.dir)).p;
  if (n.x < 0 || (n.x == 0 && n.y < 0)) n = -n;
  return crossing_from_normal(fan, w, crossing_sign >= 0 ? n : -n);
}

RingElement cross(const Fan& fan, const Wall& w, const IntVec2& crossing_dir, const RingElement& x) {
  return cross_with_normal(fan, w, crossing_normal(w, crossing_dir), x);
}

// ---- paths ----

bool on_support(const Wall& w, const RatVec2& p) {
  RatVec2 rel = p - w.base;
  RatVec2 o(w.dir);
  if (sgn(wedge(o, rel)) != 0) return false;
  return w.carrier == Wall::Carrier::Line || sgn(dot(o, rel)) >= 0;
}

std::vector<Crossing> path_crossings(const ScatteringDiagram& d, const std::vector<RatVec2>& path) {
  if (path.size() < 2) return {};
  for (const Wall& w : d.walls) {
    if (on_support(w, path.front()) || on_support(w, path.back()))
      throw NonTransversePath("path endpoint lies on a wall");
  }
  std::vector<Crossing> out;
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const RatVec2 &p = path[s], &q = path[s + 1];
    RatVec2 dv = q - p;
    for (std::size_t wi = 0; wi < d.walls.size(); ++wi) {
      const Wall& w = d.walls[wi];
      RatVec2 o(w.dir);
      RatVec2 rel = w.base - p;
      Rat den = wedge(dv, o);
      if (sgn(den) == 0) {
        if (sgn(wedge(rel, o)) != 0) continue;
        // collinear: any common point means the path runs along the wall
        if (on_support(w, p) || on_support(w, q)) throw NonTransversePath("path runs along a wall");
        Rat a = dot(o, p - w.base), b = dot(o, q - w.base);
        if (w.carrier == Wall::Carrier::Line || sgn(a) >= 0 || sgn(b) >= 0)
          throw NonTransversePath("path runs along a wall");
        continue;
      }
      Rat t = wedge(rel, o) / den;
      Rat sp = wedge(rel, dv) / den;
      if (sgn(t) < 0 || t > 1) continue;
      if (w.carrier == Wall::Carrier::Ray && sgn(sp) < 0) continue;
      if (w.carrier == Wall::Carrier::Ray && sgn(sp) == 0) throw NonTransversePath("path passes through a wall base");
      if (sgn(t) == 0 || t == 1) throw NonTransversePath("path corner lies on a wall");
      out.push_back({wi, s, t, p + t * dv});
    }
  }
  std::sort(out.begin(), out.end(), [](const Crossing& a, const Crossing& b) {
    if (a.segment != b.segment) return a.segment < b.segment;
    if (a.t != b.t) return a.t < b.t;
    return a.wall < b.wall;
  });
  for (std::size_t i = 0; i + 1 < out.size(); ++i)
    if (out[i].segment == out[i + 1].segment && out[i].t == out[i + 1].t &&
        wedge(d.walls[out[i].wall].dir, d.walls[out[i + 1].wall].dir) != 0)
      throw NonTransversePath("path passes through a singular point");
  return out;
}

RingAutomorphism path_automorphism(const Fan& fan, const ScatteringDiagram& d, const std::vector<RatVec2>& path) {
  RingAutomorphism acc = RingAutomorphism::identity(fan.size());
  for (const Crossing& c : path_crossings(d, path)) {
    const Wall& w = d.walls[c.wall];
    RatVec2 dv = path[c.segment + 1] - path[c.segment];
    RingAutomorphism step = crossing_from_normal(fan, w, crossing_normal(w, dv));
    acc = step.after(acc);
  }
  return acc;
}

RingElement transport_element(const Fan& fan, const ScatteringDiagram& d, const std::vector<RatVec2>& path,
                              const RingElement& x) {
  RingElement cur = x;
  for (const Crossing& c : path_crossings(d, path)) {
    const Wall& w = d.walls[c.wall];
    RatVec2 dv = path[c.segment + 1] - path[c.segment];
    cur = cross_with_normal(fan, w, crossing_normal(w, dv), cur);
  }
  return cur;
}

// ---- diagram ----

ScatteringDiagram diagram_from_trees(const Fan& fan, const std::vector<RatVec2>& points,
                                     const std::vector<TreeRecord>& trees) {
  ScatteringDiagram d;
  d.marked_points = points;
  d.nrays = fan.size();
  for (const TreeRecord& t : trees) {
    Wall w;
    w.base = t.piece->base;
    w.m0 = t.ends;
    w.dir = t.piece->dir;
    if (r_of(fan, w.m0) != -w.dir) throw InvariantError("tree out direction is not -r(Delta)");
    Rat c(t.mult * t.out_weight);
    w.f = RingElement::constant(fan.size(), 1) + RingElement::monomial(t.ends, t.mask, c);
    w.provenance = encode(*t.piece);
    w.scattered = t.piece->kind == Piece::Kind::Glue;
    d.walls.push_back(std::move(w));
  }
  return d;
}

ScatteringDiagram build_diagram(const Fan& fan, const std::vector<RatVec2>& points, unsigned jobs) {
  return diagram_from_trees(fan, points, enumerate_maslov0_trees(fan, points, jobs));
}

std::vector<RatVec2> singular_points(const ScatteringDiagram& d) {
  std::set<RatVec2> s;
  for (const Wall& w : d.walls) {
    if (w.carrier == Wall::Carrier::Ray) s.insert(w.base);
  }
  for (std::size_t i = 0; i < d.walls.size(); ++i)
    for (std::size_t j = i + 1; j < d.walls.size(); ++j) {
      const Wall &a = d.walls[i], &b = d.walls[j];
      std::int64_t w = wedge(a.dir, b.dir);
      if (w == 0) continue;
      RatVec2 rel = b.base - a.base;
      Rat sa = wedge(rel, RatVec2(b.dir)) / Rat(static_cast<long>(w));
      RatVec2 p = a.base + sa * RatVec2(a.dir);
      if (on_support(a, p) && on_support(b, p)) s.insert(p);
    }
  return {s.begin(), s.end()};
}

namespace {

Rat dist2_to_support(const Wall& w, const RatVec2& p) {
  RatVec2 o(w.dir);
  RatVec2 rel = p - w.base;
  Rat s = dot(rel, o) / dot(o, o);
  if (w.carrier == Wall::Carrier::Ray && sgn(s) < 0) s = 0;
  RatVec2 foot = w.base + s * o;
  RatVec2 dd = p - foot;
  return dot(dd, dd);
}

}  // namespace

std::vector<RatVec2> small_loop(const ScatteringDiagram& d, const RatVec2& p) {
  static const std::vector<IntVec2> shapes = {{7, 3}, {5, 2}, {11, 4}, {13, 5}, {17, 6}};
  std::optional<Rat> min_d2;
  std::vector<const Wall*> through;
  for (const Wall& w : d.walls) {
    if (on_support(w, p)) {
      through.push_back(&w);
      continue;
    }
    Rat d2 = dist2_to_support(w, p);
    if (!min_d2 || d2 < *min_d2) min_d2 = d2;
  }
  for (const IntVec2& v : shapes) {
    std::vector<IntVec2> corners = {v, rot90(v), -v, -rot90(v)};
    bool ok = true;
    for (const Wall* w : through)
      for (const IntVec2& c : corners)
        if (wedge(c, w->dir) == 0) ok = false;
    if (!ok) continue;
    Rat r = 1;
    Rat n2(static_cast<long>(dot(v, v)));
    if (min_d2)
      while (!(n2 * r * r < *min_d2)) r /= 2;
    std::vector<RatVec2> loop;
    for (const IntVec2& c : corners) loop.push_back(p + r * RatVec2(c));
    loop.push_back(loop.front());
    return loop;
  }
  throw NonTransversePath("no admissible loop shape around the point");
}

bool ConsistencyReport::consistent() const {
  for (const LoopResult& l : loops)
    if (!l.marked && !l.identity) return false;
  return true;
}

ConsistencyReport check_consistency(const Fan& fan, const ScatteringDiagram& d, bool include_marked) {
  ConsistencyReport rep;
  for (const RatVec2& p : singular_points(d)) {
    bool marked = std::find(d.marked_points.begin(), d.marked_points.end(), p) != d.marked_points.end();
    if (marked && !include_marked) continue;
    LoopResult lr;
    lr.point = p;
    lr.marked = marked;
    lr.loop = small_loop(d, p);
    lr.automorphism = path_automorphism(fan, d, lr.loop);
    lr.identity = lr.automorphism.is_identity();
    rep.loops.push_back(std::move(lr));
  }
  return rep;
}

}  // namespace tropenum
