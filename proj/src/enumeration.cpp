#include "tropenum/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace tropenum {

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned nt = std::min<std::size_t>(jobs, n);
  for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---- sampling ----

namespace {

std::vector<long> primes_in(long lo, long hi) {
  std::vector<bool> sieve(hi + 1, true);
  std::vector<long> out;
  for (long i = 2; i <= hi; ++i) {
    if (!sieve[i]) continue;
    if (i >= lo) out.push_back(i);
    for (long j = i * i; j <= hi; j += i) sieve[j] = false;
  }
  return out;
}

// No two points on a line of small rational slope.
bool sample_ok(const std::vector<RatVec2>& pts) {
  constexpr std::int64_t B = 12;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      RatVec2 d = pts[j] - pts[i];
      if (sgn(d.x) == 0 || sgn(d.y) == 0) return false;
      IntVec2 p = primitive_direction(d);
      if (std::abs(p.x) <= B && std::abs(p.y) <= B) return false;
    }
  return true;
}

}  // namespace

std::vector<RatVec2> sample_generic_points(std::size_t k, std::uint64_t seed, const BBox& bbox, int attempt) {
  if (bbox.xmin >= bbox.xmax || bbox.ymin >= bbox.ymax) throw DomainError("empty bounding box");
  static const std::vector<long> primes = primes_in(1000, 20000);
  if (2 * k > primes.size()) throw DomainError("too many points requested");
  std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                   static_cast<std::uint32_t>(attempt), 0x7472u};
  std::mt19937_64 rng(sq);
  for (int inner = 0;; ++inner) {
    std::vector<long> ps;
    std::set<long> used;
    while (ps.size() < 2 * k) {
      long p = primes[std::uniform_int_distribution<std::size_t>(0, primes.size() - 1)(rng)];
      if (used.insert(p).second) ps.push_back(p);
    }
    std::vector<RatVec2> pts;
    for (std::size_t i = 0; i < k; ++i) {
      long qx = ps[2 * i], qy = ps[2 * i + 1];
      // numerators strictly inside the box, never divisible by the denominator
      auto draw = [&](std::int64_t lo, std::int64_t hi, long q) {
        for (;;) {
          std::int64_t num = std::uniform_int_distribution<std::int64_t>(lo * q + 1, hi * q - 1)(rng);
          if (num % q != 0) return Rat(num, q);
        }
      };
      Rat x = draw(bbox.xmin, bbox.xmax, qx);
      Rat y = draw(bbox.ymin, bbox.ymax, qy);
      pts.emplace_back(x, y);
    }
    if (sample_ok(pts)) return pts;
    if (inner > 1000) throw GenericityError("could not sample points off small-slope lines");
  }
}

int with_generic_points(std::size_t k, std::uint64_t seed, const BBox& bbox,
                        const std::function<void(const std::vector<RatVec2>&)>& fn) {
  std::string last;
  for (int attempt = 0; attempt < kGenericityRetries; ++attempt) {
    std::vector<RatVec2> pts = sample_generic_points(k, seed, bbox, attempt);
    try {
      fn(pts);
      return attempt + 1;
    } catch (const GenericityError& e) {
      last = e.what();
    }
  }
  throw GenericityError("genericity failure after " + std::to_string(kGenericityRetries) +
                        " resamples (seed " + std::to_string(seed) + "): " + last);
}

// ---- enumerator ----

namespace {

bool fits(const std::vector<std::int64_t>& ends, const std::vector<std::int64_t>& budget) {
  for (std::size_t i = 0; i < ends.size(); ++i)
    if (ends[i] > budget[i]) return false;
  return true;
}

std::vector<std::int64_t> plus(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

std::vector<std::int64_t> minus(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Int abs_wedge(const IntVec2& a, const IntVec2& b) { return Int(static_cast<long>(std::abs(wedge(a, b)))); }

}  // namespace

Enumerator::Enumerator(const Fan& fan, std::vector<RatVec2> points, std::vector<std::int64_t> budget,
                       unsigned jobs)
    : fan_(fan), pts_(std::move(points)), budget_(std::move(budget)), jobs_(std::max(1u, jobs)) {
  if (budget_.size() != fan_.size()) throw DomainError("budget size differs from the number of rays");
  if (pts_.size() > 24) throw DomainError("too many marked points");
  const std::size_t nm = std::size_t{1} << pts_.size();
  trees_.assign(nm, {});
  trees_ready_.assign(nm, false);
  at_mark_.assign(pts_.size(), std::vector<std::vector<PiecePtr>>(nm));
  at_mark_ready_.assign(pts_.size(), std::vector<bool>(nm, false));
}

const std::vector<PiecePtr>& Enumerator::trees(std::uint32_t mask) const {
  if (!trees_ready_.at(mask)) throw InvariantError("tree table not prepared for mask");
  return trees_[mask];
}

const std::vector<PiecePtr>& Enumerator::disks_at_mark(int j, std::uint32_t mask) const {
  if (!at_mark_ready_.at(j).at(mask)) throw InvariantError("disk table not prepared for mask");
  return at_mark_[j][mask];
}

void Enumerator::prepare(std::uint32_t universe) {
  const int k = static_cast<int>(pts_.size());
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = universe;; m = (m - 1) & universe) {
    masks.push_back(m);
    if (m == 0) break;
  }
  for (int level = 0; level < k; ++level) {
    // disks at P_j with |mask| = level, then trees with |mask| = level + 1
    std::vector<std::pair<int, std::uint32_t>> dtasks;
    for (std::uint32_t m : masks)
      if (std::popcount(m) == level)
        for (int j = 0; j < k; ++j)
          if ((universe >> j & 1) && !(m >> j & 1) && !at_mark_ready_[j][m]) dtasks.emplace_back(j, m);
    std::sort(dtasks.begin(), dtasks.end());
    parallel_for(dtasks.size(), jobs_, [&](std::size_t i) {
      auto [j, m] = dtasks[i];
      at_mark_[j][m] = disks_any(pts_[j], m, budget_);
    });
    for (auto [j, m] : dtasks) at_mark_ready_[j][m] = true;

    std::vector<std::uint32_t> ttasks;
    for (std::uint32_t m : masks)
      if (std::popcount(m) == level + 1 && !trees_ready_[m]) ttasks.push_back(m);
    std::sort(ttasks.begin(), ttasks.end());
    parallel_for(ttasks.size(), jobs_, [&](std::size_t i) { trees_[ttasks[i]] = compute_trees(ttasks[i]); });
    for (auto m : ttasks) trees_ready_[m] = true;
  }
  trees_ready_[0] = true;
}

std::vector<IntVec2> Enumerator::candidate_dirs(std::size_t nends, const std::vector<std::int64_t>& budget) const {
  std::set<IntVec2> out;
  const std::size_t n = fan_.size();
  std::vector<std::int64_t> cnt(n, 0);
  std::function<void(std::size_t, std::size_t, IntVec2)> rec = [&](std::size_t i, std::size_t left, IntVec2 s) {
    if (i == n) {
      if (left == 0 && !s.is_zero()) out.insert(s);
      return;
    }
    std::int64_t cap = std::min<std::int64_t>(budget[i], static_cast<std::int64_t>(left));
    for (std::int64_t c = 0; c <= cap; ++c) rec(i + 1, left - c, s + c * fan_.rays[i]);
  };
  rec(0, nends, IntVec2{});
  return {out.begin(), out.end()};
}

std::vector<PiecePtr> Enumerator::disks_any(const RatVec2& q, std::uint32_t mask,
                                            const std::vector<std::int64_t>& budget) const {
  std::vector<PiecePtr> out;
  for (const IntVec2& a : candidate_dirs(std::popcount(mask) + 1, budget)) {
    auto part = disks(q, mask, a, budget);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<PiecePtr> Enumerator::disks(const RatVec2& q, std::uint32_t mask, const IntVec2& a,
                                        const std::vector<std::int64_t>& budget) const {
  std::vector<PiecePtr> out;
  if (mask == 0) {
    auto r = fan_.ray_index(a);
    if (r && fan_.rays[*r] == a && budget[*r] >= 1) {
      auto p = std::make_shared<Piece>();
      p->kind = Piece::Kind::Ray;
      p->base = q;
      p->dir = a;
      p->ends.assign(fan_.size(), 0);
      p->ends[*r] = 1;
      p->ray = static_cast<int>(*r);
      out.push_back(std::move(p));
    }
    return out;
  }
  const RatVec2 ar(a);
  for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
    const std::uint32_t rest = mask & ~sub;
    for (const PiecePtr& t : trees(sub)) {
      if (!fits(t->ends, budget)) continue;
      const IntVec2& o = t->dir;
      const RatVec2 orr(o);
      RatVec2 rel = t->base - q;
      Rat c = wedge(rel, orr);
      if (sgn(c) == 0) throw GenericityError("disk boundary point on the line of a tree's outgoing ray");
      std::int64_t w = wedge(a, o);
      if (w == 0) continue;
      Rat wr(static_cast<long>(w));
      Rat tpar = c / wr;
      Rat spar = wedge(rel, ar) / wr;
      if (sgn(tpar) <= 0 || sgn(spar) < 0) continue;
      if (sgn(spar) == 0) throw GenericityError("disk stem passes through a tree vertex");
      RatVec2 v = q + tpar * ar;
      IntVec2 b = a + o;
      auto rem = minus(budget, t->ends);
      for (const PiecePtr& d : disks(v, rest, b, rem)) {
        auto p = std::make_shared<Piece>();
        p->kind = Piece::Kind::Split;
        p->base = q;
        p->dir = a;
        p->vertex = v;
        p->ends = plus(t->ends, d->ends);
        p->mask = mask;
        p->mult = t->mult * d->mult * abs_wedge(a, o);
        p->a = t;
        p->b = d;
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

std::vector<PiecePtr> Enumerator::compute_trees(std::uint32_t mask) const {
  std::vector<PiecePtr> out;
  for (int j = 0; j < static_cast<int>(pts_.size()); ++j) {
    if (!(mask >> j & 1)) continue;
    for (const PiecePtr& d : disks_at_mark(j, mask & ~(1u << j))) {
      auto p = std::make_shared<Piece>();
      p->kind = Piece::Kind::FromMark;
      p->base = pts_[j];
      p->dir = -d->dir;
      p->ends = d->ends;
      p->mask = mask;
      p->mult = d->mult;
      p->mark = j;
      p->a = d;
      out.push_back(std::move(p));
    }
  }
  if (std::popcount(mask) < 2) return out;
  const std::uint32_t low = mask & (~mask + 1);
  for (std::uint32_t sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask) {
    if (!(sub & low)) continue;
    const std::uint32_t rest = mask & ~sub;
    for (const PiecePtr& t1 : trees(sub))
      for (const PiecePtr& t2 : trees(rest)) {
        auto ends = plus(t1->ends, t2->ends);
        if (!fits(ends, budget_)) continue;
        RatVec2 rel = t2->base - t1->base;
        const RatVec2 o1(t1->dir), o2(t2->dir);
        std::int64_t w = wedge(t1->dir, t2->dir);
        if (w == 0) {
          if (sgn(wedge(rel, o1)) == 0) throw GenericityError("two tree rays on a common line");
          continue;
        }
        Rat wr(static_cast<long>(w));
        Rat s1 = wedge(rel, o2) / wr;
        Rat s2 = wedge(rel, o1) / wr;
        if (sgn(s1) < 0 || sgn(s2) < 0) continue;
        if (sgn(s1) == 0 || sgn(s2) == 0) throw GenericityError("tree ray passes through a tree vertex");
        auto p = std::make_shared<Piece>();
        p->kind = Piece::Kind::Glue;
        p->base = t1->base + s1 * o1;
        p->dir = t1->dir + t2->dir;
        p->ends = std::move(ends);
        p->mask = mask;
        p->mult = t1->mult * t2->mult * abs_wedge(t1->dir, t2->dir);
        p->a = t1;
        p->b = t2;
        out.push_back(std::move(p));
      }
  }
  return out;
}

// ---- encoding and materialization ----

std::string encode(const Piece& p) {
  switch (p.kind) {
    case Piece::Kind::Ray:
      return "r" + std::to_string(p.ray);
    case Piece::Kind::Split:
      return "S[" + encode(*p.a) + "|" + encode(*p.b) + "]";
    case Piece::Kind::FromMark:
      return "M" + std::to_string(p.mark + 1) + "[" + encode(*p.a) + "]";
    case Piece::Kind::Glue:
      return "G[" + encode(*p.a) + "|" + encode(*p.b) + "]";
  }
  return {};
}

namespace {

void add_disk(ParamTropCurve& c, const Piece& d, std::size_t at);

// Adds tree t whose outgoing edge ends at vertex `at` (nullopt: unbounded out edge).
std::size_t add_tree(ParamTropCurve& c, const Piece& t, std::optional<std::size_t> at) {
  std::size_t root = c.add_vertex(t.base);
  std::size_t out_edge;
  if (at) {
    out_edge = c.add_segment(root, *at, primitive(t.dir).k);
  } else {
    out_edge = c.add_ray(root, t.dir);
  }
  if (t.kind == Piece::Kind::FromMark) {
    c.marks[t.mark + 1] = root;
    add_disk(c, *t.a, root);
  } else {
    add_tree(c, *t.a, root);
    add_tree(c, *t.b, root);
  }
  return out_edge;
}

void add_disk(ParamTropCurve& c, const Piece& d, std::size_t at) {
  if (d.kind == Piece::Kind::Ray) {
    c.add_ray(at, d.dir);
    return;
  }
  std::size_t v = c.add_vertex(d.vertex);
  c.add_segment(at, v, primitive(d.dir).k);
  add_tree(c, *d.a, v);
  add_disk(c, *d.b, v);
}

}  // namespace

TropicalDisk to_disk(const Piece& disk) {
  TropicalDisk out;
  out.out_vertex = out.curve.add_vertex(disk.base);
  add_disk(out.curve, disk, out.out_vertex);
  return out;
}

TropicalTree to_tree(const Piece& tree) {
  TropicalTree out;
  out.out_edge = add_tree(out.curve, tree, std::nullopt);
  return out;
}

// ---- curves ----

namespace {

bool on_edge(const ParamTropCurve& c, const CurveEdge& e, const RatVec2& p) {
  RatVec2 d(e.dir);
  RatVec2 rel = p - c.pos[e.u];
  if (sgn(wedge(d, rel)) != 0) return false;
  Rat t = dot(d, rel);
  if (sgn(t) < 0) return false;
  if (!e.v) return true;
  return t <= dot(d, c.pos[*e.v] - c.pos[e.u]);
}

bool edges_overlap(const ParamTropCurve& c, const CurveEdge& e, const CurveEdge& f) {
  if (wedge(e.dir, f.dir) != 0) return false;
  RatVec2 d(e.dir);
  if (sgn(wedge(d, c.pos[f.u] - c.pos[e.u])) != 0) return false;
  // handle the generic case with explicit intervals (possibly unbounded on either side)
  auto interval = [&](const CurveEdge& g, Rat& lo, bool& has_lo, Rat& hi, bool& has_hi) {
    Rat a = dot(d, c.pos[g.u] - c.pos[e.u]);
    if (g.v) {
      Rat b = dot(d, c.pos[*g.v] - c.pos[e.u]);
      lo = std::min(a, b), hi = std::max(a, b), has_lo = has_hi = true;
    } else if (dot(g.dir, e.dir) > 0) {
      lo = a, has_lo = true, has_hi = false;
    } else {
      hi = a, has_hi = true, has_lo = false;
    }
  };
  Rat l1, h1, l2, h2;
  bool hl1, hh1, hl2, hh2;
  interval(e, l1, hl1, h1, hh1);
  interval(f, l2, hl2, h2, hh2);
  // overlap of positive length iff max(lo) < min(hi)
  bool has_lo = hl1 || hl2, has_hi = hh1 || hh2;
  Rat lo = hl1 && hl2 ? std::max(l1, l2) : (hl1 ? l1 : l2);
  Rat hi = hh1 && hh2 ? std::min(h1, h2) : (hh1 ? h1 : h2);
  if (!has_lo || !has_hi) return true;
  return lo < hi;
}

// A posteriori genericity certificate for one enumerated curve.
void certify(const ParamTropCurve& c) {
  for (const auto& [label, v] : c.marks) {
    auto inc = c.incident(v);
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
      if (std::find(inc.begin(), inc.end(), i) != inc.end()) continue;
      if (on_edge(c, c.edges[i], c.pos[v])) throw GenericityError("marked point lies on a second edge");
    }
  }
  for (std::size_t i = 0; i < c.edges.size(); ++i)
    for (std::size_t j = i + 1; j < c.edges.size(); ++j)
      if (edges_overlap(c, c.edges[i], c.edges[j])) throw GenericityError("overlapping edges");
  std::vector<RatVec2> p = c.pos;
  std::sort(p.begin(), p.end());
  if (std::adjacent_find(p.begin(), p.end()) != p.end()) throw GenericityError("two vertices coincide");
}

bool lex_positive(const IntVec2& a) { return a.x > 0 || (a.x == 0 && a.y > 0); }

}  // namespace

std::vector<Int> CountReport::multiplicities() const {
  std::vector<Int> m;
  for (const auto& c : curves) m.push_back(c.mult);
  std::sort(m.begin(), m.end());
  return m;
}

CountReport enumerate_rational_curves(const Fan& fan, const Degree& deg, const std::vector<RatVec2>& points,
                                      unsigned jobs) {
  make_degree(fan, deg.d);
  const std::int64_t total = degree_total(deg);
  if (total < 2) throw DomainError("degree too small for rational curves through points");
  if (static_cast<std::int64_t>(points.size()) != total - 1)
    throw PreconditionError("need exactly |Delta| - 1 points");
  CountReport rep;
  rep.fan = fan;
  rep.degree = deg;
  rep.points = points;

  const int k = static_cast<int>(points.size());
  const std::uint32_t all = (k >= 32) ? ~0u : ((1u << k) - 1);
  const std::uint32_t others = all & ~1u;
  Enumerator en(fan, points, deg.d, jobs);
  en.prepare(others);

  std::vector<std::uint32_t> js;
  for (std::uint32_t m = others;; m = (m - 1) & others) {
    js.push_back(m);
    if (m == 0) break;
  }
  std::sort(js.begin(), js.end());
  std::vector<std::vector<CurveSolution>> found(js.size());
  parallel_for(js.size(), en.jobs(), [&](std::size_t idx) {
    const std::uint32_t J = js[idx], Jc = others & ~J;
    for (const PiecePtr& d1 : en.disks_any(points[0], J, deg.d)) {
      if (!lex_positive(d1->dir)) continue;
      auto rem = minus(deg.d, d1->ends);
      for (const PiecePtr& d2 : en.disks(points[0], Jc, -d1->dir, rem)) {
        if (plus(d1->ends, d2->ends) != deg.d) continue;
        CurveSolution s;
        std::size_t p1 = s.curve.add_vertex(points[0]);
        s.curve.marks[1] = p1;
        add_disk(s.curve, *d1, p1);
        add_disk(s.curve, *d2, p1);
        s.type = "C[" + encode(*d1) + "|" + encode(*d2) + "]";
        s.mult = d1->mult * d2->mult;
        found[idx].push_back(std::move(s));
      }
    }
  });

  for (auto& v : found)
    for (auto& s : v) rep.curves.push_back(std::move(s));
  std::sort(rep.curves.begin(), rep.curves.end(),
            [](const CurveSolution& a, const CurveSolution& b) { return a.type < b.type; });
  for (std::size_t i = 0; i + 1 < rep.curves.size(); ++i)
    if (rep.curves[i].type == rep.curves[i + 1].type)
      throw InvariantError("two solutions share a combinatorial type");

  for (auto& s : rep.curves) {
    certify(s.curve);
    validate(s.curve);
    if (!check_balancing(s.curve).empty()) throw InvariantError("enumerated curve is not balanced");
    if (degree(s.curve, fan) != deg) throw InvariantError("enumerated curve has the wrong degree");
    if (genus(s.curve) != 0) throw InvariantError("enumerated curve is not rational");
    for (int i = 0; i < k; ++i) {
      auto it = s.curve.marks.find(i + 1);
      if (it == s.curve.marks.end() || !(s.curve.pos[it->second] == points[i]))
        throw InvariantError("enumerated curve misses a marked point");
    }
    Int m = mikhalkin_multiplicity(s.curve);
    if (m != s.mult) throw InvariantError("recursive multiplicity disagrees with the vertex formula");
    s.welschinger = welschinger_multiplicity(s.curve);
    rep.n_trop += s.mult;
    rep.w_trop += s.welschinger;
  }
  return rep;
}

CountReport count_report(const Fan& fan, const Degree& deg, std::uint64_t seed, unsigned jobs, const BBox& bbox) {
  CountReport rep;
  std::size_t k = static_cast<std::size_t>(degree_total(deg) - 1);
  int attempts = with_generic_points(k, seed, bbox, [&](const std::vector<RatVec2>& pts) {
    rep = enumerate_rational_curves(fan, deg, pts, jobs);
  });
  rep.seed = seed;
  rep.attempts = attempts;
  return rep;
}

Int count_n_trop(const Fan& fan, const Degree& deg, std::uint64_t seed) { return count_report(fan, deg, seed).n_trop; }

Int count_w_trop(const Fan& fan, const Degree& deg, std::uint64_t seed) { return count_report(fan, deg, seed).w_trop; }

// ---- trees and disks for the scattering side ----

std::vector<TreeRecord> enumerate_maslov0_trees(const Fan& fan, const std::vector<RatVec2>& points, unsigned jobs) {
  const int k = static_cast<int>(points.size());
  std::vector<TreeRecord> out;
  if (k == 0) return out;
  const std::uint32_t all = (1u << k) - 1;
  Enumerator en(fan, points, std::vector<std::int64_t>(fan.size(), k), jobs);
  en.prepare(all);
  std::vector<std::pair<std::string, PiecePtr>> items;
  for (std::uint32_t m = 1; m <= all; ++m)
    for (const PiecePtr& t : en.trees(m)) items.emplace_back(encode(*t), t);
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [code, t] : items) {
    TreeRecord r;
    r.tree = to_tree(*t);
    r.piece = t;
    r.ends = t->ends;
    r.mask = t->mask;
    r.mult = t->mult;
    r.out_weight = primitive(t->dir).k;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DiskRecord> enumerate_maslov2_disks(const Fan& fan, const std::vector<RatVec2>& points,
                                                const RatVec2& q, unsigned jobs) {
  const int k = static_cast<int>(points.size());
  for (const RatVec2& p : points)
    if (p == q) throw GenericityError("non-generic Q: coincides with a marked point");
  const std::uint32_t all = k == 0 ? 0 : (1u << k) - 1;
  std::vector<std::int64_t> budget(fan.size(), k + 1);
  Enumerator en(fan, points, budget, jobs);
  en.prepare(all);
  std::vector<std::pair<std::string, PiecePtr>> items;
  for (std::uint32_t m = 0; m <= all; ++m)
    for (const PiecePtr& d : en.disks_any(q, m, budget)) items.emplace_back(encode(*d), d);
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<DiskRecord> out;
  for (auto& [code, d] : items) {
    DiskRecord r;
    r.disk = to_disk(*d);
    r.piece = d;
    r.ends = d->ends;
    r.mask = d->mask;
    r.mult = d->mult;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace tropenum
