#include "tropenum/fan.hpp"

#include <algorithm>
#include <sstream>

namespace tropenum {

namespace {

int half(const IntVec2& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; }

}  // namespace

bool angle_less(const IntVec2& a, const IntVec2& b) {
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return wedge(a, b) > 0;
}

std::optional<std::size_t> Fan::ray_index(const IntVec2& v) const {
  if (v.is_zero()) return std::nullopt;
  IntVec2 p = primitive(v).p;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (rays[i] == p) return i;
  return std::nullopt;
}

Fan::Location Fan::locate(const RatVec2& v) const {
  if (sgn(v.x) == 0 && sgn(v.y) == 0) throw DomainError("locate: zero vector");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    RatVec2 r(rays[i]);
    if (sgn(wedge(r, v)) == 0 && sgn(dot(r, v)) > 0) return {true, i};
  }
  for (std::size_t c = 0; c < cones2d.size(); ++c) {
    RatVec2 a(rays[cones2d[c].first]), b(rays[cones2d[c].second]);
    if (sgn(wedge(a, v)) > 0 && sgn(wedge(v, b)) > 0) return {false, c};
  }
  throw InvariantError("locate: direction not covered by the fan");
}

Fan make_fan(const std::vector<IntVec2>& input) {
  std::vector<IntVec2> rays;
  rays.reserve(input.size());
  for (const IntVec2& r : input) {
    if (r.is_zero()) throw DomainError("degenerate fan: zero ray");
    rays.push_back(primitive(r).p);
  }
  std::sort(rays.begin(), rays.end(), angle_less);
  for (std::size_t i = 0; i + 1 < rays.size(); ++i)
    if (rays[i] == rays[i + 1]) throw DomainError("degenerate fan: duplicate ray");
  const std::size_t n = rays.size();
  if (n < 3) throw DomainError("incomplete fan");
  Fan f;
  f.rays = rays;
  f.smooth = true;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1) % n;
    std::int64_t w = wedge(rays[i], rays[j]);
    if (w <= 0) throw DomainError("incomplete fan");
    if (w != 1) f.smooth = false;
    f.cones2d.emplace_back(i, j);
  }
  return f;
}

Fan make_fan(const std::vector<IntVec2>& rays,
             const std::vector<std::pair<std::size_t, std::size_t>>& cones) {
  Fan f = make_fan(rays);
  if (cones.size() != f.cones2d.size()) throw DomainError("incomplete fan");
  std::vector<std::pair<IntVec2, IntVec2>> want;
  for (auto [i, j] : f.cones2d) want.emplace_back(f.rays[i], f.rays[j]);
  for (auto [i, j] : cones) {
    if (i >= rays.size() || j >= rays.size()) throw DomainError("cone refers to a missing ray");
    IntVec2 a = primitive(rays[i]).p, b = primitive(rays[j]).p;
    if (wedge(a, b) < 0) std::swap(a, b);
    auto it = std::find(want.begin(), want.end(), std::make_pair(a, b));
    if (it == want.end()) throw DomainError("incomplete fan");
    want.erase(it);
  }
  return f;
}

Fan fan_p2() {
  Fan f = make_fan({{1, 0}, {0, 1}, {-1, -1}});
  f.name = "p2";
  return f;
}

Fan fan_p1xp1() {
  Fan f = make_fan({{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  f.name = "p1xp1";
  return f;
}

Fan fan_dp6() {
  Fan f = make_fan({{1, 0}, {0, 1}, {-1, -1}, {1, 1}, {-1, 0}, {0, -1}});
  f.name = "dp6";
  return f;
}

Fan builtin_fan(const std::string& name) {
  if (name == "p2") return fan_p2();
  if (name == "p1xp1") return fan_p1xp1();
  if (name == "dp6") return fan_dp6();
  throw DomainError("unknown builtin fan '" + name + "'");
}

IntVec2 degree_image(const Fan& fan, const std::vector<std::int64_t>& d) {
  IntVec2 s;
  for (std::size_t i = 0; i < d.size(); ++i) s += d[i] * fan.rays[i];
  return s;
}

Degree make_degree(const Fan& fan, std::vector<std::int64_t> d) {
  if (d.size() != fan.size()) throw DomainError("degree has wrong number of entries");
  for (auto x : d)
    if (x < 0) throw DomainError("degree entries must be nonnegative");
  if (!degree_image(fan, d).is_zero()) throw DomainError("unbalanced degree");
  return Degree{std::move(d)};
}

std::int64_t degree_total(const Degree& deg) {
  std::int64_t s = 0;
  for (auto x : deg.d) s = checked_add(s, x);
  return s;
}

Degree parse_degree(const Fan& fan, const std::string& spec) {
  if (spec == "anticanonical") return make_degree(fan, std::vector<std::int64_t>(fan.size(), 1));
  std::vector<std::int64_t> d;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw ParseError("");
      d.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("bad degree '" + spec + "'");
    }
  }
  if (d.size() == 1 && fan.size() != 1) {
    // scalar multiple of the anticanonical class
    return make_degree(fan, std::vector<std::int64_t>(fan.size(), d[0]));
  }
  return make_degree(fan, std::move(d));
}

std::vector<IntVec2> newton_polygon(const Fan& fan, const Degree& deg) {
  if (deg.d.size() != fan.size() || !degree_image(fan, deg.d).is_zero())
    throw DomainError("unbalanced degree");
  std::vector<IntVec2> verts;
  IntVec2 cur;
  for (std::size_t i = 0; i < fan.size(); ++i) {
    if (deg.d[i] == 0) continue;
    verts.push_back(cur);
    cur += deg.d[i] * rot90(fan.rays[i]);
  }
  if (!cur.is_zero()) throw InvariantError("newton polygon does not close");
  if (verts.empty()) return {IntVec2{}};
  auto lo = std::min_element(verts.begin(), verts.end());
  IntVec2 shift = *lo;
  std::rotate(verts.begin(), lo, verts.end());
  for (auto& v : verts) v -= shift;
  return verts;
}

}  // namespace tropenum
