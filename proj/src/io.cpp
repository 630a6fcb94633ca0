#include "tropenum/io.hpp"

#include <fstream>
#include <sstream>

namespace tropenum {

json to_json(const Rat& q) { return to_string(q); }

Rat rat_from_json(const json& j) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw ParseError("expected a rational as a \"p/q\" string");
}

json to_json(const RatVec2& p) { return json::array({to_json(p.x), to_json(p.y)}); }

RatVec2 point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("expected a point [x, y]");
  return {rat_from_json(j[0]), rat_from_json(j[1])};
}

json to_json(const IntVec2& v) { return json::array({v.x, v.y}); }

IntVec2 intvec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ParseError("expected an integer vector [x, y]");
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

json mask_to_json(std::uint32_t mask) {
  json a = json::array();
  for (int i = 0; i < 32; ++i)
    if (mask >> i & 1) a.push_back(i + 1);
  return a;
}

std::uint32_t mask_from_json(const json& j) {
  std::uint32_t m = 0;
  for (const auto& x : j) {
    int i = x.get<int>();
    if (i < 1 || i > 32) throw ParseError("marked point label out of range");
    m |= 1u << (i - 1);
  }
  return m;
}

namespace {

json int_json(const Int& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw ParseError("expected an integer");
}

// Loaders report every malformed input as ParseError.
template <class F>
auto parsing(F f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

void check_schema(const json& j, const std::string& name) {
  if (!j.is_object() || j.value("schema", "") != name) throw ParseError("expected schema '" + name + "'");
  if (j.value("version", 0) != kSchemaVersion) throw ParseError("unsupported schema version for '" + name + "'");
}

json header(const std::string& name) {
  json j;
  j["schema"] = name;
  j["version"] = kSchemaVersion;
  return j;
}

json points_json(const std::vector<RatVec2>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

std::vector<RatVec2> points_from_json(const json& j) {
  std::vector<RatVec2> pts;
  for (const auto& p : j) pts.push_back(point_from_json(p));
  return pts;
}

json exps_json(const std::vector<std::int64_t>& e) { return json(e); }

}  // namespace

json to_json(const Fan& fan) {
  json j;
  if (!fan.name.empty()) j["name"] = fan.name;
  json rays = json::array();
  for (const auto& r : fan.rays) rays.push_back(to_json(r));
  j["rays"] = rays;
  return j;
}

Fan fan_from_json(const json& j) {
  return parsing([&] {
    if (!j.is_object() || !j.contains("rays")) throw ParseError("fan JSON needs \"rays\"");
    std::vector<IntVec2> rays;
    for (const auto& r : j["rays"]) rays.push_back(intvec_from_json(r));
    Fan f = make_fan(rays);
    if (j.contains("name")) f.name = j["name"].get<std::string>();
    return f;
  });
}

json to_json(const Degree& d) { return json{{"d", d.d}}; }

Degree degree_from_json(const Fan& fan, const json& j) {
  return parsing([&] {
    if (!j.is_object() || !j.contains("d")) throw ParseError("degree JSON needs \"d\"");
    return make_degree(fan, j["d"].get<std::vector<std::int64_t>>());
  });
}

json to_json(const ParamTropCurve& c) {
  json j;
  j["vertices"] = points_json(c.pos);
  json edges = json::array();
  for (const CurveEdge& e : c.edges) {
    json ej;
    ej["u"] = e.u;
    ej["v"] = e.v ? json(*e.v) : json(nullptr);
    ej["dir"] = to_json(e.dir);
    ej["weight"] = e.weight;
    edges.push_back(ej);
  }
  j["edges"] = edges;
  json marks = json::array();
  for (const auto& [label, v] : c.marks) marks.push_back(json::array({label, v}));
  j["marks"] = marks;
  return j;
}

ParamTropCurve curve_from_json(const json& j) {
  return parsing([&] {
    ParamTropCurve c;
    c.pos = points_from_json(j.at("vertices"));
    for (const auto& ej : j.at("edges")) {
      CurveEdge e;
      e.u = ej.at("u").get<std::size_t>();
      if (!ej.at("v").is_null()) e.v = ej.at("v").get<std::size_t>();
      e.dir = intvec_from_json(ej.at("dir"));
      e.weight = ej.at("weight").get<std::int64_t>();
      c.edges.push_back(e);
    }
    for (const auto& m : j.at("marks")) c.marks[m.at(0).get<int>()] = m.at(1).get<std::size_t>();
    validate(c);
    if (!check_balancing(c).empty()) throw ParseError("curve is not balanced");
    return c;
  });
}

namespace {

ParamTropCurve reflect(ParamTropCurve c) {
  for (auto& p : c.pos) p = RatVec2{-p.x, -p.y};
  for (auto& e : c.edges) e.dir = -e.dir;
  return c;
}

std::vector<RatVec2> reflect(std::vector<RatVec2> pts) {
  for (auto& p : pts) p = RatVec2{-p.x, -p.y};
  return pts;
}

}  // namespace

json to_json(const CountReport& r, Convention conv) {
  const bool flip = conv == Convention::Min;
  json j = header("tropenum.count");
  j["convention"] = flip ? "min" : "max";
  j["fan"] = to_json(r.fan);
  j["degree"] = to_json(r.degree);
  j["seed"] = r.seed;
  j["attempts"] = r.attempts;
  j["points"] = points_json(flip ? reflect(r.points) : r.points);
  j["n_trop"] = int_json(r.n_trop);
  j["w_trop"] = int_json(r.w_trop);
  json ms = json::array();
  for (const Int& m : r.multiplicities()) ms.push_back(int_json(m));
  j["multiplicities"] = ms;
  json curves = json::array();
  for (const CurveSolution& s : r.curves) {
    json cj;
    cj["type"] = s.type;
    cj["mult"] = int_json(s.mult);
    cj["welschinger"] = s.welschinger;
    cj["curve"] = to_json(flip ? reflect(s.curve) : s.curve);
    curves.push_back(cj);
  }
  j["curves"] = curves;
  return j;
}

CountReport count_report_from_json(const json& j) {
  return parsing([&] {
    check_schema(j, "tropenum.count");
    CountReport r;
    r.fan = fan_from_json(j.at("fan"));
    r.degree = degree_from_json(r.fan, j.at("degree"));
    r.seed = j.at("seed").get<std::uint64_t>();
    r.attempts = j.at("attempts").get<int>();
    r.points = points_from_json(j.at("points"));
    r.n_trop = int_from_json(j.at("n_trop"));
    r.w_trop = int_from_json(j.at("w_trop"));
    std::string conv = j.value("convention", "max");
    if (conv != "min" && conv != "max") throw ParseError("convention must be min or max");
    const bool flip = conv == "min";
    if (flip) r.points = reflect(r.points);
    for (const auto& cj : j.at("curves")) {
      CurveSolution s;
      s.type = cj.at("type").get<std::string>();
      s.mult = int_from_json(cj.at("mult"));
      s.welschinger = cj.at("welschinger").get<std::int64_t>();
      s.curve = curve_from_json(cj.at("curve"));
      if (flip) s.curve = reflect(s.curve);
      r.curves.push_back(std::move(s));
    }
    return r;
  });
}

json trees_to_json(const Fan& fan, const std::vector<RatVec2>& points, const std::vector<TreeRecord>& trees) {
  json j = header("tropenum.trees");
  j["fan"] = to_json(fan);
  j["points"] = points_json(points);
  json a = json::array();
  for (const TreeRecord& t : trees) {
    json tj;
    tj["type"] = encode(*t.piece);
    tj["degree"] = exps_json(t.ends);
    tj["marks"] = mask_to_json(t.mask);
    tj["mult"] = int_json(t.mult);
    tj["out_weight"] = t.out_weight;
    tj["out_edge"] = t.tree.out_edge;
    tj["curve"] = to_json(t.tree.curve);
    a.push_back(tj);
  }
  j["trees"] = a;
  return j;
}

json disks_to_json(const Fan& fan, const std::vector<RatVec2>& points, const RatVec2& q,
                   const std::vector<DiskRecord>& disks) {
  json j = header("tropenum.disks");
  j["fan"] = to_json(fan);
  j["points"] = points_json(points);
  j["q"] = to_json(q);
  json a = json::array();
  for (const DiskRecord& d : disks) {
    json dj;
    dj["type"] = encode(*d.piece);
    dj["degree"] = exps_json(d.ends);
    dj["marks"] = mask_to_json(d.mask);
    dj["mult"] = int_json(d.mult);
    dj["monomial"] = monomial_string({d.ends, d.mask});
    dj["out_vertex"] = d.disk.out_vertex;
    dj["curve"] = to_json(d.disk.curve);
    a.push_back(dj);
  }
  j["disks"] = a;
  return j;
}

json to_json(const Monomial& m) { return json{{"e", exps_json(m.e)}, {"u", mask_to_json(m.u)}}; }

Monomial monomial_from_json(const json& j) {
  return parsing([&] {
    return Monomial{j.at("e").get<std::vector<std::int64_t>>(), mask_from_json(j.at("u"))};
  });
}

json to_json(const RingElement& x) {
  json j;
  j["y0"] = to_json(x.y0());
  json terms = json::array();
  for (const auto& [m, c] : x.terms()) {
    json t = to_json(m);
    t["c"] = to_json(c);
    terms.push_back(t);
  }
  j["terms"] = terms;
  j["text"] = x.str();
  return j;
}

RingElement ring_from_json(std::size_t nrays, const json& j) {
  return parsing([&] {
    RingElement x(nrays);
    x.set_y0(rat_from_json(j.at("y0")));
    for (const auto& t : j.at("terms")) x.add_term(monomial_from_json(t), rat_from_json(t.at("c")));
    return x;
  });
}

json to_json(const ScatteringDiagram& d, const Fan& fan) {
  json j = header("tropenum.diagram");
  j["fan"] = to_json(fan);
  j["marked_points"] = points_json(d.marked_points);
  json walls = json::array();
  for (const Wall& w : d.walls) {
    json wj;
    wj["base"] = to_json(w.base);
    wj["carrier"] = w.carrier == Wall::Carrier::Ray ? "ray" : "line";
    wj["m0"] = exps_json(w.m0);
    wj["dir"] = to_json(w.dir);
    wj["f"] = to_json(w.f);
    wj["provenance"] = w.provenance;
    wj["scattered"] = w.scattered;
    walls.push_back(wj);
  }
  j["walls"] = walls;
  return j;
}

ScatteringDiagram diagram_from_json(const json& j, Fan* fan_out) {
  return parsing([&] {
    check_schema(j, "tropenum.diagram");
    Fan fan = fan_from_json(j.at("fan"));
    ScatteringDiagram d;
    d.nrays = fan.size();
    d.marked_points = points_from_json(j.at("marked_points"));
    for (const auto& wj : j.at("walls")) {
      Wall w;
      w.base = point_from_json(wj.at("base"));
      std::string carrier = wj.at("carrier").get<std::string>();
      if (carrier != "ray" && carrier != "line") throw ParseError("wall carrier must be ray or line");
      w.carrier = carrier == "ray" ? Wall::Carrier::Ray : Wall::Carrier::Line;
      w.m0 = wj.at("m0").get<std::vector<std::int64_t>>();
      w.dir = intvec_from_json(wj.at("dir"));
      if (r_of(fan, w.m0) != -w.dir) throw ParseError("wall direction does not match -r(m0)");
      w.f = ring_from_json(fan.size(), wj.at("f"));
      w.provenance = wj.value("provenance", "");
      w.scattered = wj.value("scattered", false);
      d.walls.push_back(std::move(w));
    }
    if (fan_out) *fan_out = fan;
    return d;
  });
}

json to_json(const ConsistencyReport& r) {
  json j = header("tropenum.consistency");
  j["consistent"] = r.consistent();
  json loops = json::array();
  for (const LoopResult& l : r.loops) {
    json lj;
    lj["point"] = to_json(l.point);
    lj["marked"] = l.marked;
    lj["identity"] = l.identity;
    lj["loop"] = points_json(l.loop);
    if (!l.identity) {
      json imgs = json::array();
      for (const auto& im : l.automorphism.images) imgs.push_back(to_json(im));
      lj["images"] = imgs;
    }
    loops.push_back(lj);
  }
  j["loops"] = loops;
  return j;
}

json to_json(const Potential& p, const RatVec2& q, const Fan& fan) {
  json j = header("tropenum.potential");
  j["fan"] = to_json(fan);
  j["q"] = to_json(q);
  j["value"] = to_json(p.value);
  j["mod_u"] = p.value.mod_u().str();
  json lines = json::array();
  for (const BrokenLine& bl : p.lines) {
    json lj;
    lj["ray"] = bl.ray;
    lj["bends"] = bl.bends;
    json segs = json::array();
    for (const auto& s : bl.segments) {
      json sj;
      sj["start"] = s.start ? to_json(*s.start) : json(nullptr);
      sj["end"] = to_json(s.end);
      sj["mono"] = to_json(s.mono);
      sj["c"] = to_json(s.coeff);
      segs.push_back(sj);
    }
    lj["segments"] = segs;
    lj["monomial"] = monomial_string(bl.final_monomial());
    lines.push_back(lj);
  }
  j["lines"] = lines;
  return j;
}

Potential potential_from_json(const json& j) {
  return parsing([&] {
    check_schema(j, "tropenum.potential");
    Fan fan = fan_from_json(j.at("fan"));
    Potential p;
    p.value = ring_from_json(fan.size(), j.at("value"));
    for (const auto& lj : j.at("lines")) {
      BrokenLine bl;
      bl.ray = lj.at("ray").get<int>();
      bl.bends = lj.at("bends").get<std::vector<std::size_t>>();
      for (const auto& sj : lj.at("segments")) {
        BrokenLine::Segment s;
        if (!sj.at("start").is_null()) s.start = point_from_json(sj.at("start"));
        s.end = point_from_json(sj.at("end"));
        s.mono = monomial_from_json(sj.at("mono"));
        s.coeff = rat_from_json(sj.at("c"));
        bl.segments.push_back(s);
      }
      p.lines.push_back(std::move(bl));
    }
    return p;
  });
}

json to_json(const PhiSystem& s) {
  json j;
  j["rows"] = s.matrix.rows;
  j["cols"] = s.matrix.cols;
  json m = json::array();
  for (std::size_t i = 0; i < s.matrix.rows; ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < s.matrix.cols; ++c) row.push_back(int_json(s.matrix.at(i, c)));
    m.push_back(row);
  }
  j["matrix"] = m;
  return j;
}

json to_json(const PolyDecomp& d) {
  json j = header("tropenum.decomposition");
  j["vertices"] = points_json(d.vertices);
  json edges = json::array();
  for (const auto& e : d.edges) {
    json ej;
    ej["a"] = e.a;
    ej["b"] = e.b ? json(*e.b) : json(nullptr);
    ej["dir"] = to_json(e.dir);
    edges.push_back(ej);
  }
  j["edges"] = edges;
  json faces = json::array();
  for (const auto& f : d.faces) {
    json fj;
    fj["vertices"] = f.vertices;
    json rec = json::array();
    for (const auto& r : f.recession) rec.push_back(to_json(r));
    fj["recession"] = rec;
    faces.push_back(fj);
  }
  j["faces"] = faces;
  return j;
}

PolyDecomp decomp_from_json(const json& j) {
  return parsing([&] {
    check_schema(j, "tropenum.decomposition");
    PolyDecomp d;
    d.vertices = points_from_json(j.at("vertices"));
    for (const auto& ej : j.at("edges")) {
      PolyDecomp::Edge e;
      e.a = ej.at("a").get<std::size_t>();
      if (!ej.at("b").is_null()) e.b = ej.at("b").get<std::size_t>();
      e.dir = intvec_from_json(ej.at("dir"));
      d.edges.push_back(e);
    }
    for (const auto& fj : j.at("faces")) {
      PolyDecomp::Face f;
      f.vertices = fj.at("vertices").get<std::vector<std::size_t>>();
      for (const auto& r : fj.at("recession")) f.recession.push_back(intvec_from_json(r));
      d.faces.push_back(f);
    }
    return d;
  });
}

json to_json(const DecompReport& r) {
  json j;
  j["curves_in_skeleton"] = r.curves_in_skeleton;
  j["points_are_vertices"] = r.points_are_vertices;
  j["rational"] = r.rational;
  j["cells_have_vertices"] = r.cells_have_vertices;
  j["recession_in_fan"] = r.recession_in_fan;
  j["ok"] = r.ok();
  j["failures"] = r.failures;
  return j;
}

json to_json(const Fan3D& f) {
  json j = header("tropenum.fan3d");
  json cones = json::array();
  for (const auto& c : f.cones) {
    json gens = json::array();
    for (const auto& g : c.gens) gens.push_back(json::array({int_json(g[0]), int_json(g[1]), int_json(g[2])}));
    cones.push_back(gens);
  }
  j["cones"] = cones;
  return j;
}

Fan3D fan3d_from_json(const json& j) {
  return parsing([&] {
    check_schema(j, "tropenum.fan3d");
    Fan3D f;
    for (const auto& cj : j.at("cones")) {
      Fan3D::Cone c;
      for (const auto& g : cj) c.gens.push_back({int_from_json(g.at(0)), int_from_json(g.at(1)), int_from_json(g.at(2))});
      f.cones.push_back(c);
    }
    return f;
  });
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
}

Fan load_fan(const std::string& spec) {
  if (spec == "p2" || spec == "p1xp1" || spec == "dp6") return builtin_fan(spec);
  return fan_from_json(read_json_file(spec));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace tropenum
