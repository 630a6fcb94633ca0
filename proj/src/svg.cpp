#include "tropenum/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tropenum {

namespace {

struct Box {
  double x0 = -1, y0 = -1, x1 = 1, y1 = 1;
  bool empty = true;
  void add(double x, double y) {
    if (empty) {
      x0 = x1 = x;
      y0 = y1 = y;
      empty = false;
      return;
    }
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  void add(const RatVec2& p) { add(p.x.get_d(), p.y.get_d()); }
  void pad() {
    // square box centred on the content
    double side = std::max({x1 - x0, y1 - y0, 1.0}) * 1.5;
    double cx = (x0 + x1) / 2, cy = (y0 + y1) / 2;
    x0 = cx - side / 2;
    x1 = cx + side / 2;
    y0 = cy - side / 2;
    y1 = cy + side / 2;
  }
};

std::string fmt(double v) {
  if (std::fabs(v) < 5e-7) v = 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

class Canvas {
 public:
  explicit Canvas(Box b) : b_(b) {}

  // SVG y axis points down.
  std::string pt(double x, double y) const { return fmt(x) + "," + fmt(-y); }

  void line(double ax, double ay, double bx, double by, const std::string& cls, double width) {
    out_ << "  <line x1=\"" << fmt(ax) << "\" y1=\"" << fmt(-ay) << "\" x2=\"" << fmt(bx) << "\" y2=\""
         << fmt(-by) << "\" class=\"" << cls << "\" stroke-width=\"" << fmt(width) << "\"/>\n";
  }

  // Clip a ray to the box edge.
  void ray(double ax, double ay, double dx, double dy, const std::string& cls, double width) {
    double len = std::hypot(dx, dy);
    double reach = 2 * std::hypot(b_.x1 - b_.x0, b_.y1 - b_.y0);
    line(ax, ay, ax + dx / len * reach, ay + dy / len * reach, cls, width);
  }

  void dot(double x, double y, const std::string& cls, double r) {
    out_ << "  <circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(-y) << "\" r=\"" << fmt(r) << "\" class=\"" << cls
         << "\"/>\n";
  }

  std::string finish() const {
    std::ostringstream s;
    double w = b_.x1 - b_.x0, h = b_.y1 - b_.y0;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(b_.x0) << " " << fmt(-b_.y1) << " "
      << fmt(w) << " " << fmt(h) << "\" width=\"600\" height=\"" << fmt(600 * h / w) << "\">\n"
      << "  <style>line{stroke-linecap:round} .wall{stroke:#333} .scat{stroke:#c33} .bl{stroke:#27c}"
         " .edge{stroke:#222} .pt{fill:#000} .q{fill:#27c}</style>\n"
      << "  <defs><clipPath id=\"c\"><rect x=\"" << fmt(b_.x0) << "\" y=\"" << fmt(-b_.y1) << "\" width=\""
      << fmt(w) << "\" height=\"" << fmt(h) << "\"/></clipPath></defs>\n"
      << "  <g clip-path=\"url(#c)\">\n"
      << out_.str() << "  </g>\n</svg>\n";
    return s.str();
  }

  double unit() const { return std::max(b_.x1 - b_.x0, b_.y1 - b_.y0) / 300; }

 private:
  Box b_;
  std::ostringstream out_;
};

}  // namespace

std::string render_diagram_svg(const Fan& fan, const ScatteringDiagram& d, const std::vector<BrokenLine>& lines) {
  Box box;
  for (const auto& p : d.marked_points) box.add(p);
  for (const auto& w : d.walls) box.add(w.base);
  for (const auto& bl : lines)
    for (const auto& s : bl.segments) box.add(s.end);
  box.pad();
  Canvas c(box);
  double u = c.unit();
  for (const Wall& w : d.walls) {
    double bx = w.base.x.get_d(), by = w.base.y.get_d();
    std::string cls = w.scattered ? "scat" : "wall";
    c.ray(bx, by, double(w.dir.x), double(w.dir.y), cls, u);
    if (w.carrier == Wall::Carrier::Line) c.ray(bx, by, -double(w.dir.x), -double(w.dir.y), cls, u);
  }
  for (const BrokenLine& bl : lines) {
    for (const auto& s : bl.segments) {
      double ex = s.end.x.get_d(), ey = s.end.y.get_d();
      if (s.start) {
        c.line(s.start->x.get_d(), s.start->y.get_d(), ex, ey, "bl", 0.6 * u);
      } else {
        // travel direction is -r(m), so infinity lies along +r(m)
        IntVec2 v = r_of(fan, s.mono.e);
        c.ray(ex, ey, double(v.x), double(v.y), "bl", 0.6 * u);
      }
    }
  }
  for (const auto& p : d.marked_points) c.dot(p.x.get_d(), p.y.get_d(), "pt", 3 * u);
  if (!lines.empty()) {
    const RatVec2& q = lines.front().segments.back().end;
    c.dot(q.x.get_d(), q.y.get_d(), "q", 3 * u);
  }
  return c.finish();
}

std::string render_curves_svg(const std::vector<ParamTropCurve>& curves, const std::vector<RatVec2>& points) {
  Box box;
  for (const auto& p : points) box.add(p);
  for (const auto& cv : curves)
    for (const auto& p : cv.pos) box.add(p);
  box.pad();
  Canvas c(box);
  double u = c.unit();
  for (const auto& cv : curves) {
    for (const CurveEdge& e : cv.edges) {
      const RatVec2& a = cv.pos[e.u];
      double w = u * double(std::min<std::int64_t>(e.weight, 4));
      if (e.v)
        c.line(a.x.get_d(), a.y.get_d(), cv.pos[*e.v].x.get_d(), cv.pos[*e.v].y.get_d(), "edge", w);
      else
        c.ray(a.x.get_d(), a.y.get_d(), double(e.dir.x), double(e.dir.y), "edge", w);
    }
  }
  for (const auto& p : points) c.dot(p.x.get_d(), p.y.get_d(), "pt", 3 * u);
  return c.finish();
}

}  // namespace tropenum
