#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tropenum/io.hpp"
#include "tropenum/svg.hpp"

namespace py = pybind11;
using namespace tropenum;

namespace {

RatVec2 point(const std::pair<std::string, std::string>& q) {
  return {rat_from_string(q.first), rat_from_string(q.second)};
}

template <class F>
std::string on_points(std::size_t k, std::uint64_t seed, F f) {
  json out;
  with_generic_points(k, seed, {}, [&](const std::vector<RatVec2>& pts) { out = f(pts); });
  return dump(out);
}

}  // namespace

PYBIND11_MODULE(_tropenum, m) {
  m.doc() = "Tropical curve counts, scattering diagrams and broken lines (JSON in, JSON out)";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<GenericityError>(m, "GenericityError", PyExc_RuntimeError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  m.attr("schema_version") = kSchemaVersion;

  m.def(
      "count",
      [](const std::string& fan, const std::string& degree, std::uint64_t seed, unsigned jobs,
         const std::string& convention) {
        Fan f = load_fan(fan);
        CountReport r = count_report(f, parse_degree(f, degree), seed, jobs);
        return dump(to_json(r, convention == "min" ? Convention::Min : Convention::Max));
      },
      py::arg("fan"), py::arg("degree"), py::arg("seed"), py::arg("jobs"), py::arg("convention"),
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "scatter",
      [](const std::string& fan, std::size_t k, std::uint64_t seed) {
        Fan f = load_fan(fan);
        return on_points(k, seed, [&](const std::vector<RatVec2>& pts) {
          ScatteringDiagram d = build_diagram(f, pts);
          json j = to_json(d, f);
          j["consistency"] = to_json(check_consistency(f, d));
          return j;
        });
      },
      py::arg("fan"), py::arg("k"), py::arg("seed"), py::call_guard<py::gil_scoped_release>());

  m.def(
      "potential",
      [](const std::string& fan, std::size_t k, const std::pair<std::string, std::string>& q, std::uint64_t seed) {
        Fan f = load_fan(fan);
        RatVec2 qq = point(q);
        return on_points(k, seed, [&](const std::vector<RatVec2>& pts) {
          ScatteringDiagram d = build_diagram(f, pts);
          json j = to_json(potential(d, f, qq), qq, f);
          j["diagram"] = to_json(d, f);
          return j;
        });
      },
      py::arg("fan"), py::arg("k"), py::arg("q"), py::arg("seed"), py::call_guard<py::gil_scoped_release>());

  m.def(
      "disks",
      [](const std::string& fan, std::size_t k, const std::pair<std::string, std::string>& q, std::uint64_t seed) {
        Fan f = load_fan(fan);
        RatVec2 qq = point(q);
        return on_points(k, seed, [&](const std::vector<RatVec2>& pts) {
          return disks_to_json(f, pts, qq, enumerate_maslov2_disks(f, pts, qq));
        });
      },
      py::arg("fan"), py::arg("k"), py::arg("q"), py::arg("seed"), py::call_guard<py::gil_scoped_release>());

  m.def(
      "render",
      [](const std::string& diagram_json) {
        Fan f;
        ScatteringDiagram d = diagram_from_json(json::parse(diagram_json), &f);
        return render_diagram_svg(f, d);
      },
      py::arg("diagram_json"));
}
