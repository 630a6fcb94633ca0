#pragma once

#include <json.hpp>

#include "tropenum/broken.hpp"
#include "tropenum/correspondence.hpp"
#include "tropenum/enumeration.hpp"
#include "tropenum/scattering.hpp"

namespace tropenum {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

json to_json(const Rat& q);
Rat rat_from_json(const json& j);
json to_json(const RatVec2& p);
RatVec2 point_from_json(const json& j);
json to_json(const IntVec2& v);
IntVec2 intvec_from_json(const json& j);
json mask_to_json(std::uint32_t mask);  // list of 1-based labels
std::uint32_t mask_from_json(const json& j);

json to_json(const Fan& fan);
Fan fan_from_json(const json& j);
json to_json(const Degree& d);
Degree degree_from_json(const Fan& fan, const json& j);

json to_json(const ParamTropCurve& c);
ParamTropCurve curve_from_json(const json& j);

// Curves are computed in max convention. With Convention::Min the points and
// curves are written reflected through the origin, and the loader undoes it.
json to_json(const CountReport& r, Convention conv = Convention::Max);
CountReport count_report_from_json(const json& j);

json trees_to_json(const Fan& fan, const std::vector<RatVec2>& points, const std::vector<TreeRecord>& trees);
json disks_to_json(const Fan& fan, const std::vector<RatVec2>& points, const RatVec2& q,
                   const std::vector<DiskRecord>& disks);

json to_json(const Monomial& m);
Monomial monomial_from_json(const json& j);
json to_json(const RingElement& x);
RingElement ring_from_json(std::size_t nrays, const json& j);

json to_json(const ScatteringDiagram& d, const Fan& fan);
ScatteringDiagram diagram_from_json(const json& j, Fan* fan_out = nullptr);
json to_json(const ConsistencyReport& r);

json to_json(const Potential& p, const RatVec2& q, const Fan& fan);
Potential potential_from_json(const json& j);

json to_json(const PhiSystem& s);
json to_json(const PolyDecomp& d);
PolyDecomp decomp_from_json(const json& j);
json to_json(const DecompReport& r);
json to_json(const Fan3D& f);
Fan3D fan3d_from_json(const json& j);

// Fan from a builtin name or a JSON file path.
Fan load_fan(const std::string& spec);
json read_json_file(const std::string& path);
// Deterministic serialization with two-space indentation and a trailing newline.
std::string dump(const json& j);

}  // namespace tropenum
