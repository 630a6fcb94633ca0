#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "tropenum/io.hpp"
#include "tropenum/svg.hpp"

using namespace tropenum;

namespace {

enum Exit { kOk = 0, kUsage = 1, kGenericity = 2, kInvariant = 3 };

struct RunConfig {
  std::string fan = "p2";
  std::string degree;
  std::uint64_t seed = 1;
  std::size_t k = 0;
  std::string q;
  std::string out;
  std::string convention = "max";
  std::string policy = "always";
  unsigned jobs = 1;
  std::string input;
  std::string svg;
};

std::uint64_t default_seed() {
  const char* s = std::getenv("TROPENUM_SEED");
  if (!s || !*s) return 1;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ParseError("TROPENUM_SEED is not a non-negative integer");
  }
}

RatVec2 parse_point(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
    throw ParseError("expected --q x,y");
  return {rat_from_string(s.substr(0, comma)), rat_from_string(s.substr(comma + 1))};
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + cfg.out + "'");
  f << text;
}

int cmd_count(const RunConfig& cfg) {
  Fan fan = load_fan(cfg.fan);
  Degree deg = parse_degree(fan, cfg.degree);
  CountReport r = count_report(fan, deg, cfg.seed, cfg.jobs);
  emit(cfg, dump(to_json(r, cfg.convention == "min" ? Convention::Min : Convention::Max)));
  return kOk;
}

int cmd_trees(const RunConfig& cfg) {
  Fan fan = load_fan(cfg.fan);
  json out;
  with_generic_points(cfg.k, cfg.seed, {}, [&](const std::vector<RatVec2>& pts) {
    out = trees_to_json(fan, pts, enumerate_maslov0_trees(fan, pts, cfg.jobs));
  });
  emit(cfg, dump(out));
  return kOk;
}

int cmd_disks(const RunConfig& cfg) {
  Fan fan = load_fan(cfg.fan);
  RatVec2 q = parse_point(cfg.q);
  json out;
  with_generic_points(cfg.k, cfg.seed, {}, [&](const std::vector<RatVec2>& pts) {
    out = disks_to_json(fan, pts, q, enumerate_maslov2_disks(fan, pts, q, cfg.jobs));
  });
  emit(cfg, dump(out));
  return kOk;
}

int cmd_scatter(const RunConfig& cfg) {
  Fan fan = load_fan(cfg.fan);
  json out;
  bool ok = false;
  with_generic_points(cfg.k, cfg.seed, {}, [&](const std::vector<RatVec2>& pts) {
    ScatteringDiagram d = build_diagram(fan, pts, cfg.jobs);
    ConsistencyReport rep = check_consistency(fan, d);
    out = to_json(d, fan);
    out["consistency"] = to_json(rep);
    ok = rep.consistent();
  });
  emit(cfg, dump(out));
  if (!ok) {
    std::cerr << "error: scattering diagram is not consistent\n";
    return kInvariant;
  }
  return kOk;
}

int cmd_potential(const RunConfig& cfg) {
  Fan fan = load_fan(cfg.fan);
  RatVec2 q = parse_point(cfg.q);
  json out;
  with_generic_points(cfg.k, cfg.seed, {}, [&](const std::vector<RatVec2>& pts) {
    ScatteringDiagram d = build_diagram(fan, pts, cfg.jobs);
    Potential w = potential(d, fan, q);
    out = to_json(w, q, fan);
    out["diagram"] = to_json(d, fan);
  });
  emit(cfg, dump(out));
  return kOk;
}

int cmd_phi_check(const RunConfig& cfg) {
  Fan fan = load_fan(cfg.fan);
  Degree deg = parse_degree(fan, cfg.degree);
  CountReport r = count_report(fan, deg, cfg.seed, cfg.jobs);
  json out;
  out["schema"] = "tropenum.phi-check";
  out["version"] = kSchemaVersion;
  out["seed"] = cfg.seed;
  json rows = json::array();
  bool all = true;
  for (const CurveSolution& s : r.curves) {
    PhiSystem sys = build_phi(s.curve);
    Int d = index_d(sys), w = log_count_w(sys);
    bool ok = d * w == s.mult;
    all = all && ok;
    json row;
    row["type"] = s.type;
    row["index_d"] = d.get_str();
    row["log_count_w"] = w.get_str();
    row["mult"] = s.mult.get_str();
    row["ok"] = ok;
    row["phi"] = to_json(sys);
    rows.push_back(row);
  }
  out["curves"] = rows;
  out["ok"] = all;
  emit(cfg, dump(out));
  if (!all) {
    std::cerr << "error: index_d * log_count_w differs from the multiplicity\n";
    return kInvariant;
  }
  return kOk;
}

int cmd_degenerate(const RunConfig& cfg) {
  Fan fan = load_fan(cfg.fan);
  Degree deg = parse_degree(fan, cfg.degree);
  TranslatePolicy policy = cfg.policy == "never"      ? TranslatePolicy::Never
                           : cfg.policy == "if-needed" ? TranslatePolicy::IfNeeded
                                                       : TranslatePolicy::Always;
  CountReport r = count_report(fan, deg, cfg.seed, cfg.jobs);
  std::vector<ParamTropCurve> curves;
  for (const auto& s : r.curves) curves.push_back(s.curve);
  Decomposition dec = build_decomposition(curves, fan, r.points, policy);
  json out = to_json(dec.decomp);
  out["report"] = to_json(dec.report);
  out["translates_added"] = dec.translates_added;
  if (dec.report.ok()) {
    auto [scaled, a] = rescale_lattice(dec.decomp);
    out["scale"] = a.get_str();
    out["fan3d"] = to_json(fan_over(scaled, fan));
  }
  emit(cfg, dump(out));
  if (!dec.report.ok()) {
    std::cerr << "error: decomposition fails its checks\n";
    return kInvariant;
  }
  return kOk;
}

int cmd_render(const RunConfig& cfg) {
  json j = read_json_file(cfg.input);
  std::string schema = j.is_object() ? j.value("schema", "") : "";
  std::string svg;
  if (schema == "tropenum.diagram") {
    Fan fan;
    ScatteringDiagram d = diagram_from_json(j, &fan);
    svg = render_diagram_svg(fan, d);
  } else if (schema == "tropenum.potential") {
    if (!j.contains("diagram")) throw ParseError("potential JSON has no diagram to draw on");
    Fan fan;
    ScatteringDiagram d = diagram_from_json(j["diagram"], &fan);
    svg = render_diagram_svg(fan, d, potential_from_json(j).lines);
  } else if (schema == "tropenum.count") {
    CountReport r = count_report_from_json(j);
    std::vector<ParamTropCurve> curves;
    for (const auto& s : r.curves) curves.push_back(s.curve);
    svg = render_curves_svg(curves, r.points);
  } else {
    throw ParseError("cannot render schema '" + schema + "'");
  }
  RunConfig c = cfg;
  c.out = cfg.svg;
  emit(c, svg);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical curve counts, scattering diagrams and broken lines"};
  app.require_subcommand(1);
  RunConfig cfg;
  try {
    cfg.seed = default_seed();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  auto common = [&](CLI::App* sub, bool degree, bool k, bool q) {
    sub->add_option("--fan", cfg.fan, "builtin fan (p2, p1xp1, dp6) or JSON file")->capture_default_str();
    if (degree) sub->add_option("--degree", cfg.degree, "scalar, comma list, or anticanonical")->required();
    if (k) sub->add_option("--k", cfg.k, "number of marked points")->capture_default_str();
    if (q) sub->add_option("--q", cfg.q, "endpoint x,y (rationals)")->required();
    sub->add_option("--seed", cfg.seed, "sampling seed (default $TROPENUM_SEED or 1)");
    sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
    sub->add_option("--out", cfg.out, "write output here instead of stdout");
  };

  std::map<CLI::App*, std::function<int()>> handlers;
  auto* count = app.add_subcommand("count", "count rational tropical curves through generic points");
  common(count, true, false, false);
  count->add_option("--convention", cfg.convention, "coordinate convention of the output")
      ->check(CLI::IsMember({"min", "max"}))
      ->capture_default_str();
  handlers[count] = [&] { return cmd_count(cfg); };

  auto* wel = app.add_subcommand("welschinger", "same as count; the report carries w_trop");
  common(wel, true, false, false);
  wel->add_option("--convention", cfg.convention)->check(CLI::IsMember({"min", "max"}));
  handlers[wel] = [&] { return cmd_count(cfg); };

  auto* trees = app.add_subcommand("trees", "Maslov index 0 trees");
  common(trees, false, true, false);
  handlers[trees] = [&] { return cmd_trees(cfg); };

  auto* disks = app.add_subcommand("disks", "Maslov index 2 disks ending at Q");
  common(disks, false, true, true);
  handlers[disks] = [&] { return cmd_disks(cfg); };

  auto* scatter = app.add_subcommand("scatter", "scattering diagram with consistency report");
  common(scatter, false, true, false);
  handlers[scatter] = [&] { return cmd_scatter(cfg); };

  auto* pot = app.add_subcommand("potential", "potential W_k(Q) from broken lines");
  common(pot, false, true, true);
  handlers[pot] = [&] { return cmd_potential(cfg); };

  auto* phi = app.add_subcommand("phi-check", "lattice index check for every counted curve");
  common(phi, true, false, false);
  handlers[phi] = [&] { return cmd_phi_check(cfg); };

  auto* degen = app.add_subcommand("degenerate", "polyhedral decomposition and the fan over it");
  common(degen, true, false, false);
  degen->add_option("--policy", cfg.policy, "when to add translated fans at the points")
      ->check(CLI::IsMember({"always", "never", "if-needed"}))
      ->capture_default_str();
  handlers[degen] = [&] { return cmd_degenerate(cfg); };

  auto* render = app.add_subcommand("render", "SVG from a diagram, potential or count JSON");
  render->add_option("input", cfg.input)->required();
  render->add_option("output", cfg.svg)->required();
  handlers[render] = [&] { return cmd_render(cfg); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    for (auto& [sub, fn] : handlers)
      if (sub->parsed()) return fn();
  } catch (const GenericityError& e) {
    std::cerr << "error: " << e.what() << " (try another --seed)\n";
    return kGenericity;
  } catch (const InvariantError& e) {
    std::cerr << "error: invariant violated: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
