#include "uniformize/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "uniformize/catalog.hpp"
#include "uniformize/flow.hpp"
#include "uniformize/geometry.hpp"
#include "uniformize/io.hpp"
#include "uniformize/solver.hpp"
#include "uniformize/validate.hpp"

namespace uniformize::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kInvalid = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned long long seed_from_env() {
  const char* s = std::getenv("UNIFORMIZE_SEED");
  if (!s || !*s) return 0;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw UsageError(fmt::format("UNIFORMIZE_SEED must be a non-negative integer, got \"{}\"", s));
  }
}

std::string number(double x) { return fmt::format("{:.12g}", x); }

void print_certificate(std::ostream& os, const CutCertificate& cert, const FlowNetwork* net) {
  os << "violated cut Z = {";
  for (std::size_t i = 0; i < cert.nodes.size(); ++i) {
    if (i) os << ", ";
    os << (net ? net->node_name(cert.nodes[i]) : std::to_string(cert.nodes[i]));
  }
  os << "}\n";
  os << "  lower bounds into Z: " << number(cert.lower_sum) << "\n";
  os << "  upper bounds out of Z: " << number(cert.upper_sum) << "\n";
}

Json certificate_json(const CutCertificate& cert, const FlowNetwork* net) {
  Json doc;
  doc["nodes"] = cert.nodes;
  if (net) {
    Json names = Json::array();
    for (int n : cert.nodes) names.push_back(net->node_name(n));
    doc["names"] = names;
  }
  doc["lower_sum"] = cert.lower_sum;
  doc["upper_sum"] = cert.upper_sum;
  return doc;
}

std::optional<int> face_option(const WeightedMap& wm, int face) {
  if (face < 0) return std::nullopt;
  if (wm.chi() != 2) throw UsageError("--face only applies to sphere maps");
  if (face >= wm.map().face_count()) throw UsageError(fmt::format("face {} does not exist", face));
  return face;
}

Solution load_solution(const std::string& path, const std::string& map_path) {
  const Json doc = read_json_file(path);
  if (map_path.empty()) return solution_from_json(doc);
  const WeightedMap wm = map_from_json(read_json_file(map_path));
  return solution_from_json(doc, &wm);
}

double max_residual(const ConfigurationResiduals& r) { return std::max(r.max_angle, r.max_concurrency); }

struct Options {
  std::string map_path, output, certificate, start, solution, svg, chart, overlay, name, extra_map;
  bool degrees = false;
  bool no_flow = false;
  int loop_bound = 8;
  int face = -1;
  int max_iter = 200;
  int copies = 0;
  double tol = 1e-10;
  double perturb = 0.0;
};

int cmd_validate(const Options& o, std::ostream& out) {
  const WeightedMap wm = map_from_json(read_json_file(o.map_path), o.degrees);
  ValidateOptions vo;
  vo.loop_search_bound = o.loop_bound;
  vo.flow_check = !o.no_flow;
  const ValidationReport rep = validate_weights(wm, vo);
  double worst = 0.0;
  for (double r : rep.face_residuals) worst = std::max(worst, std::abs(r));
  out << "chi: " << wm.chi() << "\n";
  out << "max face residual: " << number(worst) << "\n";
  out << "loop search: " << (rep.loop_search_complete ? "complete" : "bounded") << ", "
      << rep.violated_loops.size() << " violated\n";
  for (const auto& loop : rep.violated_loops) {
    out << "  loop edges";
    for (int e : loop.edges) out << " " << e;
    out << " excess " << number(loop.excess) << "\n";
  }
  if (!rep.flow_message.empty()) out << "flow: " << rep.flow_message << "\n";
  if (rep.flow_certificate)
    print_certificate(out, *rep.flow_certificate, rep.flow_network ? &*rep.flow_network : nullptr);
  out << "verdict: " << to_string(rep.verdict) << "\n";
  return rep.verdict == Verdict::invalid ? kInvalid : kOk;
}

int cmd_init(const Options& o, std::ostream& out) {
  const WeightedMap wm = map_from_json(read_json_file(o.map_path), o.degrees);
  try {
    AngleSystem psi = initial_angle_system(wm, face_option(wm, o.face));
    if (o.perturb > 0.0) psi = perturbed_start(wm, psi, o.perturb, seed_from_env());
    const Json doc = angles_to_json(psi);
    if (o.output.empty())
      out << dump_json(doc);
    else
      write_json_file(o.output, doc);
    return kOk;
  } catch (const InfeasibleError& e) {
    out << "infeasible: " << e.message() << "\n";
    const FlowNetwork* net = e.network ? &*e.network : nullptr;
    if (e.certificate) {
      print_certificate(out, *e.certificate, net);
      if (!o.certificate.empty()) write_json_file(o.certificate, certificate_json(*e.certificate, net));
    }
    return kInvalid;
  }
}

struct Solved {
  WeightedMap wm;
  SolveResult result;
};

Solved solve_map(const WeightedMap& wm, const Options& o, std::optional<int> face) {
  AngleSystem start;
  if (!o.start.empty())
    start = angles_from_json(read_json_file(o.start), wm, o.degrees);
  else
    start = initial_angle_system(wm, face);
  if (o.perturb > 0.0) start = perturbed_start(wm, start, o.perturb, seed_from_env());
  SolveOptions so;
  so.grad_tol = o.tol;
  so.max_iter = o.max_iter;
  return {wm, maximize(wm, start, so)};
}

int cmd_solve(const Options& o, std::ostream& out) {
  const WeightedMap wm = map_from_json(read_json_file(o.map_path), o.degrees);
  std::optional<int> face = face_option(wm, o.face);
  if (wm.chi() == 2 && !face && o.start.empty())
    throw UsageError("sphere maps need --face (the solver works on a stereographic face)");
  const Solved s = solve_map(wm, o, face);
  write_json_file(o.output, solution_to_json(s.result.psi, s.result.grad_norm, s.result.iterations, wm));
  out << "L: " << number(s.result.value) << "\n";
  out << "grad_norm: " << number(s.result.grad_norm) << "\n";
  out << "iterations: " << s.result.iterations << "\n";
  return kOk;
}

int cmd_volume(const Options& o, std::ostream& out) {
  const Solution sol = load_solution(o.solution, o.extra_map);
  const double l = volume_functional(*sol.map, sol.psi);
  const double v = volume_orthoschemes(*sol.map, sol.psi).total;
  out << "L: " << number(l) << "\n";
  out << "volume_ortho: " << number(v) << "\n";
  out << "difference: " << number(l - v) << "\n";
  return kOk;
}

int cmd_render(const Options& o, std::ostream& out) {
  const Solution sol = load_solution(o.solution, o.extra_map);
  const DiskConfiguration cfg = layout(*sol.map, sol.psi);
  if (!o.chart.empty() && o.chart != to_string(cfg.chart))
    throw UsageError(fmt::format("this solution lays out in the {} chart, not {}", to_string(cfg.chart), o.chart));
  RenderOptions ro;
  ro.overlay_quads = o.overlay == "quads";
  ro.copies = o.copies;
  render_svg(cfg, *sol.map, o.output, ro);
  out << "wrote " << o.output << " (" << to_string(cfg.chart) << " chart)\n";
  return kOk;
}

int cmd_pipeline(const Options& o, std::ostream& out) {
  const WeightedMap wm = map_from_json(read_json_file(o.map_path), o.degrees);
  std::optional<int> face = face_option(wm, o.face);
  if (wm.chi() == 2 && !face) face = 0;
  const ValidationReport rep = validate_weights(wm);
  if (rep.verdict == Verdict::invalid) {
    out << "invalid weights\n";
    if (rep.flow_certificate)
      print_certificate(out, *rep.flow_certificate, rep.flow_network ? &*rep.flow_network : nullptr);
    return kInvalid;
  }
  const Solved s = solve_map(wm, o, face);
  const DiskConfiguration cfg = layout(wm, s.result.psi);
  const ConfigurationResiduals res = check_configuration(cfg, wm);
  if (!o.output.empty())
    write_json_file(o.output, solution_to_json(s.result.psi, s.result.grad_norm, s.result.iterations, wm));
  if (!o.svg.empty()) render_svg(cfg, wm, o.svg);
  Json summary;
  summary["chi"] = wm.chi();
  summary["L"] = s.result.value;
  summary["volume_ortho"] = volume_orthoschemes(wm, s.result.psi).total;
  summary["grad_norm"] = s.result.grad_norm;
  summary["max_residual"] = max_residual(res);
  out << dump_json(summary);
  return kOk;
}

int cmd_catalog(const Options& o, std::ostream& out) {
  const Json doc = map_to_json(catalog::example(o.name));
  if (o.output.empty())
    out << dump_json(doc);
  else
    write_json_file(o.output, doc);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted circle patterns from a variational principle", "uniformize"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "check the weights for polyhedrality");
  validate->add_option("map", o.map_path, "map file")->required();
  validate->add_flag("--degrees", o.degrees, "weights are given in degrees");
  validate->add_option("--loop-bound", o.loop_bound, "longest simple cycle to enumerate on spheres");
  validate->add_flag("--no-flow", o.no_flow, "skip the flow feasibility check");

  auto* init = app.add_subcommand("init", "compute a coherent angle system");
  init->add_option("map", o.map_path, "map file")->required();
  init->add_flag("--degrees", o.degrees, "weights are given in degrees");
  init->add_option("--face", o.face, "stereographic face (sphere maps)");
  init->add_option("-o,--output", o.output, "angle file (stdout if omitted)");
  init->add_option("--certificate", o.certificate, "write the violated cut here on failure");
  init->add_option("--perturb", o.perturb, "random tangent perturbation amplitude");

  auto* solve = app.add_subcommand("solve", "maximize the functional");
  solve->add_option("map", o.map_path, "map file")->required();
  solve->add_flag("--degrees", o.degrees, "weights are given in degrees");
  solve->add_option("--face", o.face, "stereographic face (required for sphere maps)");
  solve->add_option("--tol", o.tol, "reduced gradient tolerance");
  solve->add_option("--max-iter", o.max_iter, "iteration limit");
  solve->add_option("--start", o.start, "start from this angle file");
  solve->add_option("--perturb", o.perturb, "random tangent perturbation of the start");
  solve->add_option("-o,--output", o.output, "solution file")->required();

  auto* volume = app.add_subcommand("volume", "print both volume values of a solution");
  volume->add_option("solution", o.solution, "solution file")->required();
  volume->add_option("--map", o.extra_map, "map file overriding the embedded one");

  auto* render = app.add_subcommand("render", "draw the disk configuration as SVG");
  render->add_option("solution", o.solution, "solution file")->required();
  render->add_option("-o,--output", o.output, "SVG file")->required();
  render->add_option("--chart", o.chart, "expected chart")->check(CLI::IsMember({"poincare", "plane", "stereo"}));
  render->add_option("--overlay", o.overlay, "draw the quadrangle decomposition")->check(CLI::IsMember({"quads"}));
  render->add_option("--copies", o.copies, "translated copies per direction (plane chart)")
      ->check(CLI::NonNegativeNumber);
  render->add_option("--map", o.extra_map, "map file overriding the embedded one");

  auto* pipeline = app.add_subcommand("pipeline", "validate, solve, lay out and summarize");
  pipeline->add_option("map", o.map_path, "map file")->required();
  pipeline->add_flag("--degrees", o.degrees, "weights are given in degrees");
  pipeline->add_option("--face", o.face, "stereographic face for sphere maps (default 0)");
  pipeline->add_option("-o,--output", o.output, "also write the solution file");
  pipeline->add_option("--svg", o.svg, "also render the configuration");

  auto* cat = app.add_subcommand("catalog", "write a built-in example map");
  cat->add_option("name", o.name, "example name")->required()->check(CLI::IsMember(catalog::example_names()));
  cat->add_option("-o,--output", o.output, "map file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kFailure;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (init->parsed()) return cmd_init(o, out);
    if (solve->parsed()) return cmd_solve(o, out);
    if (volume->parsed()) return cmd_volume(o, out);
    if (render->parsed()) return cmd_render(o, out);
    if (pipeline->parsed()) return cmd_pipeline(o, out);
    return cmd_catalog(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kFailure;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.message() << "\n";
    if (e.certificate) print_certificate(out, *e.certificate, e.network ? &*e.network : nullptr);
    return kInvalid;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.message() << "\n";
    switch (e.code()) {
      case ErrorCode::IoError:
      case ErrorCode::MaxIterExceeded:
        return kFailure;
      default:
        return kInvalid;
    }
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace uniformize::cli
