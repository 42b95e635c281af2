#include "uniformize/validate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace uniformize {

namespace {

constexpr double kPi = std::numbers::pi;

struct CycleSearch {
  const WeightedMap& wm;
  int bound;
  long max_cycles;
  const std::set<std::vector<int>>& faces;
  std::vector<LoopViolation>& out;

  std::vector<char> on_path;
  std::vector<int> path;
  long found = 0;
  bool truncated = false;
  int start = 0;

  void run() {
    const SurfaceMap& m = wm.map();
    on_path.assign(m.vertex_count(), 0);
    for (start = 0; start < m.vertex_count() && !truncated; ++start) {
      on_path[start] = 1;
      extend(start);
      on_path[start] = 0;
    }
  }

  void extend(int v) {
    if (truncated) return;
    const SurfaceMap& m = wm.map();
    for (int d : m.darts_at_vertex(v)) {
      const int w = m.head_of(d);
      const int e = m.edge_of(d);
      if (w == start && !path.empty()) {
        if (path.front() < e) record(e);
        continue;
      }
      if (w < start || on_path[w] || static_cast<int>(path.size()) + 1 >= bound) continue;
      on_path[w] = 1;
      path.push_back(e);
      extend(w);
      path.pop_back();
      on_path[w] = 0;
    }
  }

  void record(int closing) {
    if (++found > max_cycles) {
      truncated = true;
      return;
    }
    std::vector<int> cycle = path;
    cycle.push_back(closing);
    std::vector<int> key = cycle;
    std::sort(key.begin(), key.end());
    if (faces.count(key)) return;
    double s = 0.0;
    for (int e : cycle) s += kPi - wm.theta(e);
    // strict inequality is required off face boundaries
    if (s - 2 * kPi <= 1e-9) out.push_back({std::move(cycle), s - 2 * kPi});
  }
};

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::valid: return "valid";
    case Verdict::invalid: return "invalid";
    case Verdict::undecided: break;
  }
  return "undecided";
}

ValidationReport validate_weights(const WeightedMap& wm, const ValidateOptions& opts) {
  const SurfaceMap& m = wm.map();
  ValidationReport r;
  bool bad = false;

  std::set<std::vector<int>> face_keys;
  for (int f = 0; f < m.face_count(); ++f) {
    double s = 0.0;
    std::vector<int> key;
    for (int d : m.darts_of_face(f)) {
      s += kPi - wm.theta_of_dart(d);
      key.push_back(m.edge_of(d));
    }
    std::sort(key.begin(), key.end());
    face_keys.insert(std::move(key));
    r.face_residuals.push_back(s - 2 * kPi);
    if (std::abs(s - 2 * kPi) > opts.face_tol) bad = true;
  }

  if (wm.chi() == 2 && opts.loop_search_bound >= 2) {
    CycleSearch search{wm, opts.loop_search_bound, opts.max_cycles, face_keys, r.violated_loops, {}, {}};
    search.run();
    r.loop_search_complete = !search.truncated && opts.loop_search_bound >= m.vertex_count();
    if (!r.violated_loops.empty()) bad = true;
  }

  bool flow_ok = false;
  if (opts.flow_check) {
    try {
      initial_angle_system(wm);
      flow_ok = true;
    } catch (const InfeasibleError& e) {
      r.flow_certificate = e.certificate;
      r.flow_network = e.network;
      r.flow_message = e.message();
      bad = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonpositiveThetaV) throw;
      r.flow_message = e.message();
      bad = true;
    }
  }

  if (bad)
    r.verdict = Verdict::invalid;
  else if (flow_ok || r.loop_search_complete)
    r.verdict = Verdict::valid;
  else
    r.verdict = Verdict::undecided;
  return r;
}

}  // namespace uniformize
