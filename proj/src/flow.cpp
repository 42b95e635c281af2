#include "uniformize/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace uniformize {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Dinic max-flow on real capacities. Arcs are scanned in insertion order so
// results depend only on the input.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : adj_(n), level_(n), it_(n) {}

  int add(int u, int v, double cap) {
    adj_[u].push_back(static_cast<int>(to_.size()));
    to_.push_back(v);
    cap_.push_back(cap);
    adj_[v].push_back(static_cast<int>(to_.size()));
    to_.push_back(u);
    cap_.push_back(0.0);
    return static_cast<int>(to_.size()) - 2;
  }

  double run(int s, int t, double eps) {
    eps_ = eps;
    double total = 0.0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (true) {
        const double f = dfs(s, t, kInf);
        if (f <= eps_) break;
        total += f;
      }
    }
    return total;
  }

  double residual(int arc) const { return cap_[arc]; }
  double pushed(int arc) const { return cap_[arc ^ 1]; }

  std::vector<char> reachable_from(int s) const { return search(s, false); }
  std::vector<char> reaching(int t) const { return search(t, true); }

 private:
  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int a : adj_[u]) {
        if (cap_[a] > eps_ && level_[to_[a]] < 0) {
          level_[to_[a]] = level_[u] + 1;
          q.push(to_[a]);
        }
      }
    }
    return level_[t] >= 0;
  }

  double dfs(int u, int t, double f) {
    if (u == t) return f;
    for (int& i = it_[u]; i < static_cast<int>(adj_[u].size()); ++i) {
      const int a = adj_[u][i];
      const int v = to_[a];
      if (cap_[a] <= eps_ || level_[v] != level_[u] + 1) continue;
      const double got = dfs(v, t, std::min(f, cap_[a]));
      if (got > eps_) {
        cap_[a] -= got;
        cap_[a ^ 1] += got;
        return got;
      }
    }
    return 0.0;
  }

  // Nodes reachable in the residual graph (reverse = follow arcs backwards).
  std::vector<char> search(int start, bool reverse) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int a : adj_[u]) {
        const double c = reverse ? cap_[a ^ 1] : cap_[a];
        if (c > eps_ && !seen[to_[a]]) {
          seen[to_[a]] = 1;
          stack.push_back(to_[a]);
        }
      }
    }
    return seen;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> to_;
  std::vector<double> cap_;
  std::vector<int> level_;
  std::vector<int> it_;
  double eps_ = 0.0;
};

double finite(double x, double cap) { return std::clamp(x, -cap, cap); }

int sign_of(int x) { return (x > 0) - (x < 0); }

}  // namespace

std::string FlowNetwork::node_name(int node) const {
  switch (kind[node]) {
    case NodeKind::vertex: return "v" + std::to_string(element[node]);
    case NodeKind::edge: return "e" + std::to_string(element[node]);
    case NodeKind::omega: break;
  }
  return "omega";
}

FlowNetwork build_flow_network(const WeightedMap& wm, double epsilon, double tau,
                               const StereoSubspace* stereo) {
  const SurfaceMap& m = wm.map();
  if (!(epsilon > 0.0)) throw Error(ErrorCode::BadSigns, "epsilon must be positive");
  const int want = stereo ? 0 : sign_of(wm.chi());
  const int got = (tau > 0.0) - (tau < 0.0);
  if (got != want)
    throw Error(ErrorCode::BadSigns, "tau must have sign " + std::to_string(want) +
                                         (stereo ? " in stereographic mode" : " for this surface"));

  FlowNetwork net;
  std::vector<int> vnode(m.vertex_count(), -1), enode(m.edge_count(), -1);
  for (int v = 0; v < m.vertex_count(); ++v) {
    if (stereo && stereo->on_face[v]) continue;
    vnode[v] = net.node_count();
    net.kind.push_back(NodeKind::vertex);
    net.element.push_back(v);
  }
  for (int e = 0; e < m.edge_count(); ++e) {
    if (stereo && !stereo->in_s_star[m.edge_darts(e)[0]]) continue;
    enode[e] = net.node_count();
    net.kind.push_back(NodeKind::edge);
    net.element.push_back(e);
  }
  net.omega = net.node_count();
  net.kind.push_back(NodeKind::omega);
  net.element.push_back(-1);
  net.cap = kPi * m.vertex_count() + 1.0;

  for (int d = 0; d < m.dart_count(); ++d) {
    if (stereo && !stereo->in_s_star[d]) continue;
    net.arcs.push_back({enode[m.edge_of(d)], vnode[m.vertex_of(d)], epsilon, kInf, d});
  }
  for (int e = 0; e < m.edge_count(); ++e) {
    if (enode[e] < 0) continue;
    net.arcs.push_back({net.omega, enode[e], -kInf, wm.theta(e) + tau, -1});
  }
  for (int v = 0; v < m.vertex_count(); ++v) {
    if (vnode[v] < 0) continue;
    const double b = stereo ? stereo->theta_v[v] : kPi;
    net.arcs.push_back({vnode[v], net.omega, b, b, -1});
  }
  return net;
}

CutCertificate evaluate_cut(const FlowNetwork& net, std::vector<int> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::vector<char> in(net.node_count(), 0);
  for (int v : nodes) in[v] = 1;
  CutCertificate c{std::move(nodes), 0.0, 0.0};
  for (const FlowArc& a : net.arcs) {
    if (!in[a.from] && in[a.to]) c.lower_sum += a.lower;
    if (in[a.from] && !in[a.to]) c.upper_sum += a.upper;
  }
  return c;
}

FlowResult find_compatible_flow(const FlowNetwork& net, double tol) {
  const int n = net.node_count();
  const int source = n, sink = n + 1;
  MaxFlow mf(n + 2);
  std::vector<double> excess(n, 0.0);
  std::vector<double> lower(net.arc_count());
  std::vector<int> handle(net.arc_count());
  for (int i = 0; i < net.arc_count(); ++i) {
    const FlowArc& a = net.arcs[i];
    lower[i] = finite(a.lower, net.cap);
    const double upper = finite(a.upper, net.cap);
    handle[i] = mf.add(a.from, a.to, std::max(0.0, upper - lower[i]));
    excess[a.to] += lower[i];
    excess[a.from] -= lower[i];
  }
  double supply = 0.0;
  for (int v = 0; v < n; ++v) {
    if (excess[v] > 0.0) {
      mf.add(source, v, excess[v]);
      supply += excess[v];
    } else if (excess[v] < 0.0) {
      mf.add(v, sink, -excess[v]);
    }
  }
  const double value = mf.run(source, sink, 1e-15);

  FlowResult r;
  if (supply - value <= tol * (1.0 + supply)) {
    r.feasible = true;
    r.flow.resize(net.arc_count());
    for (int i = 0; i < net.arc_count(); ++i) r.flow[i] = lower[i] + mf.pushed(handle[i]);
    return r;
  }

  // Both sides of a minimum cut violate Hoffman's condition; keep the smaller.
  const std::vector<char> src = mf.reachable_from(source);
  const std::vector<char> snk = mf.reaching(sink);
  std::vector<int> a, b;
  for (int v = 0; v < n; ++v) {
    if (src[v]) a.push_back(v);
    if (!snk[v]) b.push_back(v);
  }
  CutCertificate ca = evaluate_cut(net, a);
  CutCertificate cb = evaluate_cut(net, b);
  const bool a_ok = ca.lower_sum > ca.upper_sum, b_ok = cb.lower_sum > cb.upper_sum;
  if (a_ok && (!b_ok || a.size() <= b.size()))
    r.certificate = std::move(ca);
  else if (b_ok)
    r.certificate = std::move(cb);
  return r;
}

namespace {

std::vector<double> flow_to_psi(const WeightedMap& wm, const FlowNetwork& net,
                                const std::vector<double>& flow, const StereoSubspace* stereo) {
  std::vector<double> psi = stereo ? stereo->boundary_psi
                                   : std::vector<double>(wm.map().dart_count(), 0.0);
  for (int i = 0; i < net.arc_count(); ++i)
    if (net.arcs[i].dart >= 0) psi[net.arcs[i].dart] = flow[i];
  return psi;
}

AngleSystem solve_schedule(const WeightedMap& wm, const StereoSubspace* stereo) {
  double min_theta = kPi;
  for (double t : wm.thetas()) min_theta = std::min(min_theta, t);
  const int sgn = stereo ? 0 : sign_of(wm.chi());

  std::optional<CutCertificate> last;
  std::optional<FlowNetwork> last_net;
  for (int k = 0; k <= 60; ++k) {
    const double eps = (kPi / 4) * std::ldexp(1.0, -k);
    const double tau = sgn * (min_theta / 2) * std::ldexp(1.0, -k);
    FlowNetwork net = build_flow_network(wm, eps, tau, stereo);
    FlowResult res = find_compatible_flow(net);
    if (res.feasible) {
      std::vector<double> psi = flow_to_psi(wm, net, res.flow, stereo);
      AngleSystem sys = stereo ? stereographic_system(wm, *stereo, psi) : full_system(wm, std::move(psi));
      if (is_member(wm, sys).member) return sys;
      // A feasible flow that is not coherent means the weights break the face equalities.
      throw InfeasibleError("flow is feasible but the induced angle system is not coherent",
                            std::nullopt, std::move(net));
    }
    if (res.certificate) {
      last = std::move(res.certificate);
      last_net = std::move(net);
    }
  }
  throw InfeasibleError("no compatible flow found", std::move(last), std::move(last_net));
}

}  // namespace

AngleSystem initial_angle_system(const WeightedMap& wm, std::optional<int> face) {
  const SurfaceMap& m = wm.map();
  if (face) {
    const StereoSubspace sub = stereographic_subspace(wm, *face);
    return solve_schedule(wm, &sub);
  }
  if (wm.chi() != 2) return solve_schedule(wm, nullptr);

  std::vector<double> avg(m.dart_count(), 0.0);
  std::optional<InfeasibleError> failure;
  for (int f = 0; f < m.face_count(); ++f) {
    try {
      const StereoSubspace sub = stereographic_subspace(wm, f);
      const AngleSystem sys = solve_schedule(wm, &sub);
      for (int d = 0; d < m.dart_count(); ++d) avg[d] += sys.psi[d];
    } catch (const InfeasibleError& e) {
      if (!failure || (!failure->certificate && e.certificate))
        failure.emplace("face " + std::to_string(f) + ": " + e.message(), e.certificate, e.network);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonpositiveThetaV) throw;
      if (!failure) failure.emplace("face " + std::to_string(f) + ": " + e.message(), std::nullopt, std::nullopt);
    }
  }
  if (failure) throw *failure;
  for (double& x : avg) x /= m.face_count();
  AngleSystem sys = full_system(wm, std::move(avg));
  const MembershipReport rep = is_member(wm, sys);
  if (!rep.member)
    throw InfeasibleError("averaged stereographic systems are not coherent", std::nullopt, std::nullopt);
  return sys;
}

}  // namespace uniformize
