#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uniformize/angles.hpp"
#include "uniformize/error.hpp"
#include "uniformize/map.hpp"

namespace uniformize {

enum class NodeKind { vertex, edge, omega };

struct FlowArc {
  int from = 0;
  int to = 0;
  double lower = 0.0;  // may be -inf
  double upper = 0.0;  // may be +inf
  int dart = -1;       // dart id for dart arcs
};

/// Flow diagram on V ∪ E ∪ {ω}: nodes are numbered vertices first, then edges, then ω.
/// In stereographic mode only V*, E* and S* take part.
struct FlowNetwork {
  std::vector<NodeKind> kind;
  std::vector<int> element;  // vertex or edge id in the map, -1 for ω
  std::vector<FlowArc> arcs;
  int omega = -1;
  double cap = 0.0;  // finite stand-in for infinite bounds

  int node_count() const { return static_cast<int>(kind.size()); }
  int arc_count() const { return static_cast<int>(arcs.size()); }
  std::string node_name(int node) const;
};

struct CutCertificate {
  std::vector<int> nodes;  // Z, sorted
  double lower_sum = 0.0;  // Σ lower over arcs entering Z
  double upper_sum = 0.0;  // Σ upper over arcs leaving Z
};

struct FlowResult {
  bool feasible = false;
  std::vector<double> flow;  // per arc, when feasible
  std::optional<CutCertificate> certificate;
};

/// Throws Error{BadSigns} unless ε > 0 and τ has the sign the mode requires.
FlowNetwork build_flow_network(const WeightedMap& wm, double epsilon, double tau,
                               const StereoSubspace* stereo = nullptr);

/// Circulation with lower bounds via one max-flow with super source and sink.
FlowResult find_compatible_flow(const FlowNetwork& net, double tol = 1e-12);

/// Recomputes the two sums of a cut directly from the arc bounds.
CutCertificate evaluate_cut(const FlowNetwork& net, std::vector<int> nodes);

class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& message, std::optional<CutCertificate> cert,
                  std::optional<FlowNetwork> net)
      : Error(ErrorCode::Infeasible, message), certificate(std::move(cert)), network(std::move(net)) {}

  std::optional<CutCertificate> certificate;
  std::optional<FlowNetwork> network;
};

/// A coherent angle system from the ε/τ halving schedule. `face` selects
/// stereographic mode on a sphere; full-mode sphere systems average all faces
/// and fail with the first certificate any face produces.
/// Throws InfeasibleError with the last violated cut.
AngleSystem initial_angle_system(const WeightedMap& wm, std::optional<int> face = std::nullopt);

}  // namespace uniformize
