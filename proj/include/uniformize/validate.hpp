#pragma once

#include <optional>
#include <vector>

#include "uniformize/flow.hpp"
#include "uniformize/map.hpp"

namespace uniformize {

enum class Verdict { valid, invalid, undecided };

const char* to_string(Verdict v);

struct LoopViolation {
  std::vector<int> edges;  // cycle in traversal order
  double excess = 0.0;     // Σ(π-θ) - 2π
};

struct ValidationReport {
  std::vector<double> face_residuals;  // Σ(π-θ) - 2π per face
  std::vector<LoopViolation> violated_loops;
  bool loop_search_complete = false;
  std::optional<CutCertificate> flow_certificate;
  std::optional<FlowNetwork> flow_network;  // network the certificate refers to
  std::string flow_message;                 // set when the flow check failed
  Verdict verdict = Verdict::undecided;
};

struct ValidateOptions {
  int loop_search_bound = 8;
  double face_tol = 1e-9;
  bool flow_check = true;
  long max_cycles = 1'000'000;
};

ValidationReport validate_weights(const WeightedMap& wm, const ValidateOptions& opts = {});

}  // namespace uniformize
