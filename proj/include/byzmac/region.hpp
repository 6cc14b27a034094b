#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "byzmac/mac.hpp"

namespace byzmac {

struct RatePoint {
  double r1 = 0, r2 = 0;
};

enum class InnerForm { R1Form, R2Form };

struct InnerSearchConfig {
  int starts = 32;
  uint64_t seed = 1;
  int max_iters = 3000;
  double tol = 1e-11;
  int workers = 1;
};

struct InnerCornerResult {
  RatePoint point;
  bool heuristic_upper_bound_on_min = true;  // multi-start local search, not a certificate
  int starts_used = 0;
};

/// Heuristic corner of the achievable region: minimizes the two mutual
/// informations of the chosen form over the linearly constrained set of joint
/// distributions (with the independence restriction where the form requires
/// it) by multi-start projected gradient descent. The reported value is an
/// upper bound on the true minimum.
InnerCornerResult inner_bound_corner(const Mac& ch, const DistributionVector& comp1,
                                     const DistributionVector& comp2, InnerForm form,
                                     const InnerSearchConfig& cfg = {});

/// Exact corners for the binary erasure MAC with input compositions
/// (0.5-delta, 0.5+delta) and (0.5+delta, 0.5-delta): on this channel the
/// constraint set pins the joint, so the corners are direct evaluations.
/// Returns {corner of form 1, corner of form 2}; they tend to
/// (0.5, 1.0) and (1.0, 0.5) as delta -> 0.
std::pair<RatePoint, RatePoint> erasure_inner_bound_exact(double delta);

struct PolytopeVertex {
  Kernel qx;    // Q_{X'|X}
  Kernel qy;    // Q_{Y'|Y}
  Mac induced;  // the channel both attacks induce
};

/// Vertices of the polytope of attack pairs inducing a common channel,
/// enumerated via active nonnegativity subsets; deduplicated within 1e-6.
/// The identity pair is always among the vertices. Vertex count is at most
/// 2^(|X|^2 + |Y|^2).
std::vector<PolytopeVertex> attack_polytope_vertices(const Mac& ch, uint64_t budget = uint64_t(1) << 20);

AvMac avmac_from_states(const std::vector<Mac>& states, const std::string& label = "");

struct JahnGridPoint {
  std::vector<double> px, py;
  double r1 = 0, r2 = 0, rsum = 0;  // per-term infima over the state grid
};

/// Rate-region sample of an AV-MAC: for every input-distribution pair on the
/// grid, each of the three mutual-information bounds is minimized separately
/// over state distributions on the state grid.
std::vector<JahnGridPoint> avmac_rate_region(const AvMac& ch, int input_grid, int state_grid);

}  // namespace byzmac
