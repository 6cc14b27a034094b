#pragma once

#include <vector>

#include "byzmac/codec.hpp"
#include "byzmac/mac.hpp"

namespace byzmac {

/// A spoofing attack pair. For user 1 (the spoofed sender):
///   sim_kernel   = Q_{Y|X~Y~} (inputs X,Y -> Y), the other user's simulation
///   own_kernel   = Q_{X|X~X'} (inputs X,X -> X), the spoofed user's attack
/// For user 2 the roles mirror: sim_kernel = Q_{X|X~Y~}, own_kernel = Q_{Y|Y~Y'}.
struct SpoofPair {
  int user = 1;
  Kernel sim_kernel;
  Kernel own_kernel;
};

struct SpoofDists {
  std::vector<double> p_ijk;  // honest i, adversary simulates (j, k)
  std::vector<double> p_jik;  // honest j, adversary simulates (i, k)
  std::vector<double> q_ijk;  // honest k, spoofed user attacks with (i, j)
};

/// Exact n-letter output distributions of the converse's three scenarios for
/// messages (i, j, k), 1-based; each vector is indexed by the lexicographic
/// rank of z in Z^n and sums to one.
SpoofDists spoof_output_dists(const Codebook& cb, const Mac& ch, const SpoofPair& pair, int i, int j,
                              int k, uint64_t budget = uint64_t(1) << 26);

struct ConverseBoundReport {
  // averaged error sums of the proof's three scenarios (uniform i, j, k)
  double mal2_scenario_a = 0;  // honest i, spurious (j,k)
  double mal2_scenario_b = 0;  // roles of i and j exchanged
  double mal1_scenario = 0;    // honest k, spoofed user attacks
  double lhs = 0;              // sum of the three
  double rhs = 0;              // (N-1)/(2N) for the spoofed user's message count
  double pe_lower = 0;         // rhs / 3
  bool holds = false;          // lhs >= rhs - 1e-9
};

/// Evaluates the converse chain exactly for a code and decoder on a channel
/// with the given spoofing pair. Requires at least two messages for the
/// spoofed user.
ConverseBoundReport converse_bound_eval(const Codebook& cb, const DecodeFn& dec, const Mac& ch,
                                        const SpoofPair& pair, uint64_t budget = uint64_t(1) << 26);

/// Privately randomized encoders: the scenario distributions average exactly
/// over the encoder weights (the spoofed user's two draws are independent
/// copies). The decoder is a fixed deterministic map.
SpoofDists spoof_output_dists(const RandomizedCode& rc, const Mac& ch, const SpoofPair& pair, int i,
                              int j, int k, uint64_t budget = uint64_t(1) << 26);
ConverseBoundReport converse_bound_eval(const RandomizedCode& rc, const DecodeFn& dec, const Mac& ch,
                                        const SpoofPair& pair, uint64_t budget = uint64_t(1) << 26);

}  // namespace byzmac
