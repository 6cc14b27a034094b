#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "byzmac/codec.hpp"
#include "byzmac/mac.hpp"

namespace byzmac {

/// Exact or estimated error probabilities of a code/decoder/channel triple.
struct ErrorReport {
  double p_hon = 0, p_mal1 = 0, p_mal2 = 0;
  double p_e = 0;  // max of the three
  std::string mode;  // "exact" or "monte_carlo"

  // exact mode
  bool mal1_is_exact_max = true;  // false when an explicit attack list was supplied
  bool mal2_is_exact_max = true;
  Word worst_attack1, worst_attack2;

  // monte_carlo mode
  uint64_t trials = 0;
  uint64_t seed = 0;
  std::string scenario;  // "honest" | "mal1" | "mal2"
  double half_width_hon = 0, half_width_mal1 = 0, half_width_mal2 = 0;

  void finalize() { p_e = std::max(p_hon, std::max(p_mal1, p_mal2)); }
};

/// Generic view of a deterministic code for evaluation purposes.
struct CodeView {
  int n = 0, M1 = 0, M2 = 0;
  std::function<Word(int m)> word1, word2;  // 0-based message index
  DecodeFn decode;

  static CodeView of(const Codebook& cb, DecodeFn dec);
  static CodeView of(const CompositeCode& cc);
};

/// Exact evaluation: the honest average and, for each malicious user, the
/// maximum over the full adversary space (or a supplied vector list, in which
/// case the result is a lower bound on the true maximum and flagged as such).
ErrorReport exact_error_probabilities(const CodeView& code, const Mac& ch,
                                      const std::vector<Word>* attacks1 = nullptr,
                                      const std::vector<Word>* attacks2 = nullptr,
                                      uint64_t budget = uint64_t(1) << 30);

ErrorReport exact_error_probabilities(const Codebook& cb, const DecodeFn& dec, const Mac& ch,
                                      const std::vector<Word>* attacks1 = nullptr,
                                      const std::vector<Word>* attacks2 = nullptr,
                                      uint64_t budget = uint64_t(1) << 30);

/// Exact evaluation of a randomized code under the shared-randomness error
/// definitions: the adversary picks its own encoder realization and channel
/// input; honest users average over encoders and messages.
ErrorReport exact_error_probabilities_rand(const RandomizedCode& rc, const Mac& ch,
                                           const std::vector<Word>* attacks1 = nullptr,
                                           const std::vector<Word>* attacks2 = nullptr,
                                           uint64_t budget = uint64_t(1) << 30);

/// Adversary strategies for simulation.
struct Attack {
  enum class Kind { DeterministicVector, MemorylessKernel, SpoofPair };
  int user = 1;  // which user deviates
  Kind kind = Kind::DeterministicVector;
  Word vector;         // DeterministicVector
  Kernel letter_dist;  // MemorylessKernel: empty input shape = i.i.d. letters;
                       // input shape {own alphabet} = applied letterwise to a
                       // uniformly drawn own codeword
  Kernel spoof_a;      // SpoofPair: the simulation kernel fed with a spurious
                       // own-codebook word and the honest codebook word
  // user 1 attacking: x ~ prod_t spoof_a(.| x_i(t), x_j(t)) with (i,j) uniform
  // user 2 attacking: y ~ prod_t spoof_a(.| x_j(t), y_k(t)) with (j,k) uniform
};

/// Seeded Monte Carlo estimate of one scenario ("honest" or the given
/// attack). Per-trial seeds are derived from (seed, trial index), so the
/// estimate is independent of worker count. Reports a 95% normal-approximation
/// half-width.
ErrorReport monte_carlo_error(const Codebook& cb, const DecodeFn& dec, const Mac& ch,
                              const std::optional<Attack>& strategy, uint64_t trials, uint64_t seed,
                              int workers = 1);

}  // namespace byzmac
