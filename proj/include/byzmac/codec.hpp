#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "byzmac/info.hpp"
#include "byzmac/mac.hpp"

namespace byzmac {

/// Deterministic (N1, N2, n) code with constant-composition codewords.
/// Message indices are 1-based at the interface (the fallback output is the
/// pair (1,1)); storage is 0-based.
struct Codebook {
  int n = 0;
  int N1 = 0, N2 = 0;
  std::vector<Word> words1, words2;
  DistributionVector comp1, comp2;

  void validate() const;  // exact empirical types must match comp1/comp2
};

struct DecoderParams {
  double eta = 0.5;
  double epsilon = 0.5 / 8;  // rate/type slacks; default eta/8
  double delta = 0.5 / 8;
  double alpha = 0.0;  // minimum composition mass; 0 disables the check
  uint64_t cell_budget = uint64_t(1) << 24;

  static DecoderParams from_eta(double eta_value) {
    DecoderParams p;
    p.eta = eta_value;
    p.epsilon = p.delta = eta_value / 8;
    return p;
  }
  void validate(const Codebook* cb = nullptr) const;  // eta > 3 eps + 4 delta, alpha
};

enum class DecisionKind { Pair, Blame1, Blame2 };

struct DecoderOutput {
  DecisionKind kind = DecisionKind::Pair;
  int m1 = 1, m2 = 1;  // 1-based; meaningful when kind == Pair
  bool fallback = false;            // Pair(1,1) produced by the "otherwise" rule
  bool fallback_ambiguous = false;  // otherwise-cause: candidates on both sides with >= 3 total
  std::vector<int> d1, d2;          // candidate sets (1-based message ids)
  std::vector<int> chain1, chain2;  // five-step set sizes {|A1|,|A2|,|A3|} / {|B1|,|B2|,|B3|}

  bool is_pair(int want1, int want2) const {
    return kind == DecisionKind::Pair && m1 == want1 && m2 == want2;
  }
};

using DecodeFn = std::function<DecoderOutput(const Word&)>;

/// Each codeword drawn independently and uniformly from the exact type class
/// of its composition. Deterministic given seed; duplicates permitted.
Codebook generate_constant_composition_codebook(const DistributionVector& comp1,
                                                const DistributionVector& comp2, int n, int N1, int N2,
                                                uint64_t seed);

/// Adversary-identifying typicality decoder: candidate sets D1/D2 from the
/// divergence test plus the two mutual-information viability conditions, then
/// the four-case output rule.
DecoderOutput decode_feasibility(const Codebook& cb, const Mac& ch, const Word& z,
                                 const DecoderParams& params);

enum class StepOrder { Step2First, Step3First };

/// Ordered five-step decoder: candidate collection then sequential pruning
/// (A3 in A2 in A1, B3 in B2 in B1); Step3First runs the user-swapped mirror
/// and yields the other rate-region corner.
DecoderOutput decode_five_step(const Codebook& cb, const Mac& ch, const Word& z,
                               const DecoderParams& params, StepOrder order = StepOrder::Step2First);

/// Decreases eta geometrically (factor 2 from eta_start) until an exhaustive
/// sweep over Z^n shows no uniqueness violation (candidates on both sides with
/// three or more in total); returns the accepted eta.
/// Throws TooLarge if no ladder step passes within max_steps.
double eta_search(const Codebook& cb, const Mac& ch, double eta_start = 0.5, int max_steps = 20,
                  uint64_t cell_budget = uint64_t(1) << 24);

/// The weight-1 / weight-(n-1) code for the binary erasure MAC together with
/// its output-sum decoder.
struct ErasureExampleCode {
  Codebook cb;     // words1[i] = e_i, words2[i] = complement(e_i), N1 = N2 = n
  DecodeFn decode; // the sum-threshold rule
};
ErasureExampleCode build_erasure_example_code(int n);
DecoderOutput erasure_example_decode(int n, const Word& z);

// ---- codebook audit ----

struct AuditRecord {
  std::string property;  // "codebook:1" ... "codebook:5q"
  bool vacuous = true;   // no quantified instance activated the hypothesis
  bool pass = true;
  double worst_ratio = 0.0;  // max over active instances of lhs / threshold
  double worst_lhs = 0.0;
  double worst_threshold = 0.0;
  std::string worst_instance;
};

/// Exhaustively evaluates the ten random-codebook properties (five plus the
/// user-swapped mirrors) at this blocklength: for every external vector and
/// realized joint type, the counted left side is compared against the
/// property's threshold whenever its hypothesis clause is active.
std::vector<AuditRecord> audit_codebook(const Codebook& cb, double epsilon,
                                        uint64_t cell_budget = uint64_t(1) << 24);

// ---- randomized codes ----

/// Collections of deterministic encoders with shared-randomness indices;
/// the decoder may depend on the realized encoder pair.
struct RandomizedCode {
  int n = 0, N1 = 0, N2 = 0;
  std::vector<std::vector<Word>> encoders1, encoders2;  // [l][message 0-based]
  DistributionVector weights1, weights2;
  std::function<DecoderOutput(int l1, int l2, const Word& z)> decode;

  int L1() const { return static_cast<int>(encoders1.size()); }
  int L2() const { return static_cast<int>(encoders2.size()); }
  void validate() const;

  static RandomizedCode from_deterministic(const Codebook& cb, DecodeFn dec);
};

struct ErrorReport;  // sim.hpp

struct DerandomizeResult {
  RandomizedCode reduced;  // L1 = L2 = n^2, uniform weights
  std::vector<int> picks1, picks2;
  // exact error probabilities of the original and the reduced code
  double before_hon = 0, before_mal1 = 0, before_mal2 = 0;
  double after_hon = 0, after_mal1 = 0, after_mal2 = 0;
};

/// Samples n^2 encoders per user i.i.d. from the code's weights and measures
/// the three exact error probabilities before and after.
DerandomizeResult derandomize(const RandomizedCode& rc, const Mac& ch, uint64_t seed,
                              uint64_t attack_budget = uint64_t(1) << 24);

/// Two-phase composition: a short deterministic code delivers the shared
/// randomness indices, then the reduced randomized code carries the payload.
/// Blame verdicts from phase 1 propagate unchanged.
struct DeterministicCode {
  Codebook cb;
  DecodeFn decode;
};

struct CompositeCode {
  int n_prefix = 0, n_suffix = 0;
  int M1 = 0, M2 = 0;  // composite message counts (L * N)
  std::function<Word(int user, int m)> encode;  // m 0-based
  DecodeFn decode;
};

CompositeCode compose_two_phase(const DeterministicCode& phase1, const RandomizedCode& phase2);

// ---- small helpers shared by decoders and sim ----

/// Iterates all words in alphabet^n in lexicographic order.
class WordIter {
 public:
  WordIter(int alphabet, int n) : alphabet_(alphabet), w_(n, 0), done_(n == 0) {}
  bool done() const { return done_; }
  const Word& word() const { return w_; }
  void next() {
    for (int i = static_cast<int>(w_.size()) - 1; i >= 0; --i) {
      if (++w_[i] < alphabet_) return;
      w_[i] = 0;
    }
    done_ = true;
  }

 private:
  int alphabet_;
  Word w_;
  bool done_;
};

double pow_count(int alphabet, int n);  // alphabet^n as double (for budget checks)

}  // namespace byzmac
