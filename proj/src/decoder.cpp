#include <algorithm>
#include <cmath>

#include "byzmac/codec.hpp"

namespace byzmac {

void DecoderParams::validate(const Codebook* cb) const {
  if (eta <= 0 || epsilon < 0 || delta < 0) throw Error(Errc::ShapeMismatch, "eta must be positive");
  if (!(eta > 3 * epsilon + 4 * delta))
    throw Error(Errc::ShapeMismatch, "decoder slacks must satisfy eta > 3*epsilon + 4*delta");
  if (alpha > 0 && cb) {
    for (double p : cb->comp1.probs)
      if (p < alpha) throw Error(Errc::ShapeMismatch, "comp1 mass below alpha");
    for (double p : cb->comp2.probs)
      if (p < alpha) throw Error(Errc::ShapeMismatch, "comp2 mass below alpha");
  }
}

namespace {

// One user's side of the decoding problem: codewords of the candidate user A,
// the other user's codewords B, and the channel viewed as W(z | a, b).
struct DecodeView {
  const std::vector<Word>* wa;
  const std::vector<Word>* wb;
  int na, nb;
  int sa, sb, sz;
  const Mac* ch;  // already transposed for the user-2 view
};

// Divergence D(type(a, b, z) || P_A P_B W) <= eta, the candidate condition.
bool typical(const DecodeView& v, const Word& a, const Word& b, const Word& z, double eta) {
  JointType t = joint_type({&a, &b, &z}, {v.sa, v.sb, v.sz});
  return divergence_vs_channel(t, *v.ch).leq(eta);
}

// Existence of any consistent partner vector for each message (condition (i)
// and its mirror, also the membership test of the five-step Step 1).
std::vector<char> consistent_flags(const DecodeView& v, const Word& z, double eta) {
  std::vector<char> flags(v.na, 0);
  for (int m = 0; m < v.na; ++m) {
    for (WordIter it(v.sb, static_cast<int>(z.size())); !it.done(); it.next()) {
      if (typical(v, (*v.wa)[m], it.word(), z, eta)) {
        flags[m] = 1;
        break;
      }
    }
  }
  return flags;
}

double mi5(const std::vector<const Word*>& vs, const std::vector<int>& sizes,
           const std::vector<int>& ga, const std::vector<int>& gb, const std::vector<int>& gc) {
  return mutual_information(joint_type(vs, sizes), ga, gb, gc);
}

// Candidate set of user A per the typicality decoder: a message enters if some
// witness vector satisfies the divergence test and every competing explanation
// keeps the two conditional mutual informations below eta.
std::vector<int> candidate_set(const DecodeView& v, const Word& z, double eta,
                               const std::vector<char>& cons_a, const std::vector<char>& cons_b) {
  const int n = static_cast<int>(z.size());
  std::vector<int> out;
  const std::vector<int> sizes5 = {v.sa, v.sb, v.sa, v.sb, v.sz};  // (A, B, A~, B~, Z)
  const std::vector<int> sizes5b = {v.sa, v.sb, v.sb, v.sb, v.sz};  // (A, B, B~1, B~2, Z)
  for (int m = 0; m < v.na; ++m) {
    if (!cons_a[m]) continue;
    bool member = false;
    for (WordIter it(v.sb, n); !it.done() && !member; it.next()) {
      const Word& witness = it.word();
      if (!typical(v, (*v.wa)[m], witness, z, eta)) continue;
      bool ok = true;
      // competing pair: another own message plus any other-user message
      for (int mt = 0; mt < v.na && ok; ++mt) {
        if (mt == m || !cons_a[mt]) continue;
        for (int mb = 0; mb < v.nb && ok; ++mb) {
          if (!cons_b[mb]) continue;
          double i = mi5({&(*v.wa)[m], &witness, &(*v.wa)[mt], &(*v.wb)[mb], &z}, sizes5, {2, 3},
                         {0, 4}, {1});
          if (i >= eta) ok = false;
        }
      }
      // competing pair of other-user messages
      for (int m1 = 0; m1 < v.nb && ok; ++m1) {
        if (!cons_b[m1]) continue;
        for (int m2 = m1 + 1; m2 < v.nb && ok; ++m2) {
          if (!cons_b[m2]) continue;
          double i = mi5({&(*v.wa)[m], &witness, &(*v.wb)[m1], &(*v.wb)[m2], &z}, sizes5b, {2, 3},
                         {0, 4}, {1});
          if (i >= eta) ok = false;
        }
      }
      member = ok;
    }
    if (member) out.push_back(m + 1);
  }
  return out;
}

void check_budget(const Mac& ch, int n, uint64_t budget) {
  double cells = pow_count(ch.nx, n) * pow_count(ch.ny, n) * pow_count(ch.nz, n);
  if (cells > static_cast<double>(budget))
    throw Error(Errc::TooLarge, "exhaustive decoding needs " + std::to_string(cells) +
                                    " cells, budget is " + std::to_string(budget));
}

void check_z(const Codebook& cb, const Mac& ch, const Word& z) {
  if (static_cast<int>(z.size()) != cb.n)
    throw Error(Errc::LengthMismatch, "received vector length does not match the blocklength");
  for (Symbol s : z)
    if (s < 0 || s >= ch.nz) throw Error(Errc::SymbolOutOfRange, "received symbol out of range");
  if (cb.comp1.size() != ch.nx || cb.comp2.size() != ch.ny)
    throw Error(Errc::AlphabetMismatch, "codebook alphabets do not match the channel");
}

DecoderOutput output_rule(std::vector<int> d1, std::vector<int> d2) {
  DecoderOutput o;
  o.d1 = std::move(d1);
  o.d2 = std::move(d2);
  if (o.d1.size() == 1 && o.d2.size() == 1) {
    o.kind = DecisionKind::Pair;
    o.m1 = o.d1[0];
    o.m2 = o.d2[0];
  } else if (o.d1.empty() && !o.d2.empty()) {
    o.kind = DecisionKind::Blame1;
  } else if (o.d2.empty() && !o.d1.empty()) {
    o.kind = DecisionKind::Blame2;
  } else {
    o.kind = DecisionKind::Pair;
    o.m1 = o.m2 = 1;
    o.fallback = true;
    o.fallback_ambiguous = !o.d1.empty();  // both non-empty with >= 3 in total
  }
  return o;
}

}  // namespace

DecoderOutput decode_feasibility(const Codebook& cb, const Mac& ch, const Word& z,
                                 const DecoderParams& params) {
  cb.validate();
  params.validate(&cb);
  check_z(cb, ch, z);
  check_budget(ch, cb.n, params.cell_budget);

  Mac tr = ch.transposed();
  DecodeView v1{&cb.words1, &cb.words2, cb.N1, cb.N2, ch.nx, ch.ny, ch.nz, &ch};
  DecodeView v2{&cb.words2, &cb.words1, cb.N2, cb.N1, ch.ny, ch.nx, ch.nz, &tr};
  std::vector<char> cons1 = consistent_flags(v1, z, params.eta);
  std::vector<char> cons2 = consistent_flags(v2, z, params.eta);
  return output_rule(candidate_set(v1, z, params.eta, cons1, cons2),
                     candidate_set(v2, z, params.eta, cons2, cons1));
}

namespace {

// Sequential pruning. A candidate is removed from step k when some competing
// tuple admitted by the current sets explains the output strictly better
// (conditional mutual information at least eta).
struct FiveStepSets {
  std::vector<int> a1, a2, a3, b1, b2, b3;  // 1-based ids
};

FiveStepSets five_step_core(const DecodeView& v1, const DecodeView& v2, const Word& z, double eta) {
  const int n = static_cast<int>(z.size());
  FiveStepSets s;
  std::vector<char> cons1 = consistent_flags(v1, z, eta);
  std::vector<char> cons2 = consistent_flags(v2, z, eta);
  for (int m = 0; m < v1.na; ++m)
    if (cons1[m]) s.a1.push_back(m + 1);
  for (int m = 0; m < v2.na; ++m)
    if (cons2[m]) s.b1.push_back(m + 1);

  // Removal test against a pair of candidates of the same user (Steps 2/3):
  // exists a witness with the divergence test and I(pair; own Z | witness) >= eta.
  auto pair_removes = [&](const DecodeView& v, int m /*0-based own*/, const std::vector<int>& pool,
                          const std::vector<Word>& pool_words) {
    const std::vector<int> sizes = {v.sa, v.sb, v.sb, v.sb, v.sz};
    for (size_t i = 0; i < pool.size(); ++i)
      for (size_t j = i + 1; j < pool.size(); ++j) {
        for (WordIter it(v.sb, n); !it.done(); it.next()) {
          if (!typical(v, (*v.wa)[m], it.word(), z, eta)) continue;
          double mi = mi5({&(*v.wa)[m], &it.word(), &pool_words[pool[i] - 1], &pool_words[pool[j] - 1],
                           &z},
                          sizes, {2, 3}, {0, 4}, {1});
          if (mi >= eta) return true;
        }
      }
    return false;
  };
  // Removal test against (other own candidate, other-user candidate) (Steps 4/5).
  auto cross_removes = [&](const DecodeView& v, int m, const std::vector<int>& own_pool,
                           const std::vector<int>& other_pool) {
    const std::vector<int> sizes = {v.sa, v.sb, v.sa, v.sb, v.sz};
    for (int mt : own_pool) {
      if (mt == m + 1) continue;
      for (int mb : other_pool) {
        for (WordIter it(v.sb, n); !it.done(); it.next()) {
          if (!typical(v, (*v.wa)[m], it.word(), z, eta)) continue;
          double mi = mi5({&(*v.wa)[m], &it.word(), &(*v.wa)[mt - 1], &(*v.wb)[mb - 1], &z}, sizes,
                          {2, 3}, {0, 4}, {1});
          if (mi >= eta) return true;
        }
      }
    }
    return false;
  };

  for (int m : s.a1)
    if (!pair_removes(v1, m - 1, s.b1, *v1.wb)) s.a2.push_back(m);
  for (int m : s.b1)
    if (!pair_removes(v2, m - 1, s.a2, *v2.wb)) s.b2.push_back(m);
  for (int m : s.a2)
    if (!cross_removes(v1, m - 1, s.a2, s.b2)) s.a3.push_back(m);
  for (int m : s.b2)
    if (!cross_removes(v2, m - 1, s.b2, s.a3)) s.b3.push_back(m);
  return s;
}

}  // namespace

DecoderOutput decode_five_step(const Codebook& cb, const Mac& ch, const Word& z,
                               const DecoderParams& params, StepOrder order) {
  cb.validate();
  params.validate(&cb);
  check_z(cb, ch, z);
  check_budget(ch, cb.n, params.cell_budget);

  Mac tr = ch.transposed();
  DecodeView v1{&cb.words1, &cb.words2, cb.N1, cb.N2, ch.nx, ch.ny, ch.nz, &ch};
  DecodeView v2{&cb.words2, &cb.words1, cb.N2, cb.N1, ch.ny, ch.nx, ch.nz, &tr};

  FiveStepSets s;
  bool swapped = (order == StepOrder::Step3First);
  if (!swapped) {
    s = five_step_core(v1, v2, z, params.eta);
  } else {
    FiveStepSets m = five_step_core(v2, v1, z, params.eta);
    s.a1 = m.b1;
    s.a2 = m.b2;
    s.a3 = m.b3;
    s.b1 = m.a1;
    s.b2 = m.a2;
    s.b3 = m.a3;
  }

  DecoderOutput o = output_rule(s.a3, s.b3);
  o.chain1 = {static_cast<int>(s.a1.size()), static_cast<int>(s.a2.size()),
              static_cast<int>(s.a3.size())};
  o.chain2 = {static_cast<int>(s.b1.size()), static_cast<int>(s.b2.size()),
              static_cast<int>(s.b3.size())};
  return o;
}

double eta_search(const Codebook& cb, const Mac& ch, double eta_start, int max_steps,
                  uint64_t cell_budget) {
  cb.validate();
  check_budget(ch, cb.n, cell_budget);
  double eta = eta_start;
  for (int step = 0; step < max_steps; ++step, eta /= 2) {
    DecoderParams p = DecoderParams::from_eta(eta);
    p.cell_budget = cell_budget;
    bool violated = false;
    for (WordIter it(ch.nz, cb.n); !it.done() && !violated; it.next()) {
      DecoderOutput o = decode_feasibility(cb, ch, it.word(), p);
      if (!o.d1.empty() && !o.d2.empty() && o.d1.size() + o.d2.size() >= 3) violated = true;
    }
    if (!violated) return eta;
  }
  throw Error(Errc::TooLarge, "eta search found no uniqueness-violation-free eta in " +
                                  std::to_string(max_steps) + " halvings from " +
                                  std::to_string(eta_start));
}

}  // namespace byzmac
