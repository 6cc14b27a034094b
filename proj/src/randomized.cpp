#include "byzmac/codec.hpp"
#include "byzmac/rng.hpp"
#include "byzmac/sim.hpp"

namespace byzmac {

void RandomizedCode::validate() const {
  if (n <= 0 || N1 <= 0 || N2 <= 0) throw Error(Errc::ShapeMismatch, "randomized code sizes");
  if (encoders1.empty() || encoders2.empty())
    throw Error(Errc::ShapeMismatch, "randomized code needs at least one encoder per user");
  weights1.validate();
  weights2.validate();
  if (weights1.size() != L1() || weights2.size() != L2())
    throw Error(Errc::ShapeMismatch, "weights do not match encoder list sizes");
  for (const auto& enc : encoders1) {
    if (static_cast<int>(enc.size()) != N1) throw Error(Errc::ShapeMismatch, "encoder message count");
    for (const Word& w : enc)
      if (static_cast<int>(w.size()) != n) throw Error(Errc::LengthMismatch, "encoder word length");
  }
  for (const auto& enc : encoders2) {
    if (static_cast<int>(enc.size()) != N2) throw Error(Errc::ShapeMismatch, "encoder message count");
    for (const Word& w : enc)
      if (static_cast<int>(w.size()) != n) throw Error(Errc::LengthMismatch, "encoder word length");
  }
  if (!decode) throw Error(Errc::ShapeMismatch, "randomized code has no decoder");
}

RandomizedCode RandomizedCode::from_deterministic(const Codebook& cb, DecodeFn dec) {
  cb.validate();
  RandomizedCode rc;
  rc.n = cb.n;
  rc.N1 = cb.N1;
  rc.N2 = cb.N2;
  rc.encoders1 = {cb.words1};
  rc.encoders2 = {cb.words2};
  rc.weights1.probs = {1.0};
  rc.weights2.probs = {1.0};
  rc.decode = [d = std::move(dec)](int, int, const Word& z) { return d(z); };
  return rc;
}

DerandomizeResult derandomize(const RandomizedCode& rc, const Mac& ch, uint64_t seed,
                              uint64_t attack_budget) {
  rc.validate();
  const int L = rc.n * rc.n;

  auto sample_indices = [&](const DistributionVector& w, uint64_t stream) {
    std::vector<int> picks(L);
    Rng rng(Rng::derive(seed, stream));
    for (int i = 0; i < L; ++i) {
      double u = rng.next_double(), acc = 0;
      int pick = w.size() - 1;
      for (int j = 0; j < w.size(); ++j) {
        acc += w.probs[j];
        if (u < acc) {
          pick = j;
          break;
        }
      }
      picks[i] = pick;
    }
    return picks;
  };

  DerandomizeResult res;
  res.picks1 = sample_indices(rc.weights1, 1);
  res.picks2 = sample_indices(rc.weights2, 2);

  RandomizedCode& red = res.reduced;
  red.n = rc.n;
  red.N1 = rc.N1;
  red.N2 = rc.N2;
  for (int i = 0; i < L; ++i) {
    red.encoders1.push_back(rc.encoders1[res.picks1[i]]);
    red.encoders2.push_back(rc.encoders2[res.picks2[i]]);
  }
  red.weights1.probs.assign(L, 1.0 / L);
  red.weights2.probs.assign(L, 1.0 / L);
  red.decode = [orig = rc.decode, p1 = res.picks1, p2 = res.picks2](int l1, int l2, const Word& z) {
    return orig(p1[l1], p2[l2], z);
  };

  ErrorReport before = exact_error_probabilities_rand(rc, ch, nullptr, nullptr, attack_budget);
  ErrorReport after = exact_error_probabilities_rand(red, ch, nullptr, nullptr, attack_budget);
  res.before_hon = before.p_hon;
  res.before_mal1 = before.p_mal1;
  res.before_mal2 = before.p_mal2;
  res.after_hon = after.p_hon;
  res.after_mal1 = after.p_mal1;
  res.after_mal2 = after.p_mal2;
  return res;
}

CompositeCode compose_two_phase(const DeterministicCode& phase1, const RandomizedCode& phase2) {
  phase1.cb.validate();
  phase2.validate();
  if (phase1.cb.N1 != phase2.L1() || phase1.cb.N2 != phase2.L2())
    throw Error(Errc::SizeMismatch, "phase-1 message counts must equal phase-2 encoder counts");
  if (!phase1.decode) throw Error(Errc::ShapeMismatch, "phase-1 code has no decoder");

  CompositeCode cc;
  cc.n_prefix = phase1.cb.n;
  cc.n_suffix = phase2.n;
  cc.M1 = phase2.L1() * phase2.N1;
  cc.M2 = phase2.L2() * phase2.N2;

  cc.encode = [p1 = phase1.cb, p2n1 = phase2.N1, p2n2 = phase2.N2, e1 = phase2.encoders1,
               e2 = phase2.encoders2](int user, int m) {
    Word w;
    if (user == 1) {
      int l = m / p2n1, msg = m % p2n1;
      w = p1.words1[l];
      const Word& tail = e1[l][msg];
      w.insert(w.end(), tail.begin(), tail.end());
    } else {
      int l = m / p2n2, msg = m % p2n2;
      w = p1.words2[l];
      const Word& tail = e2[l][msg];
      w.insert(w.end(), tail.begin(), tail.end());
    }
    return w;
  };

  cc.decode = [dec1 = phase1.decode, dec2 = phase2.decode, kn = cc.n_prefix, L1 = phase2.L1(),
               L2 = phase2.L2(), N1 = phase2.N1, N2 = phase2.N2](const Word& zfull) {
    Word prefix(zfull.begin(), zfull.begin() + kn);
    Word suffix(zfull.begin() + kn, zfull.end());
    DecoderOutput first = dec1(prefix);
    if (first.kind != DecisionKind::Pair) {
      DecoderOutput o;
      o.kind = first.kind;
      return o;
    }
    int l1 = first.m1 - 1, l2 = first.m2 - 1;
    if (l1 < 0 || l1 >= L1 || l2 < 0 || l2 >= L2)
      throw Error(Errc::SizeMismatch, "phase-1 decoded index out of range");
    DecoderOutput second = dec2(l1, l2, suffix);
    if (second.kind == DecisionKind::Pair) {
      DecoderOutput o = second;
      o.m1 = l1 * N1 + second.m1;
      o.m2 = l2 * N2 + second.m2;
      return o;
    }
    return second;
  };
  return cc;
}

}  // namespace byzmac
