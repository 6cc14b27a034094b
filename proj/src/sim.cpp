#include <cmath>
#include <thread>

#include "byzmac/rng.hpp"
#include "byzmac/sim.hpp"

namespace byzmac {

namespace {

// Compact per-z decode record.
struct Decision {
  DecisionKind kind;
  int m1, m2;  // 1-based
};

bool err_hon(const Decision& d, int m1, int m2) {  // m 1-based
  return !(d.kind == DecisionKind::Pair && d.m1 == m1 && d.m2 == m2);
}
bool err_mal1(const Decision& d, int m2) {  // user 1 malicious
  return !(d.kind == DecisionKind::Blame1 || (d.kind == DecisionKind::Pair && d.m2 == m2));
}
bool err_mal2(const Decision& d, int m1) {  // user 2 malicious
  return !(d.kind == DecisionKind::Blame2 || (d.kind == DecisionKind::Pair && d.m1 == m1));
}

size_t z_rank(const Word& z, int nz) {
  size_t r = 0;
  for (Symbol s : z) r = r * nz + s;
  return r;
}

std::vector<Decision> decode_all(const DecodeFn& dec, int nz, int n) {
  size_t total = 1;
  for (int t = 0; t < n; ++t) total *= nz;
  std::vector<Decision> out;
  out.reserve(total);
  for (WordIter it(nz, n); !it.done(); it.next()) {
    DecoderOutput o = dec(it.word());
    out.push_back({o.kind, o.m1, o.m2});
  }
  return out;
}

// Probability-weighted error sum over all z for fixed channel inputs.
double error_mass(const Mac& ch, const Word& x, const Word& y, const std::vector<Decision>& dz,
                  const std::function<bool(const Decision&)>& is_err) {
  double p = 0;
  size_t idx = 0;
  for (WordIter it(ch.nz, static_cast<int>(x.size())); !it.done(); it.next(), ++idx) {
    if (!is_err(dz[idx])) continue;
    double w = product_channel_prob(ch, x, y, it.word());
    p += w;
  }
  return p;
}

}  // namespace

CodeView CodeView::of(const Codebook& cb, DecodeFn dec) {
  cb.validate();
  CodeView v;
  v.n = cb.n;
  v.M1 = cb.N1;
  v.M2 = cb.N2;
  v.word1 = [words = cb.words1](int m) { return words[m]; };
  v.word2 = [words = cb.words2](int m) { return words[m]; };
  v.decode = std::move(dec);
  return v;
}

CodeView CodeView::of(const CompositeCode& cc) {
  CodeView v;
  v.n = cc.n_prefix + cc.n_suffix;
  v.M1 = cc.M1;
  v.M2 = cc.M2;
  v.word1 = [enc = cc.encode](int m) { return enc(1, m); };
  v.word2 = [enc = cc.encode](int m) { return enc(2, m); };
  v.decode = cc.decode;
  return v;
}

ErrorReport exact_error_probabilities(const CodeView& code, const Mac& ch,
                                      const std::vector<Word>* attacks1,
                                      const std::vector<Word>* attacks2, uint64_t budget) {
  const int n = code.n;
  double zspace = pow_count(ch.nz, n);
  double a1 = attacks1 ? static_cast<double>(attacks1->size()) : pow_count(ch.nx, n);
  double a2 = attacks2 ? static_cast<double>(attacks2->size()) : pow_count(ch.ny, n);
  double work = zspace * (static_cast<double>(code.M1) * code.M2 + a1 * code.M2 + a2 * code.M1 + 1);
  if (work > static_cast<double>(budget))
    throw Error(Errc::TooLarge, "exact evaluation needs ~" + std::to_string(work) + " steps");

  std::vector<Decision> dz = decode_all(code.decode, ch.nz, n);

  ErrorReport r;
  r.mode = "exact";
  // honest
  double hon = 0;
  for (int m1 = 0; m1 < code.M1; ++m1) {
    Word x = code.word1(m1);
    for (int m2 = 0; m2 < code.M2; ++m2) {
      Word y = code.word2(m2);
      hon += error_mass(ch, x, y, dz,
                        [&](const Decision& d) { return err_hon(d, m1 + 1, m2 + 1); });
    }
  }
  r.p_hon = hon / (static_cast<double>(code.M1) * code.M2);

  // user 1 malicious: maximize over x
  auto eval_mal1 = [&](const Word& x) {
    double s = 0;
    for (int m2 = 0; m2 < code.M2; ++m2) {
      Word y = code.word2(m2);
      s += error_mass(ch, x, y, dz, [&](const Decision& d) { return err_mal1(d, m2 + 1); });
    }
    return s / code.M2;
  };
  r.mal1_is_exact_max = (attacks1 == nullptr);
  if (attacks1) {
    for (const Word& x : *attacks1) {
      double v = eval_mal1(x);
      if (v >= r.p_mal1) {
        r.p_mal1 = v;
        r.worst_attack1 = x;
      }
    }
  } else {
    for (WordIter it(ch.nx, n); !it.done(); it.next()) {
      double v = eval_mal1(it.word());
      if (v > r.p_mal1) {
        r.p_mal1 = v;
        r.worst_attack1 = it.word();
      }
    }
  }

  // user 2 malicious: maximize over y
  auto eval_mal2 = [&](const Word& y) {
    double s = 0;
    for (int m1 = 0; m1 < code.M1; ++m1) {
      Word x = code.word1(m1);
      s += error_mass(ch, x, y, dz, [&](const Decision& d) { return err_mal2(d, m1 + 1); });
    }
    return s / code.M1;
  };
  r.mal2_is_exact_max = (attacks2 == nullptr);
  if (attacks2) {
    for (const Word& y : *attacks2) {
      double v = eval_mal2(y);
      if (v >= r.p_mal2) {
        r.p_mal2 = v;
        r.worst_attack2 = y;
      }
    }
  } else {
    for (WordIter it(ch.ny, n); !it.done(); it.next()) {
      double v = eval_mal2(it.word());
      if (v > r.p_mal2) {
        r.p_mal2 = v;
        r.worst_attack2 = it.word();
      }
    }
  }

  r.finalize();
  return r;
}

ErrorReport exact_error_probabilities(const Codebook& cb, const DecodeFn& dec, const Mac& ch,
                                      const std::vector<Word>* attacks1,
                                      const std::vector<Word>* attacks2, uint64_t budget) {
  return exact_error_probabilities(CodeView::of(cb, dec), ch, attacks1, attacks2, budget);
}

ErrorReport exact_error_probabilities_rand(const RandomizedCode& rc, const Mac& ch,
                                           const std::vector<Word>* attacks1,
                                           const std::vector<Word>* attacks2, uint64_t budget) {
  rc.validate();
  const int n = rc.n;
  const int L1 = rc.L1(), L2 = rc.L2();
  double zspace = pow_count(ch.nz, n);
  double a1 = attacks1 ? static_cast<double>(attacks1->size()) : pow_count(ch.nx, n);
  double a2 = attacks2 ? static_cast<double>(attacks2->size()) : pow_count(ch.ny, n);
  double work = zspace * static_cast<double>(L1) * L2 *
                (static_cast<double>(rc.N1) * rc.N2 + a1 * rc.N2 + a2 * rc.N1 + 1);
  if (work > static_cast<double>(budget))
    throw Error(Errc::TooLarge, "exact randomized evaluation needs ~" + std::to_string(work) + " steps");

  // Per-encoder-pair decode tables.
  std::vector<std::vector<Decision>> dz(static_cast<size_t>(L1) * L2);
  for (int l1 = 0; l1 < L1; ++l1)
    for (int l2 = 0; l2 < L2; ++l2)
      dz[static_cast<size_t>(l1) * L2 + l2] =
          decode_all([&](const Word& z) { return rc.decode(l1, l2, z); }, ch.nz, n);

  ErrorReport r;
  r.mode = "exact";
  // honest: average over weights, messages
  double hon = 0;
  for (int l1 = 0; l1 < L1; ++l1)
    for (int l2 = 0; l2 < L2; ++l2) {
      const auto& table = dz[static_cast<size_t>(l1) * L2 + l2];
      double w = rc.weights1.probs[l1] * rc.weights2.probs[l2];
      if (w == 0) continue;
      double s = 0;
      for (int m1 = 0; m1 < rc.N1; ++m1)
        for (int m2 = 0; m2 < rc.N2; ++m2)
          s += error_mass(ch, rc.encoders1[l1][m1], rc.encoders2[l2][m2], table,
                          [&](const Decision& d) { return err_hon(d, m1 + 1, m2 + 1); });
      hon += w * s / (static_cast<double>(rc.N1) * rc.N2);
    }
  r.p_hon = hon;

  // user 1 malicious: picks x and its own encoder realization l1
  auto eval_mal1 = [&](const Word& x, int l1) {
    double s = 0;
    for (int l2 = 0; l2 < L2; ++l2) {
      const auto& table = dz[static_cast<size_t>(l1) * L2 + l2];
      double w = rc.weights2.probs[l2];
      if (w == 0) continue;
      double t = 0;
      for (int m2 = 0; m2 < rc.N2; ++m2)
        t += error_mass(ch, x, rc.encoders2[l2][m2], table,
                        [&](const Decision& d) { return err_mal1(d, m2 + 1); });
      s += w * t / rc.N2;
    }
    return s;
  };
  r.mal1_is_exact_max = (attacks1 == nullptr);
  auto scan_mal1 = [&](const Word& x) {
    for (int l1 = 0; l1 < L1; ++l1) {
      double v = eval_mal1(x, l1);
      if (v > r.p_mal1) {
        r.p_mal1 = v;
        r.worst_attack1 = x;
      }
    }
  };
  if (attacks1)
    for (const Word& x : *attacks1) scan_mal1(x);
  else
    for (WordIter it(ch.nx, n); !it.done(); it.next()) scan_mal1(it.word());

  auto eval_mal2 = [&](const Word& y, int l2) {
    double s = 0;
    for (int l1 = 0; l1 < L1; ++l1) {
      const auto& table = dz[static_cast<size_t>(l1) * L2 + l2];
      double w = rc.weights1.probs[l1];
      if (w == 0) continue;
      double t = 0;
      for (int m1 = 0; m1 < rc.N1; ++m1)
        t += error_mass(ch, rc.encoders1[l1][m1], y, table,
                        [&](const Decision& d) { return err_mal2(d, m1 + 1); });
      s += w * t / rc.N1;
    }
    return s;
  };
  r.mal2_is_exact_max = (attacks2 == nullptr);
  auto scan_mal2 = [&](const Word& y) {
    for (int l2 = 0; l2 < L2; ++l2) {
      double v = eval_mal2(y, l2);
      if (v > r.p_mal2) {
        r.p_mal2 = v;
        r.worst_attack2 = y;
      }
    }
  };
  if (attacks2)
    for (const Word& y : *attacks2) scan_mal2(y);
  else
    for (WordIter it(ch.ny, n); !it.done(); it.next()) scan_mal2(it.word());

  r.finalize();
  return r;
}

namespace {

Symbol sample_from_row(const Kernel& k, int row, double u) {
  double acc = 0;
  for (int o = 0; o < k.output_size; ++o) {
    acc += k(row, o);
    if (u < acc) return o;
  }
  return k.output_size - 1;
}

Symbol sample_dist(const std::vector<double>& p, double u) {
  double acc = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return static_cast<Symbol>(i);
  }
  return static_cast<Symbol>(p.size() - 1);
}

}  // namespace

ErrorReport monte_carlo_error(const Codebook& cb, const DecodeFn& dec, const Mac& ch,
                              const std::optional<Attack>& strategy, uint64_t trials, uint64_t seed,
                              int workers) {
  cb.validate();
  if (trials < 1) throw Error(Errc::ShapeMismatch, "trials must be >= 1");
  if (workers < 1) workers = 1;
  const int n = cb.n;
  const bool honest = !strategy.has_value();
  if (!honest && strategy->user != 1 && strategy->user != 2)
    throw Error(Errc::ShapeMismatch, "attack user must be 1 or 2");

  // One trial; per-trial RNG derived from (seed, index) so any partition of
  // trials over workers yields the same counts.
  auto run_trial = [&](uint64_t trial) -> bool {
    Rng rng(Rng::derive(seed, trial));
    int m1 = static_cast<int>(rng.next_below(cb.N1));
    int m2 = static_cast<int>(rng.next_below(cb.N2));
    Word x, y;
    if (honest || strategy->user == 2) x = cb.words1[m1];
    if (honest || strategy->user == 1) y = cb.words2[m2];

    if (!honest) {
      const Attack& a = *strategy;
      int own_alpha = a.user == 1 ? ch.nx : ch.ny;
      Word attacked;
      switch (a.kind) {
        case Attack::Kind::DeterministicVector:
          if (static_cast<int>(a.vector.size()) != n)
            throw Error(Errc::LengthMismatch, "attack vector length mismatch");
          attacked = a.vector;
          break;
        case Attack::Kind::MemorylessKernel: {
          attacked.resize(n);
          if (a.letter_dist.input_shape.empty()) {
            for (int t = 0; t < n; ++t)
              attacked[t] = sample_from_row(a.letter_dist, 0, rng.next_double());
          } else {
            // applied letterwise to a uniformly drawn own codeword
            const auto& own = a.user == 1 ? cb.words1 : cb.words2;
            const Word& ref = own[rng.next_below(own.size())];
            for (int t = 0; t < n; ++t)
              attacked[t] = sample_from_row(a.letter_dist, ref[t], rng.next_double());
          }
          break;
        }
        case Attack::Kind::SpoofPair: {
          attacked.resize(n);
          if (a.user == 1) {
            const Word& wi = cb.words1[rng.next_below(cb.N1)];
            const Word& wj = cb.words1[rng.next_below(cb.N1)];
            for (int t = 0; t < n; ++t)
              attacked[t] = sample_from_row(a.spoof_a, wi[t] * ch.nx + wj[t], rng.next_double());
          } else {
            const Word& wj = cb.words1[rng.next_below(cb.N1)];
            const Word& wk = cb.words2[rng.next_below(cb.N2)];
            for (int t = 0; t < n; ++t)
              attacked[t] = sample_from_row(a.spoof_a, wj[t] * ch.ny + wk[t], rng.next_double());
          }
          break;
        }
      }
      if (a.user == 1)
        x = std::move(attacked);
      else
        y = std::move(attacked);
      if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw Error(Errc::LengthMismatch, "attack vector length mismatch");
    }

    Word z(n);
    for (int t = 0; t < n; ++t) {
      std::vector<double> row(ch.nz);
      for (int zz = 0; zz < ch.nz; ++zz) row[zz] = ch(x[t], y[t], zz);
      z[t] = sample_dist(row, rng.next_double());
    }
    DecoderOutput o = dec(z);
    Decision d{o.kind, o.m1, o.m2};
    if (honest) return err_hon(d, m1 + 1, m2 + 1);
    return strategy->user == 1 ? err_mal1(d, m2 + 1) : err_mal2(d, m1 + 1);
  };

  std::vector<uint64_t> errs(workers, 0);
  std::vector<std::thread> pool;
  uint64_t per = trials / workers, extra = trials % workers;
  uint64_t start = 0;
  for (int w = 0; w < workers; ++w) {
    uint64_t count = per + (static_cast<uint64_t>(w) < extra ? 1 : 0);
    pool.emplace_back([&, w, start, count] {
      uint64_t e = 0;
      for (uint64_t i = 0; i < count; ++i)
        if (run_trial(start + i)) ++e;
      errs[w] = e;
    });
    start += count;
  }
  for (auto& t : pool) t.join();
  uint64_t total_err = 0;
  for (uint64_t e : errs) total_err += e;

  double phat = static_cast<double>(total_err) / trials;
  double hw = 1.96 * std::sqrt(phat * (1 - phat) / trials);

  ErrorReport r;
  r.mode = "monte_carlo";
  r.trials = trials;
  r.seed = seed;
  if (honest) {
    r.scenario = "honest";
    r.p_hon = phat;
    r.half_width_hon = hw;
  } else if (strategy->user == 1) {
    r.scenario = "mal1";
    r.p_mal1 = phat;
    r.half_width_mal1 = hw;
  } else {
    r.scenario = "mal2";
    r.p_mal2 = phat;
    r.half_width_mal2 = hw;
  }
  r.finalize();
  return r;
}

}  // namespace byzmac
