#include <cmath>

#include "byzmac/attack.hpp"

namespace byzmac {

namespace {

void check_pair(const Mac& ch, const SpoofPair& pair) {
  if (pair.user == 1) {
    if (pair.sim_kernel.input_shape != std::vector<int>{ch.nx, ch.ny} ||
        pair.sim_kernel.output_size != ch.ny)
      throw Error(Errc::ShapeMismatch, "user-1 spoof pair: simulation kernel must be (X,Y)->Y");
    if (pair.own_kernel.input_shape != std::vector<int>{ch.nx, ch.nx} ||
        pair.own_kernel.output_size != ch.nx)
      throw Error(Errc::ShapeMismatch, "user-1 spoof pair: own kernel must be (X,X)->X");
  } else if (pair.user == 2) {
    if (pair.sim_kernel.input_shape != std::vector<int>{ch.nx, ch.ny} ||
        pair.sim_kernel.output_size != ch.nx)
      throw Error(Errc::ShapeMismatch, "user-2 spoof pair: simulation kernel must be (X,Y)->X");
    if (pair.own_kernel.input_shape != std::vector<int>{ch.ny, ch.ny} ||
        pair.own_kernel.output_size != ch.ny)
      throw Error(Errc::ShapeMismatch, "user-2 spoof pair: own kernel must be (Y,Y)->Y");
    return;
  } else {
    throw Error(Errc::ShapeMismatch, "spoof pair user must be 1 or 2");
  }
}

}  // namespace

SpoofDists spoof_output_dists(const Codebook& cb, const Mac& ch, const SpoofPair& pair, int i, int j,
                              int k, uint64_t budget) {
  cb.validate();
  check_pair(ch, pair);
  validate_kernel(pair.sim_kernel, 1e-9);
  validate_kernel(pair.own_kernel, 1e-9);
  const int n = cb.n;
  double zspace = pow_count(ch.nz, n);
  if (zspace * 3 > static_cast<double>(budget))
    throw Error(Errc::TooLarge, "spoof distribution table exceeds budget");

  // For the user-1 pair (the user-2 mirror swaps codebooks and channel roles):
  //   P_{i,j,k}(z) = prod_t sum_y simK(y | xj_t, yk_t) W(z_t | xi_t, y)
  //   Q_{i,j,k}(z) = prod_t sum_x ownK(x | xi_t, xj_t) W(z_t | x, yk_t)
  const bool u1 = (pair.user == 1);
  const Mac tr = ch.transposed();
  const Mac& view = u1 ? ch : tr;  // view(z | own, other)
  const std::vector<Word>& own = u1 ? cb.words1 : cb.words2;
  const std::vector<Word>& other = u1 ? cb.words2 : cb.words1;
  const int n_own = u1 ? cb.N1 : cb.N2;
  const int n_other = u1 ? cb.N2 : cb.N1;
  if (i < 1 || i > n_own || j < 1 || j > n_own || k < 1 || k > n_other)
    throw Error(Errc::ShapeMismatch, "message index out of range");
  const Word& wi = own[i - 1];
  const Word& wj = own[j - 1];
  const Word& wk = other[k - 1];

  // sim kernel rows are indexed by (x~, y~) for both mirror directions
  auto sim_row = [&](Symbol own_sym, Symbol other_sym) {
    return u1 ? own_sym * ch.ny + other_sym : other_sym * ch.ny + own_sym;
  };

  auto scenario_sim = [&](const Word& honest, const Word& spur) {
    // honest own word + other user simulating (spur, wk)
    std::vector<double> out;
    out.reserve(static_cast<size_t>(zspace));
    for (WordIter it(ch.nz, n); !it.done(); it.next()) {
      const Word& z = it.word();
      double p = 1;
      for (int t = 0; t < n && p > 0; ++t) {
        double letter = 0;
        for (int y = 0; y < (u1 ? ch.ny : ch.nx); ++y)
          letter += pair.sim_kernel(sim_row(spur[t], wk[t]), y) * view(honest[t], y, z[t]);
        p *= letter;
      }
      out.push_back(p);
    }
    return out;
  };

  SpoofDists d;
  d.p_ijk = scenario_sim(wi, wj);
  d.p_jik = scenario_sim(wj, wi);

  // honest other user sends wk; spoofed user attacks through its own kernel
  d.q_ijk.reserve(static_cast<size_t>(zspace));
  for (WordIter it(ch.nz, n); !it.done(); it.next()) {
    const Word& z = it.word();
    double p = 1;
    for (int t = 0; t < n && p > 0; ++t) {
      double letter = 0;
      int own_alpha = u1 ? ch.nx : ch.ny;
      for (int x = 0; x < own_alpha; ++x)
        letter += pair.own_kernel(wi[t] * own_alpha + wj[t], x) * view(x, wk[t], z[t]);
      p *= letter;
    }
    d.q_ijk.push_back(p);
  }
  return d;
}

ConverseBoundReport converse_bound_eval(const Codebook& cb, const DecodeFn& dec, const Mac& ch,
                                        const SpoofPair& pair, uint64_t budget) {
  cb.validate();
  check_pair(ch, pair);
  const bool u1 = (pair.user == 1);
  const int n_own = u1 ? cb.N1 : cb.N2;
  const int n_other = u1 ? cb.N2 : cb.N1;
  if (n_own < 2) throw Error(Errc::TrivialCode, "converse bound needs at least two messages");
  const int n = cb.n;
  double zspace = pow_count(ch.nz, n);
  double work = zspace * (3.0 * n_own * n_own * n_other + 1);
  if (work > static_cast<double>(budget))
    throw Error(Errc::TooLarge, "converse evaluation exceeds budget");

  // Cache decoder decisions per z.
  struct Decision {
    DecisionKind kind;
    int m1, m2;
  };
  std::vector<Decision> dz;
  dz.reserve(static_cast<size_t>(zspace));
  for (WordIter it(ch.nz, n); !it.done(); it.next()) {
    DecoderOutput o = dec(it.word());
    dz.push_back({o.kind, o.m1, o.m2});
  }

  // phi restricted to the spoofed user's message / the other user's message.
  auto err_own = [&](const Decision& d, int m) {  // phi_own(z) not in {m, blame-other}
    DecisionKind blame_other = u1 ? DecisionKind::Blame2 : DecisionKind::Blame1;
    if (d.kind == blame_other) return false;
    if (d.kind == DecisionKind::Pair) return (u1 ? d.m1 : d.m2) != m;
    return true;
  };
  auto err_other = [&](const Decision& d, int m) {  // phi_other(z) not in {m, blame-own}
    DecisionKind blame_own = u1 ? DecisionKind::Blame1 : DecisionKind::Blame2;
    if (d.kind == blame_own) return false;
    if (d.kind == DecisionKind::Pair) return (u1 ? d.m2 : d.m1) != m;
    return true;
  };

  ConverseBoundReport r;
  double sum_a = 0, sum_b = 0, sum_c = 0;
  for (int i = 1; i <= n_own; ++i)
    for (int j = 1; j <= n_own; ++j)
      for (int k = 1; k <= n_other; ++k) {
        SpoofDists d = spoof_output_dists(cb, ch, pair, i, j, k, budget);
        for (size_t zi = 0; zi < d.p_ijk.size(); ++zi) {
          if (err_own(dz[zi], i)) sum_a += d.p_ijk[zi];
          if (err_own(dz[zi], j)) sum_b += d.p_jik[zi];
          if (err_other(dz[zi], k)) sum_c += d.q_ijk[zi];
        }
      }
  double norm = static_cast<double>(n_own) * n_own * n_other;
  r.mal2_scenario_a = sum_a / norm;
  r.mal2_scenario_b = sum_b / norm;
  r.mal1_scenario = sum_c / norm;
  r.lhs = r.mal2_scenario_a + r.mal2_scenario_b + r.mal1_scenario;
  r.rhs = (n_own - 1) / (2.0 * n_own);
  r.pe_lower = r.rhs / 3.0;
  r.holds = r.lhs >= r.rhs - 1e-9;
  return r;
}

}  // namespace byzmac
